//! Comma categories `c↓S`, `S↓c` and `d↓F↓d'`, and the right G-functors
//! they assemble into.
//!
//! `c↓S` has objects `(D, u: c → SD)` and is contravariant in `c`; `S↓c`
//! has objects `(D, v: SD → c)` and is covariant in `c`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::action::GCategory;
use crate::algebra::category::{CatMap, FinCategory};
use crate::algebra::functor::Functor;
use crate::algebra::gfunctor::{CatGFunctor, SFunctor};
use crate::constructions::nerve::Nerve;
use crate::error::Result;
use crate::simplicial::sset::LevelMap;

/// Object `(u, C, v)` of a comma category; `u` or `v` is absent for the
/// one-sided variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CommaObject {
    pub u: Option<usize>,
    pub c: usize,
    pub v: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommaCategory {
    pub cat: FinCategory,
    pub objects: Vec<CommaObject>,
    /// Underlying morphism `p` of each comma morphism.
    pub morphisms: Vec<usize>,
    object_index: HashMap<CommaObject, usize>,
    morphism_index: HashMap<(usize, usize, usize), usize>,
}

impl CommaCategory {
    /// `objects` over the source category `d`; `f` is the functor `d → e`
    /// and morphisms are `p` with `F(p)∘u = u'` and `v'∘F(p) = v`.
    fn build(d: &FinCategory, e: &FinCategory, f: &CatMap, objects: Vec<CommaObject>) -> Self {
        let object_index: HashMap<CommaObject, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut by_c: Vec<Vec<usize>> = vec![Vec::new(); d.object_count()];
        for (i, o) in objects.iter().enumerate() {
            by_c[o.c].push(i);
        }
        let mut arrows = Vec::new();
        let mut morphisms = Vec::new();
        let mut morphism_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            for &p in d.out_of(o.c) {
                let fp = f.mor(p);
                for &j in &by_c[d.tgt(p)] {
                    let t = objects[j];
                    let u_ok = match (o.u, t.u) {
                        (Some(u), Some(u2)) => e.compose(fp, u) == u2,
                        _ => true,
                    };
                    let v_ok = match (o.v, t.v) {
                        (Some(v), Some(v2)) => e.compose(v2, fp) == v,
                        _ => true,
                    };
                    if u_ok && v_ok {
                        morphism_index.insert((i, p, j), arrows.len());
                        arrows.push((i, j));
                        morphisms.push(p);
                    }
                }
            }
        }
        let identity: Vec<usize> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| morphism_index[&(i, d.identity(o.c), i)])
            .collect();
        let mut comp = Vec::new();
        for (m1, &(a, b)) in arrows.iter().enumerate() {
            for (m2, &(b2, c)) in arrows.iter().enumerate() {
                if b2 == b {
                    let p = d.compose(morphisms[m2], morphisms[m1]);
                    comp.push((m2, m1, morphism_index[&(a, p, c)]));
                }
            }
        }
        let label = |o: &CommaObject| {
            let mut parts = Vec::new();
            if let Some(u) = o.u {
                parts.push(e.morphism_label(u).to_string());
            }
            parts.push(d.object_label(o.c).to_string());
            if let Some(v) = o.v {
                parts.push(e.morphism_label(v).to_string());
            }
            format!("({})", parts.join(", "))
        };
        let object_labels = objects.iter().map(label).collect();
        let morphism_labels = morphisms.iter().map(|&p| d.morphism_label(p).to_string()).collect();
        let cat = FinCategory::from_parts(objects.len(), arrows, identity, comp)
            .expect("comma category tables")
            .with_labels(object_labels, morphism_labels);
        Self { cat, objects, morphisms, object_index, morphism_index }
    }

    pub fn object_id(&self, o: CommaObject) -> Option<usize> {
        self.object_index.get(&o).copied()
    }

    pub fn morphism_id(&self, source: usize, p: usize, target: usize) -> Option<usize> {
        self.morphism_index.get(&(source, p, target)).copied()
    }

    /// Nerve chain key (see [`Nerve`]) through the given objects along `ps`.
    pub fn chain_key(&self, objects: &[usize], ps: &[usize]) -> Vec<usize> {
        if ps.is_empty() {
            return vec![objects[0]];
        }
        ps.iter()
            .enumerate()
            .map(|(i, &p)| self.morphism_id(objects[i], p, objects[i + 1]).expect("comma chain"))
            .collect()
    }

    /// Functor between comma categories given on objects; morphisms keep
    /// their underlying `p` after `on_p`.
    fn functor_to(&self, target: &CommaCategory, on_obj: impl Fn(CommaObject) -> CommaObject, on_p: impl Fn(usize) -> usize) -> CatMap {
        let on_objects: Vec<usize> =
            self.objects.iter().map(|&o| target.object_id(on_obj(o)).expect("image object")).collect();
        let on_morphisms = (0..self.morphisms.len())
            .map(|m| {
                let (s, t) = (self.cat.src(m), self.cat.tgt(m));
                target
                    .morphism_id(on_objects[s], on_p(self.morphisms[m]), on_objects[t])
                    .expect("image morphism")
            })
            .collect();
        CatMap { on_objects, on_morphisms }
    }
}

/// `c↓S`: objects `(D, u: c → SD)`.
pub fn comma_under(s: &Functor, c: usize) -> CommaCategory {
    let (d, e) = (&s.source.cat, &s.target.cat);
    let objects = (0..d.object_count())
        .flat_map(|x| e.hom(c, s.obj(x)).map(move |u| CommaObject { u: Some(u), c: x, v: None }))
        .collect();
    CommaCategory::build(d, e, &s.map, objects)
}

/// `S↓c`: objects `(D, v: SD → c)`.
pub fn comma_over(s: &Functor, c: usize) -> CommaCategory {
    let (d, e) = (&s.source.cat, &s.target.cat);
    let objects = (0..d.object_count())
        .flat_map(|x| e.hom(s.obj(x), c).map(move |v| CommaObject { u: None, c: x, v: Some(v) }))
        .collect();
    CommaCategory::build(d, e, &s.map, objects)
}

/// `d↓F↓d'`: objects `(u: d → FC, C, v: FC → d')`.
pub fn comma_two_sided(f: &Functor, d: usize, d2: usize) -> CommaCategory {
    let (c, e) = (&f.source.cat, &f.target.cat);
    let objects = (0..c.object_count())
        .flat_map(|x| {
            e.hom(d, f.obj(x))
                .flat_map(move |u| e.hom(f.obj(x), d2).map(move |v| CommaObject { u: Some(u), c: x, v: Some(v) }))
        })
        .collect();
    CommaCategory::build(c, e, &f.map, objects)
}

/// A category-valued right G-functor whose values are comma categories.
#[derive(Clone, Debug)]
pub struct CommaFamily {
    pub functor: CatGFunctor,
    pub values: Vec<Arc<CommaCategory>>,
}

fn assemble(
    domain: Arc<GCategory>,
    values: Vec<CommaCategory>,
    map_of: impl Fn(usize, &CommaCategory, &CommaCategory) -> CatMap,
    eta_of: impl Fn(usize, usize, &CommaCategory, &CommaCategory) -> CatMap,
) -> CommaFamily {
    let c = &domain.cat;
    let maps = (0..c.morphism_count()).map(|m| map_of(m, &values[c.src(m)], &values[c.tgt(m)])).collect();
    let eta = domain
        .group()
        .elements()
        .map(|g| {
            (0..c.object_count())
                .map(|x| eta_of(g, x, &values[x], &values[domain.action.obj(g, x)]))
                .collect()
        })
        .collect();
    let cats = values.iter().map(|v| Arc::new(v.cat.clone())).collect();
    let functor = CatGFunctor { domain, values: cats, maps, eta };
    CommaFamily { functor, values: values.into_iter().map(Arc::new).collect() }
}

/// `c ↦ c↓S` on `C^op`; a morphism `h: c' → c` of `C` acts by `u ↦ u∘h`,
/// and `g` by `(D, u) ↦ (gD, gu)`.
pub fn under_family(s: &Functor) -> CommaFamily {
    let cat = &s.target.cat;
    let act = &s.target.action;
    let dact = &s.source.action;
    let domain = Arc::new(s.target.opposite());
    let values = (0..cat.object_count()).map(|c| comma_under(s, c)).collect();
    assemble(
        domain,
        values,
        |h, a, b| a.functor_to(b, |o| CommaObject { u: Some(cat.compose(o.u.unwrap(), h)), ..o }, |p| p),
        |g, _, a, b| {
            a.functor_to(b, |o| CommaObject { u: Some(act.mor(g, o.u.unwrap())), c: dact.obj(g, o.c), v: None }, |p| {
                dact.mor(g, p)
            })
        },
    )
}

/// `c ↦ S↓c` on `C`; `h: c → c'` acts by `v ↦ h∘v`.
pub fn over_family(s: &Functor) -> CommaFamily {
    let cat = &s.target.cat;
    let act = &s.target.action;
    let dact = &s.source.action;
    let domain = s.target.clone();
    let values = (0..cat.object_count()).map(|c| comma_over(s, c)).collect();
    assemble(
        domain,
        values,
        |h, a, b| a.functor_to(b, |o| CommaObject { v: Some(cat.compose(h, o.v.unwrap())), ..o }, |p| p),
        |g, _, a, b| {
            a.functor_to(b, |o| CommaObject { u: None, c: dact.obj(g, o.c), v: Some(act.mor(g, o.v.unwrap())) }, |p| {
                dact.mor(g, p)
            })
        },
    )
}

/// `(d, d') ↦ d↓F↓d'` on `D^op × D`; `(φ, ψ)` acts by
/// `(u, C, v) ↦ (u∘φ, C, ψ∘v)`.
pub fn two_sided_family(f: &Functor) -> Result<CommaFamily> {
    let e = &f.target.cat;
    let act = &f.target.action;
    let cact = &f.source.action;
    let domain = Arc::new(GCategory::product(&f.target.opposite(), &f.target)?);
    let (ob, mb) = (e.object_count(), e.morphism_count());
    let values = (0..ob * ob).map(|p| comma_two_sided(f, p / ob, p % ob)).collect();
    Ok(assemble(
        domain,
        values,
        |m, a, b| {
            let (phi, psi) = (m / mb, m % mb);
            a.functor_to(
                b,
                |o| CommaObject {
                    u: Some(e.compose(o.u.unwrap(), phi)),
                    c: o.c,
                    v: Some(e.compose(psi, o.v.unwrap())),
                },
                |p| p,
            )
        },
        |g, _, a, b| {
            a.functor_to(
                b,
                |o| CommaObject {
                    u: Some(act.mor(g, o.u.unwrap())),
                    c: cact.obj(g, o.c),
                    v: Some(act.mor(g, o.v.unwrap())),
                },
                |p| cact.mor(g, p),
            )
        },
    ))
}

/// A comma family composed with the nerve, keeping the nerves for chain
/// lookups.
#[derive(Clone, Debug)]
pub struct NerveFamily {
    pub functor: Arc<SFunctor>,
    pub commas: Vec<Arc<CommaCategory>>,
    pub nerves: Vec<Arc<Nerve>>,
}

impl NerveFamily {
    pub fn new(family: &CommaFamily, top: usize) -> Result<Self> {
        let f = &family.functor;
        let c = &f.domain.cat;
        let nerves: Vec<Arc<Nerve>> =
            crate::par::map_range_auto(family.values.len(), |x| Arc::new(Nerve::new(&family.values[x].cat, top)));
        let maps = (0..c.morphism_count())
            .map(|m| nerves[c.src(m)].map_along(&f.maps[m], &nerves[c.tgt(m)]))
            .collect::<Result<Vec<LevelMap>>>()?;
        let eta = f
            .domain
            .group()
            .elements()
            .map(|g| {
                (0..c.object_count())
                    .map(|x| nerves[x].map_along(&f.eta[g][x], &nerves[f.domain.action.obj(g, x)]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let values = nerves.iter().map(|n| n.space().clone()).collect();
        let functor = SFunctor::from_parts(f.domain.clone(), values, maps, eta)?;
        Ok(Self { functor: Arc::new(functor), commas: family.values.clone(), nerves })
    }

    /// Simplex id in the nerve of value `x` for the chain through `objects`
    /// along `ps`.
    pub fn simplex(&self, x: usize, objects: &[usize], ps: &[usize]) -> usize {
        let key = self.commas[x].chain_key(objects, ps);
        self.nerves[x].id_of(ps.len(), &key)
    }

    /// Objects and underlying morphisms of simplex `s` of degree `n` in the
    /// nerve of value `x`.
    pub fn decode(&self, x: usize, n: usize, s: usize) -> (Vec<CommaObject>, Vec<usize>) {
        let nerve = &self.nerves[x];
        let comma = &self.commas[x];
        let objects = (0..=n).map(|i| comma.objects[nerve.object_at(n, s, i)]).collect();
        let ps = if n == 0 { Vec::new() } else { nerve.chain(n, s).iter().map(|&m| comma.morphisms[m]).collect() };
        (objects, ps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::CatAction;
    use crate::algebra::group::FinGroup;

    fn ordinal_one() -> Arc<GCategory> {
        Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(1), Arc::new(FinGroup::trivial())))
    }

    #[test]
    fn under_identity_has_initial_identity_object() {
        let c = ordinal_one();
        let id = Functor::identity(c);
        let k = comma_under(&id, 0);
        assert_eq!(k.cat.object_count(), 2);
        assert_eq!(k.cat.morphism_count() - k.cat.object_count(), 1);
        // (0, 1_0) maps uniquely to every object
        let one = id.source.cat.identity(0);
        let init = k.object_id(CommaObject { u: Some(one), c: 0, v: None }).unwrap();
        for y in 0..k.cat.object_count() {
            assert_eq!(k.cat.hom(init, y).count(), 1);
        }
    }

    #[test]
    fn two_sided_on_one_object_identity() {
        let c = Arc::new(GCategory::terminal(Arc::new(FinGroup::trivial())));
        let k = comma_two_sided(&Functor::identity(c), 0, 0);
        assert_eq!(k.cat.object_count(), 1);
        assert_eq!(k.cat.morphism_count(), 1);
    }

    #[test]
    fn families_are_right_g_functors() {
        let group = Arc::new(FinGroup::cyclic(2));
        let thin = FinCategory::thin(3, |x, y| x == y || x == 2);
        let objs = vec![vec![0, 1, 2], vec![1, 0, 2]];
        let mors: Vec<Vec<usize>> = (0..2)
            .map(|g| {
                (0..thin.morphism_count())
                    .map(|f| {
                        let (s, t) = (objs[g][thin.src(f)], objs[g][thin.tgt(f)]);
                        thin.hom(s, t).next().unwrap()
                    })
                    .collect()
            })
            .collect();
        let c = Arc::new(GCategory::new(thin, CatAction::new(group, objs, mors).unwrap()).unwrap());
        let id = Functor::identity(c);
        assert!(under_family(&id).functor.validate().is_valid());
        assert!(over_family(&id).functor.validate().is_valid());
        assert!(two_sided_family(&id).unwrap().functor.validate().is_valid());
        let nf = NerveFamily::new(&under_family(&id), 2).unwrap();
        assert!(nf.functor.validate().is_valid());
    }
}
