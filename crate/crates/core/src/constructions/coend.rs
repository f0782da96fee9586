//! Colimits, coends and tensor products of simplicial-set-valued right
//! G-functors, computed as degreewise quotients.

use std::sync::Arc;

use crate::algebra::action::{CatAction, GCategory};
use crate::algebra::category::FinCategory;
use crate::algebra::gfunctor::{GFunctorMorphism, SFunctor};
use crate::algebra::group::Subgroup;
use crate::constructions::bimodule::{Bimodule, ParamTensorand, Tensorand};
use crate::constructions::quotient::{Presentation, QuotientSpace, Spot};
use crate::error::{Error, Result};
use crate::simplicial::gsset::GSSet;
use crate::simplicial::sset::{LevelMap, SSet, SimplicialMap};

/// `colim F`: blocks are the values `F(x)`, identified along every `F(f)`.
/// Block `x` is the image of `ρ_x`.
pub fn colim(f: &SFunctor) -> Result<QuotientSpace> {
    let c = &f.domain.cat;
    let top = f.top();
    let block_counts = (0..=top).map(|n| (0..c.object_count()).map(|x| f.value(x).count(n)).collect()).collect();
    QuotientSpace::new(Presentation {
        top,
        block_counts,
        relate: Box::new(move |n, emit| {
            for m in 0..c.morphism_count() {
                if c.is_identity(m) {
                    continue;
                }
                for s in 0..f.value(c.src(m)).count(n) {
                    emit((c.src(m), s), (c.tgt(m), f.apply(m, n, s)));
                }
            }
        }),
        face: Box::new(move |n, i, (x, s)| (x, f.value(x).face(n, i, s))),
        degen: Box::new(move |n, i, (x, s)| (x, f.value(x).degen(n, i, s))),
        action: Some((
            f.domain.group().clone(),
            Box::new(move |g, n, (x, s)| (f.domain.action.obj(g, x), f.act(g, x, n, s))),
        )),
        label: Box::new(move |n, (x, s)| format!("{}:{}", c.object_label(x), f.value(x).label(n, s))),
    })
}

fn coend_presentation<'a, Z: Bimodule + ?Sized>(z: &'a Z, with_action: bool) -> Presentation<'a> {
    let base = z.base();
    let c = &base.cat;
    let top = z.top();
    let block_counts = (0..=top).map(|n| (0..c.object_count()).map(|x| z.count(x, x, n)).collect()).collect();
    let action: Option<(_, Box<dyn Fn(usize, usize, Spot) -> Spot + Sync>)> = if with_action {
        Some((
            base.group().clone(),
            Box::new(move |g, n, (x, s)| (base.action.obj(g, x), z.act(g, x, x, n, s))),
        ))
    } else {
        None
    };
    Presentation {
        top,
        block_counts,
        relate: Box::new(move |n, emit| {
            for f in 0..c.morphism_count() {
                if c.is_identity(f) {
                    continue;
                }
                let (x, y) = (c.src(f), c.tgt(f));
                for s in 0..z.count(x, y, n) {
                    emit((y, z.left(f, y, n, s)), (x, z.right(x, f, n, s)));
                }
            }
        }),
        face: Box::new(move |n, i, (x, s)| (x, z.face(x, x, n, i, s))),
        degen: Box::new(move |n, i, (x, s)| (x, z.degen(x, x, n, i, s))),
        action,
        label: Box::new(move |n, (x, s)| z.label(x, x, n, s)),
    }
}

/// `∫^C Z`: blocks `Z(x, x)`, with `Z(f, 1)(s) ~ Z(1, f)(s)` for every
/// `f: x → y` and `s ∈ Z(x, y)`. Block `x` is the image of `α_x`.
pub fn coend<Z: Bimodule + ?Sized>(z: &Z) -> Result<QuotientSpace> {
    QuotientSpace::new(coend_presentation(z, true))
}

/// The coend without its action, for fibers of parametrized families.
pub fn coend_plain<Z: Bimodule + ?Sized>(z: &Z) -> Result<QuotientSpace> {
    QuotientSpace::new(coend_presentation(z, false))
}

/// `F ⊗_C T`.
pub fn tensor(f: &Arc<SFunctor>, t: &Arc<SFunctor>) -> Result<(QuotientSpace, Tensorand)> {
    let z = Tensorand::new(f.clone(), t.clone())?;
    let q = coend(&z)?;
    Ok((q, z))
}

/// The map between two quotients induced by `component`, which sends a
/// block location of the source to one of the target.
pub fn induced_map<F>(source: &QuotientSpace, target: &QuotientSpace, component: F) -> Result<SimplicialMap>
where
    F: Fn(usize, Spot) -> Spot + Sync,
{
    let levels = source.descend(|n, spot| target.class(n, component(n, spot)))?;
    SimplicialMap::new(source.space.clone(), target.space.clone(), levels)
}

/// `colim ε` for a morphism of right G-functors.
pub fn colim_map(eps: &GFunctorMorphism, source: &QuotientSpace, target: &QuotientSpace) -> Result<SimplicialMap> {
    induced_map(source, target, |n, (x, s)| (x, eps.components[x].apply(n, s)))
}

/// `ε ⊗ T` for a morphism `ε: F1 → F2` and the tensorands of both sides.
pub fn tensor_map(
    eps: &GFunctorMorphism,
    source: (&QuotientSpace, &Tensorand),
    target: (&QuotientSpace, &Tensorand),
) -> Result<SimplicialMap> {
    let (zs, zt) = (source.1, target.1);
    if !Arc::ptr_eq(&zs.t, &zt.t) && zs.t != zt.t {
        return Err(Error::Signature("tensor map needs the same second factor".into()));
    }
    induced_map(source.0, target.0, |n, (x, s)| {
        let (a, b) = zs.split(x, n, s);
        (x, zt.join(x, n, eps.components[x].apply(n, a), b))
    })
}

/// The coset category `G/H` (discrete, left translation) and the index of
/// each coset's least representative.
pub fn coset_category(h: &Subgroup) -> (Arc<GCategory>, Vec<usize>) {
    let g = h.parent();
    let reps = h.left_coset_representatives();
    let coset_of = |a: usize| reps.iter().position(|&r| h.contains(g.mul(g.inv(r), a))).expect("coset");
    let on_objects: Vec<Vec<usize>> =
        g.elements().map(|x| reps.iter().map(|&r| coset_of(g.mul(x, r))).collect()).collect();
    let cat = FinCategory::discrete(reps.len());
    let action = CatAction::new(g.clone(), on_objects.clone(), on_objects).expect("coset action");
    (Arc::new(GCategory::new(cat, action).expect("coset action")), reps)
}

/// `Ind_H^G Z` for an `H`-simplicial set `Z` whose group is `H` presented on
/// its own (as by [`Subgroup::as_group`]): the colimit of the constant
/// functor on `G/H` with `η_{g,a_iH}(z) = h z` where `g a_i = a_j h`.
pub fn induce(h: &Subgroup, z: &GSSet) -> Result<(QuotientSpace, SFunctor)> {
    let (own, embed) = h.as_group();
    if z.group.order() != own.order() || z.group.rows() != own.rows() {
        return Err(Error::NotSubgroup("the space is not acted on by this subgroup".into()));
    }
    let g = h.parent().clone();
    let (domain, reps) = coset_category(h);
    let k = reps.len();
    let values = vec![z.space.clone(); k];
    let maps = vec![LevelMap::identity(&z.space); k];
    let eta = g
        .elements()
        .map(|x| {
            (0..k)
                .map(|i| {
                    let j = domain.action.obj(x, i);
                    let hh = g.mul(g.inv(reps[j]), g.mul(x, reps[i]));
                    let local = embed.iter().position(|&e| e == hh).expect("element of H");
                    z.action_levels(local).clone()
                })
                .collect()
        })
        .collect();
    let f = SFunctor::new(domain, values, maps, eta)?;
    let q = colim(&f)?;
    Ok((q, f))
}

/// `p ↦ ∫^C A(−, p) × B(−, p)` as a right G-functor on the parameter
/// category, for `A` on `C × P` and `B` on `C^op × P`.
#[derive(Clone, Debug)]
pub struct CoendFamily {
    pub functor: Arc<SFunctor>,
    pub fibers: Vec<QuotientSpace>,
    pub tensorand: ParamTensorand,
}

impl CoendFamily {
    pub fn new(base: Arc<GCategory>, param: Arc<GCategory>, a: Arc<SFunctor>, b: Arc<SFunctor>) -> Result<Self> {
        let tensorand = ParamTensorand::new(base.clone(), param.clone(), a, b, 0)?;
        let pc = &param.cat;
        let fibers = crate::par::map_range_auto(pc.object_count(), |p| coend_plain(&tensorand.at(p)))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let maps = (0..pc.morphism_count())
            .map(|m| {
                let (p, q) = (pc.src(m), pc.tgt(m));
                let t = tensorand.at(p);
                fibers[p].descend(|n, (x, s)| fibers[q].class(n, (x, t.along(x, x, m, q, n, s))))
            })
            .collect::<Result<Vec<_>>>()?;
        let eta = param
            .group()
            .elements()
            .map(|g| {
                (0..pc.object_count())
                    .map(|p| {
                        let t = tensorand.at(p);
                        let gp = param.action.obj(g, p);
                        fibers[p].descend(|n, (x, s)| fibers[gp].class(n, (base.action.obj(g, x), t.act(g, x, x, n, s))))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let values = fibers.iter().map(|f| f.space.clone()).collect();
        let functor = Arc::new(SFunctor::from_parts(param, values, maps, eta)?);
        Ok(Self { functor, fibers, tensorand })
    }
}

/// Convenience: the point as an `SSet` of the given truncation.
pub fn point(top: usize) -> Arc<SSet> {
    Arc::new(SSet::point(top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::FinGroup;
    use crate::constructions::comma::{under_family, NerveFamily};
    use crate::algebra::functor::Functor;
    use crate::simplicial::ops::is_isomorphism;

    fn swapped_pair() -> Arc<GCategory> {
        let group = Arc::new(FinGroup::cyclic(2));
        let on = vec![vec![0, 1], vec![1, 0]];
        Arc::new(GCategory::new(FinCategory::discrete(2), CatAction::new(group, on.clone(), on).unwrap()).unwrap())
    }

    #[test]
    fn discrete_colimit_is_disjoint_union() {
        let f = SFunctor::point(swapped_pair(), 2);
        let q = colim(&f).unwrap();
        assert_eq!(q.space.counts(), &[2, 2, 2]);
        let g = q.g().unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(g.act(1, 0, 0), 1);
    }

    #[test]
    fn constant_point_over_connected_is_point() {
        let c = Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(2), Arc::new(FinGroup::trivial())));
        let q = colim(&SFunctor::point(c, 3)).unwrap();
        assert_eq!(q.space.counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn two_points_over_one_point_glue() {
        // F(0) = two points, F(1) = point, along 0 → 1
        let c = Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(1), Arc::new(FinGroup::trivial())));
        let two = Arc::new(SSet::discrete(1, 2));
        let one = point(1);
        let arrow = (0..3).find(|&m| !c.cat.is_identity(m)).unwrap();
        let maps = (0..3)
            .map(|m| if m == arrow { LevelMap(vec![vec![0, 0]; 2]) } else if c.cat.src(m) == 0 { LevelMap::identity(&two) } else { LevelMap::identity(&one) })
            .collect();
        let eta = vec![vec![LevelMap::identity(&two), LevelMap::identity(&one)]];
        let f = SFunctor::new(c, vec![two, one], maps, eta).unwrap();
        assert_eq!(colim(&f).unwrap().space.count(0), 1);
    }

    #[test]
    fn induced_from_trivial_subgroup_swaps_two_points() {
        let g = Arc::new(FinGroup::cyclic(2));
        let h = Subgroup::trivial(g);
        let (own, _) = h.as_group();
        let z = GSSet::trivial(point(2), Arc::new(own));
        let (q, _) = induce(&h, &z).unwrap();
        let x = q.g().unwrap();
        assert_eq!(x.space.count(0), 2);
        assert_eq!(x.act(1, 0, 0), 1);
    }

    #[test]
    fn induced_from_index_two_in_z4() {
        let g = Arc::new(FinGroup::cyclic(4));
        let h = Subgroup::generated_by(g.clone(), &[2]);
        let (own, _) = h.as_group();
        let z = GSSet::trivial(point(1), Arc::new(own));
        let (q, _) = induce(&h, &z).unwrap();
        let x = q.g().unwrap();
        assert_eq!(x.space.count(0), 2);
        assert_eq!(x.act(1, 0, 0), 1);
        assert_eq!(x.act(2, 0, 0), 0);
        assert_eq!(x.act(2, 0, 1), 1);
    }

    #[test]
    fn tensor_with_point_is_colimit() {
        let c = Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(1), Arc::new(FinGroup::trivial())));
        let nf = NerveFamily::new(&under_family(&Functor::identity(c.clone())), 2).unwrap();
        let star = Arc::new(SFunctor::point(c.clone(), 2));
        // * ⊗ N(−↓[1]) is the nerve of [1]
        let (q, _) = tensor(&star, &nf.functor).unwrap();
        assert_eq!(q.space.counts(), &[2, 3, 4]);
        let direct = crate::constructions::nerve::Nerve::new(&c.cat, 2);
        let _ = is_isomorphism;
        assert_eq!(direct.space().counts(), q.space.counts());
    }
}
