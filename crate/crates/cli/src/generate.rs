//! Seeded random instances: a G-category, a right G-functor into small
//! simplicial sets and optionally an equivariant functor `S: D → C` with a
//! second right G-functor on `D`.
//!
//! Categories are G-invariant preorders on a union of orbits `G/H`,
//! sometimes multiplied by the one-object category of `Z/2`. Functor values
//! are coproducts of summands `(⨿_{c ∈ Gc₀} hom(c, X)) × K` and `K`, with
//! `K` a point or `Δ¹`; `η` moves `(c, u, k)` to `(gc, gu, k)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ghocolim_core::algebra::action::{orbits, CatAction, GCategory};
use ghocolim_core::algebra::category::FinCategory;
use ghocolim_core::algebra::functor::Functor;
use ghocolim_core::algebra::gfunctor::SFunctor;
use ghocolim_core::algebra::group::{subgroups, FinGroup, Subgroup};
use ghocolim_core::simplicial::sset::{LevelMap, SSet};

use crate::document::Document;
use crate::emit;
use crate::error::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SKind {
    Identity,
    Inclusion,
    Projection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SChoice {
    /// Decided by the seed, possibly absent.
    Random,
    None,
    Any,
    Kind(SKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_group: usize,
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub truncation: usize,
    pub s: SChoice,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_group: 6, max_objects: 5, max_morphisms: 20, truncation: 4, s: SChoice::Random }
    }
}

/// The largest truncation the generator accepts.
pub const MAX_TRUNCATION: usize = 6;

/// Groups the generator draws from: trivial, Z2, Z3, Z4, Z2×Z2, S3, Z6.
fn group_menu(max_order: usize) -> Vec<(&'static str, FinGroup)> {
    let z2 = FinGroup::cyclic(2);
    [
        ("trivial", FinGroup::trivial()),
        ("Z2", z2.clone()),
        ("Z3", FinGroup::cyclic(3)),
        ("Z4", FinGroup::cyclic(4)),
        ("Z2xZ2", z2.product(&z2)),
        ("S3", FinGroup::symmetric(3)),
        ("Z6", FinGroup::cyclic(6)),
    ]
    .into_iter()
    .filter(|(_, g)| g.order() <= max_order)
    .collect()
}

pub fn generate(seed: u64, caps: &Caps) -> Result<Document, InputError> {
    if caps.max_group == 0 || caps.max_objects == 0 || caps.max_morphisms == 0 {
        return Err(InputError::new("caps must allow at least one group element, object and morphism"));
    }
    if caps.truncation == 0 || caps.truncation > MAX_TRUNCATION {
        return Err(InputError::new(format!("truncation must be between 1 and {MAX_TRUNCATION}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let menu = group_menu(caps.max_group);
    let (gname, group) = menu.choose(&mut rng).expect("trivial group always fits").clone();
    let group = Arc::new(group);
    let c = Arc::new(random_category(&mut rng, &group, caps)?);
    let top = caps.truncation;
    let f = random_functor(&mut rng, &c, top)?;

    let mut blocks = vec![
        emit::group_block("G", &group).attr("from", format!("generate:{seed}:{gname}")),
        emit::category_block("C", &c.cat),
        emit::gaction_block("CG", "C", "G", &c.action),
    ];
    blocks.extend(emit::functor_blocks("F", "CG", false, &f));

    let kind = match caps.s {
        SChoice::None => None,
        SChoice::Random => rng.gen_bool(0.5).then(|| random_kind(&mut rng)),
        SChoice::Any => Some(random_kind(&mut rng)),
        SChoice::Kind(k) => Some(k),
    };
    if let Some(kind) = kind {
        let (d, s) = random_s(&mut rng, &c, kind, caps)?;
        let dname = if Arc::ptr_eq(&d, &c) {
            "CG"
        } else {
            blocks.push(emit::category_block("D", &d.cat));
            blocks.push(emit::gaction_block("DG", "D", "G", &d.action));
            "DG"
        };
        blocks.push(emit::functor_map_block("S", dname, "CG", &s.map).attr("from", format!("{kind:?}").to_lowercase()));
        let fd = random_functor(&mut rng, &d, top)?;
        blocks.extend(emit::functor_blocks("FD", dname, false, &fd));
    }
    Ok(Document { blocks })
}

fn random_kind(rng: &mut ChaCha8Rng) -> SKind {
    *[SKind::Identity, SKind::Inclusion, SKind::Projection].choose(rng).expect("nonempty")
}

/// `g(aH) = (ga)H` on the left cosets of `h`.
fn coset_action(group: &FinGroup, h: &Subgroup) -> Vec<Vec<usize>> {
    let reps = h.left_coset_representatives();
    let coset_of = |x: usize| reps.iter().position(|&r| h.contains(group.mul(group.inv(r), x))).expect("some coset");
    group.elements().map(|g| reps.iter().map(|&r| coset_of(group.mul(g, r))).collect()).collect()
}

fn random_category(rng: &mut ChaCha8Rng, group: &Arc<FinGroup>, caps: &Caps) -> Result<GCategory, InputError> {
    let hs = subgroups(group, group.order())?;
    let budget = caps.max_objects.min(caps.max_morphisms);
    let target = rng.gen_range(1..=budget);
    // objects as a union of orbits
    let mut on_objects: Vec<Vec<usize>> = vec![Vec::new(); group.order()];
    let mut n = 0;
    while n < target {
        let fits: Vec<&Subgroup> = hs.iter().filter(|h| group.order() / h.order() <= target - n).collect();
        let h = fits.choose(rng).expect("the whole group always fits");
        let table = coset_action(group, h);
        for g in group.elements() {
            on_objects[g].extend(table[g].iter().map(|&i| i + n));
        }
        n += table[0].len();
    }

    let product_with_bz2 = rng.gen_bool(0.25) && caps.max_morphisms / 2 >= n;
    let mor_budget = if product_with_bz2 { caps.max_morphisms / 2 } else { caps.max_morphisms };

    let mut related: BTreeSet<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
    for _ in 0..rng.gen_range(0..=6) {
        if n < 2 {
            break;
        }
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        if x == y {
            continue;
        }
        let mut candidate = related.clone();
        candidate.extend(group.elements().map(|g| (on_objects[g][x], on_objects[g][y])));
        transitive_closure(&mut candidate);
        if candidate.len() <= mor_budget {
            related = candidate;
        }
    }
    let cat = FinCategory::thin(n, |x, y| related.contains(&(x, y)));
    let pairs = cat.morphisms();
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("invariant relation");
    let on_morphisms = group
        .elements()
        .map(|g| pairs.iter().map(|&(x, y)| index((on_objects[g][x], on_objects[g][y]))).collect())
        .collect();
    let c = GCategory::new(cat, CatAction::new(group.clone(), on_objects, on_morphisms)?)?;
    if !product_with_bz2 {
        return Ok(c);
    }
    let bz2 = GCategory::with_trivial_action(FinCategory::one_object(&FinGroup::cyclic(2)), group.clone());
    Ok(GCategory::product(&c, &bz2)?)
}

fn transitive_closure(r: &mut BTreeSet<(usize, usize)>) {
    loop {
        let extra: Vec<(usize, usize)> = r
            .iter()
            .flat_map(|&(a, b)| r.range((b, 0)..(b + 1, 0)).map(move |&(_, c)| (a, c)))
            .filter(|p| !r.contains(p))
            .collect();
        if extra.is_empty() {
            return;
        }
        r.extend(extra);
    }
}

/// One coproduct summand: elements of each value, how morphisms and group
/// elements move them, and the simplicial factor `K`.
struct Summand {
    elements: Vec<Vec<(usize, usize)>>,
    k: SSet,
    /// `Some(orbit)` for the representable summand, `None` for the constant one.
    orbit: Option<Vec<usize>>,
}

impl Summand {
    fn position(&self, x: usize, e: (usize, usize)) -> usize {
        self.elements[x].iter().position(|&o| o == e).expect("element of the value")
    }

    fn along(&self, c: &GCategory, m: usize, (a, u): (usize, usize)) -> (usize, usize) {
        match self.orbit {
            Some(_) => (a, c.cat.compose(m, u)),
            None => (a, u),
        }
    }

    fn act(&self, c: &GCategory, g: usize, (a, u): (usize, usize)) -> (usize, usize) {
        match self.orbit {
            Some(_) => (c.action.obj(g, a), c.action.mor(g, u)),
            None => (a, u),
        }
    }
}

fn random_functor(rng: &mut ChaCha8Rng, c: &Arc<GCategory>, top: usize) -> Result<SFunctor, InputError> {
    let cat = &c.cat;
    let orbit_list = orbits(&c.action);
    let mut summands = Vec::new();
    let count = rng.gen_range(1..=2);
    let factor = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { SSet::point(top) } else { SSet::standard(1, top) };
    for _ in 0..count {
        let orbit = orbit_list.choose(rng).expect("nonempty category").clone();
        let elements = (0..cat.object_count())
            .map(|x| orbit.iter().flat_map(|&a| cat.hom(a, x).map(move |u| (a, u))).collect())
            .collect();
        summands.push(Summand { elements, k: factor(rng), orbit: Some(orbit) });
    }
    if rng.gen_bool(0.3) {
        summands.push(Summand { elements: vec![vec![(0, 0)]; cat.object_count()], k: factor(rng), orbit: None });
    }

    // F(X)_n = ⨿_s E_s(X) × K_s,n; offsets[x][n][s] is where summand s starts
    let ob = cat.object_count();
    let offsets: Vec<Vec<Vec<usize>>> = (0..ob)
        .map(|x| {
            (0..=top)
                .map(|n| {
                    let mut acc = 0;
                    let mut out = Vec::with_capacity(summands.len() + 1);
                    for s in &summands {
                        out.push(acc);
                        acc += s.elements[x].len() * s.k.count(n);
                    }
                    out.push(acc);
                    out
                })
                .collect()
        })
        .collect();
    let locate = |x: usize, n: usize, i: usize| -> (usize, usize, usize) {
        let s = (0..summands.len()).find(|&t| i < offsets[x][n][t + 1]).expect("simplex in range");
        let local = i - offsets[x][n][s];
        let kn = summands[s].k.count(n);
        (s, local / kn, local % kn)
    };
    let encode = |x: usize, n: usize, s: usize, e: usize, k: usize| offsets[x][n][s] + e * summands[s].k.count(n) + k;

    let values: Vec<Arc<SSet>> = (0..ob)
        .map(|x| {
            let counts = (0..=top).map(|n| offsets[x][n][summands.len()]).collect();
            Arc::new(SSet::build(
                top,
                counts,
                |n, i, sx| {
                    let (s, e, k) = locate(x, n, sx);
                    encode(x, n - 1, s, e, summands[s].k.face(n, i, k))
                },
                |n, i, sx| {
                    let (s, e, k) = locate(x, n, sx);
                    encode(x, n + 1, s, e, summands[s].k.degen(n, i, k))
                },
            ))
        })
        .collect();
    let level_map = |x: usize, y: usize, moved: &dyn Fn(&Summand, (usize, usize)) -> (usize, usize)| {
        LevelMap(
            (0..=top)
                .map(|n| {
                    (0..offsets[x][n][summands.len()])
                        .map(|sx| {
                            let (s, e, k) = locate(x, n, sx);
                            let sm = &summands[s];
                            let image = moved(sm, sm.elements[x][e]);
                            encode(y, n, s, sm.position(y, image), k)
                        })
                        .collect()
                })
                .collect(),
        )
    };
    let maps = (0..cat.morphism_count())
        .map(|m| level_map(cat.src(m), cat.tgt(m), &|sm, e| sm.along(c, m, e)))
        .collect();
    let eta = c
        .group()
        .elements()
        .map(|g| (0..ob).map(|x| level_map(x, c.action.obj(g, x), &|sm, e| sm.act(c, g, e))).collect())
        .collect();
    Ok(SFunctor::new(c.clone(), values, maps, eta)?)
}

fn random_s(rng: &mut ChaCha8Rng, c: &Arc<GCategory>, kind: SKind, caps: &Caps) -> Result<(Arc<GCategory>, Functor), InputError> {
    let cat = &c.cat;
    let fits_projection = 3 * cat.morphism_count() <= caps.max_morphisms;
    let kind = match kind {
        SKind::Projection if !fits_projection => SKind::Inclusion,
        k => k,
    };
    match kind {
        SKind::Identity => Ok((c.clone(), Functor::identity(c.clone()))),
        SKind::Inclusion => {
            let orbit_list = orbits(&c.action);
            let mut chosen: Vec<usize> = orbit_list.iter().filter(|_| rng.gen_bool(0.5)).flatten().copied().collect();
            if chosen.is_empty() {
                chosen = orbit_list[0].clone();
            }
            chosen.sort_unstable();
            let (d, inc) = c.invariant_full_subcategory(&chosen)?;
            let d = Arc::new(d);
            Ok((d.clone(), Functor::new(d, c.clone(), inc)?))
        }
        SKind::Projection => {
            let interval = GCategory::with_trivial_action(FinCategory::ordinal(1), c.group().clone());
            let s = Functor::first_projection(c.clone(), &interval)?;
            Ok((s.source.clone(), s))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::serialize;
    use crate::resolve::resolve;

    #[test]
    fn small_caps_validate() {
        let caps = Caps { max_group: 2, max_objects: 3, ..Caps::default() };
        let doc = generate(1, &caps).unwrap();
        let m = resolve(&doc, None).unwrap();
        assert!(m.validate().is_empty(), "{:?}", m.validate());
        assert!(m.groups["G"].order() <= 2);
        assert!(m.categories["C"].object_count() <= 3);
    }

    #[test]
    fn same_seed_same_bytes() {
        let caps = Caps::default();
        assert_eq!(serialize(&generate(7, &caps).unwrap()), serialize(&generate(7, &caps).unwrap()));
    }

    #[test]
    fn coset_action_is_transitive_and_respects_the_product() {
        let g = Arc::new(FinGroup::symmetric(3));
        let h = Subgroup::generated_by(g.clone(), &[1]);
        let t = coset_action(&g, &h);
        assert_eq!(t[0], vec![0, 1, 2]);
        for a in g.elements() {
            for b in g.elements() {
                let ab: Vec<usize> = t[b].iter().map(|&i| t[a][i]).collect();
                assert_eq!(ab, t[g.mul(a, b)]);
            }
        }
    }

    #[test]
    fn infeasible_caps_are_rejected() {
        assert!(generate(1, &Caps { max_objects: 0, ..Caps::default() }).is_err());
        assert!(generate(1, &Caps { truncation: 0, ..Caps::default() }).is_err());
    }
}
