//! Hom-set functors, as right G-functors valued in discrete simplicial sets.

use std::sync::Arc;

use crate::algebra::action::GCategory;
use crate::algebra::functor::Functor;
use crate::algebra::gfunctor::SFunctor;
use crate::error::{Error, Result};
use crate::simplicial::sset::{LevelMap, SSet};

/// Position of each morphism inside its hom-set, in increasing id order.
fn hom_positions(c: &GCategory) -> Vec<usize> {
    let cat = &c.cat;
    let mut pos = vec![0; cat.morphism_count()];
    for x in 0..cat.object_count() {
        for y in 0..cat.object_count() {
            for (i, f) in cat.hom(x, y).enumerate() {
                pos[f] = i;
            }
        }
    }
    pos
}

/// One side of a hom diagram: an object and morphism assignment into `C`.
pub struct Side<'a> {
    pub obj: &'a dyn Fn(usize) -> usize,
    pub mor: &'a dyn Fn(usize) -> usize,
}

/// `o ↦ hom_C(L(o), R(o))` on `domain`, with `L` contravariant and `R`
/// covariant: a morphism `m: o → o'` acts by `u ↦ R(m) ∘ u ∘ L(m)`, and `g`
/// by `u ↦ gu`. Checked to be a right G-functor.
pub fn hom_diagram(domain: Arc<GCategory>, c: &GCategory, left: Side<'_>, right: Side<'_>, top: usize) -> Result<SFunctor> {
    let d = &domain.cat;
    let cat = &c.cat;
    let pos = hom_positions(c);
    let homs: Vec<Vec<usize>> = (0..d.object_count()).map(|o| cat.hom((left.obj)(o), (right.obj)(o)).collect()).collect();
    let values: Vec<Arc<SSet>> = homs
        .iter()
        .map(|h| {
            let labels = (0..=top).map(|_| h.iter().map(|&u| cat.morphism_label(u).to_string()).collect()).collect();
            Arc::new(SSet::discrete(top, h.len()).with_labels(labels))
        })
        .collect();
    let constant = |table: Vec<usize>| LevelMap(vec![table; top + 1]);
    let maps = (0..d.morphism_count())
        .map(|m| {
            let (o, o2) = (d.src(m), d.tgt(m));
            let (l, r) = ((left.mor)(m), (right.mor)(m));
            let table = homs[o]
                .iter()
                .map(|&u| {
                    let image = cat
                        .comp(u, l)
                        .and_then(|ul| cat.comp(r, ul))
                        .ok_or_else(|| Error::Signature(format!("hom diagram: morphism {m} does not compose")))?;
                    Ok(pos[image])
                })
                .collect::<Result<Vec<_>>>()?;
            debug_assert!(table.iter().all(|&i| i < homs[o2].len()));
            Ok(constant(table))
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = domain
        .group()
        .elements()
        .map(|g| (0..d.object_count()).map(|o| constant(homs[o].iter().map(|&u| pos[c.action.mor(g, u)]).collect())).collect())
        .collect();
    let f = SFunctor::new(domain, values, maps, eta)?;
    Ok(f)
}

/// `(X, Y) ↦ hom_D(FY, FX)` on `C × C^op`, acted on by `f ↦ gf`.
pub fn hom_bifunctor(f: &Functor, top: usize) -> Result<SFunctor> {
    f.require_equivariant()?;
    let c = &f.source;
    let domain = Arc::new(c.twisted_square());
    let (ob, mb) = (c.cat.object_count(), c.cat.morphism_count());
    hom_diagram(
        domain,
        &f.target,
        Side { obj: &|p| f.obj(p % ob), mor: &|m| f.mor(m % mb) },
        Side { obj: &|p| f.obj(p / ob), mor: &|m| f.mor(m / mb) },
        top,
    )
}

/// `(C, D) ↦ hom_C(C, SD)` on `C^op × D`.
pub fn hom_into_image(s: &Functor, top: usize) -> Result<SFunctor> {
    s.require_equivariant()?;
    let (c, d) = (&s.target, &s.source);
    let domain = Arc::new(GCategory::product(&c.opposite(), d)?);
    let (ob, mb) = (d.cat.object_count(), d.cat.morphism_count());
    hom_diagram(
        domain,
        c,
        Side { obj: &|p| p / ob, mor: &|m| m / mb },
        Side { obj: &|p| s.obj(p % ob), mor: &|m| s.mor(m % mb) },
        top,
    )
}

/// `(D, C) ↦ hom_C(SD, C)` on `D^op × C`.
pub fn hom_out_of_image(s: &Functor, top: usize) -> Result<SFunctor> {
    s.require_equivariant()?;
    let (c, d) = (&s.target, &s.source);
    let domain = Arc::new(GCategory::product(&d.opposite(), c)?);
    let (ob, mb) = (c.cat.object_count(), c.cat.morphism_count());
    hom_diagram(
        domain,
        c,
        Side { obj: &|p| s.obj(p / ob), mor: &|m| s.mor(m / mb) },
        Side { obj: &|p| p % ob, mor: &|m| m % mb },
        top,
    )
}

/// Index of `u` inside `hom(src u, tgt u)`, matching the simplex ids of the
/// values built here.
pub fn hom_index(c: &GCategory, u: usize) -> usize {
    let cat = &c.cat;
    cat.hom(cat.src(u), cat.tgt(u)).position(|f| f == u).expect("morphism of its own hom-set")
}

/// The `i`-th morphism of `hom(x, y)`.
pub fn hom_element(c: &GCategory, x: usize, y: usize, i: usize) -> usize {
    c.cat.hom(x, y).nth(i).expect("hom index in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::CatAction;
    use crate::algebra::category::FinCategory;
    use crate::algebra::group::FinGroup;

    fn swapped_pair() -> Arc<GCategory> {
        let group = Arc::new(FinGroup::cyclic(2));
        let on = vec![vec![0, 1], vec![1, 0]];
        Arc::new(GCategory::new(FinCategory::discrete(2), CatAction::new(group, on.clone(), on).unwrap()).unwrap())
    }

    #[test]
    fn single_morphism_gives_constant_point() {
        let c = Arc::new(GCategory::terminal(Arc::new(FinGroup::trivial())));
        let h = hom_bifunctor(&Functor::identity(c), 2).unwrap();
        assert_eq!(h.value(0).counts(), &[1, 1, 1]);
    }

    #[test]
    fn ordinal_hom_sets() {
        let c = Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(1), Arc::new(FinGroup::trivial())));
        let h = hom_bifunctor(&Functor::identity(c), 1).unwrap();
        // value at (X, Y) is hom(Y, X); object (x, y) has index 2x + y
        assert_eq!(h.value(1).count(0), 0, "hom(1, 0)");
        assert_eq!(h.value(2).count(0), 1, "hom(0, 1)");
        assert!(h.validate().is_valid());
    }

    #[test]
    fn swap_moves_hom_sets_bijectively() {
        let c = swapped_pair();
        let h = hom_bifunctor(&Functor::identity(c), 1).unwrap();
        // (0, 0) ↦ (1, 1)
        assert_eq!(h.eta(1, 0).0, vec![vec![0], vec![0]]);
        assert_eq!(h.domain.action.obj(1, 0), 3);
    }

    #[test]
    fn image_hom_functors_validate() {
        let c = Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(2), Arc::new(FinGroup::cyclic(2))));
        let id = Functor::identity(c);
        assert!(hom_into_image(&id, 2).unwrap().validate().is_valid());
        assert!(hom_out_of_image(&id, 2).unwrap().validate().is_valid());
    }
}
