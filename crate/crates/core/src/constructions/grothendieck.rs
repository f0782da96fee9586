//! The Grothendieck construction `C∫F` of a category-valued right
//! G-functor, with the action `g(X, a) = (gX, η_{g,X} a)` on objects and
//! `g(f, u) = (gf, η_{g,Y} u)` on morphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::action::{CatAction, GCategory};
use crate::algebra::category::{CatMap, FinCategory};
use crate::algebra::functor::Functor;
use crate::algebra::gfunctor::CatGFunctor;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct GrothendieckCategory {
    pub category: Arc<GCategory>,
    /// `(X, a)` for each object.
    pub objects: Vec<(usize, usize)>,
    /// `(f, u)` for each morphism.
    pub morphisms: Vec<(usize, usize)>,
    /// The projection `(X, a) ↦ X`.
    pub projection: Functor,
}

/// `C∫F`. Errors when `F` is not a valid right G-functor.
pub fn grothendieck(f: &CatGFunctor) -> Result<GrothendieckCategory> {
    f.validate().into_result()?;
    let dom = &f.domain;
    let c = &dom.cat;
    let objects: Vec<(usize, usize)> =
        (0..c.object_count()).flat_map(|x| (0..f.values[x].object_count()).map(move |a| (x, a))).collect();
    let object_id: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();

    let mut arrows = Vec::new();
    let mut morphisms = Vec::new();
    for (i, &(x, a)) in objects.iter().enumerate() {
        for &m in c.out_of(x) {
            let y = c.tgt(m);
            let fy = &f.values[y];
            let image = f.maps[m].obj(a);
            for &u in fy.out_of(image) {
                arrows.push((i, object_id[&(y, fy.tgt(u))]));
                morphisms.push((m, u));
            }
        }
    }
    let morphism_id: HashMap<(usize, usize), usize> = morphisms.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let identity = objects.iter().map(|&(x, a)| morphism_id[&(c.identity(x), f.values[x].identity(a))]).collect();

    // (m2, v) ∘ (m1, u) = (m2 m1, v ∘ F(m2)(u))
    let mut comp = Vec::new();
    for (k1, &(m1, u)) in morphisms.iter().enumerate() {
        for &k2 in &outgoing(&arrows, arrows[k1].1) {
            let (m2, v) = morphisms[k2];
            let y2 = c.tgt(m2);
            let w = f.values[y2].compose(v, f.maps[m2].mor(u));
            comp.push((k2, k1, morphism_id[&(c.compose(m2, m1), w)]));
        }
    }

    let object_labels = objects
        .iter()
        .map(|&(x, a)| format!("({}, {})", c.object_label(x), f.values[x].object_label(a)))
        .collect();
    let morphism_labels = morphisms
        .iter()
        .map(|&(m, u)| format!("({}, {})", c.morphism_label(m), f.values[c.tgt(m)].morphism_label(u)))
        .collect();
    let cat = FinCategory::from_parts(objects.len(), arrows, identity, comp)?.with_labels(object_labels, morphism_labels);

    let group = dom.group().clone();
    let on_objects = group
        .elements()
        .map(|g| objects.iter().map(|&(x, a)| object_id[&(dom.action.obj(g, x), f.eta[g][x].obj(a))]).collect())
        .collect();
    let on_morphisms = group
        .elements()
        .map(|g| {
            morphisms
                .iter()
                .map(|&(m, u)| morphism_id[&(dom.action.mor(g, m), f.eta[g][c.tgt(m)].mor(u))])
                .collect()
        })
        .collect();
    let category = Arc::new(GCategory::new(cat, CatAction::new(group, on_objects, on_morphisms)?)?);
    let map = CatMap {
        on_objects: objects.iter().map(|o| o.0).collect(),
        on_morphisms: morphisms.iter().map(|m| m.0).collect(),
    };
    let projection = Functor::new(category.clone(), dom.clone(), map)?;
    Ok(GrothendieckCategory { category, objects, morphisms, projection })
}

fn outgoing(arrows: &[(usize, usize)], from: usize) -> Vec<usize> {
    arrows.iter().enumerate().filter(|(_, a)| a.0 == from).map(|(k, _)| k).collect()
}

/// The constant functor with value `d` and identity `η`.
pub fn constant_cat(domain: Arc<GCategory>, d: &FinCategory) -> CatGFunctor {
    let c = &domain.cat;
    let id = CatMap::identity(d);
    let value = Arc::new(d.clone());
    CatGFunctor {
        values: vec![value; c.object_count()],
        maps: vec![id.clone(); c.morphism_count()],
        eta: vec![vec![id; c.object_count()]; domain.group().order()],
        domain,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::FinGroup;
    use crate::constructions::comma::under_family;

    fn swapped_pair() -> Arc<GCategory> {
        let group = Arc::new(FinGroup::cyclic(2));
        let on = vec![vec![0, 1], vec![1, 0]];
        Arc::new(GCategory::new(FinCategory::discrete(2), CatAction::new(group, on.clone(), on).unwrap()).unwrap())
    }

    #[test]
    fn over_a_point_recovers_the_fiber() {
        let c = Arc::new(GCategory::terminal(Arc::new(FinGroup::trivial())));
        let d = FinCategory::ordinal(2);
        let g = grothendieck(&constant_cat(c, &d)).unwrap();
        assert_eq!(g.category.cat.object_count(), 3);
        assert_eq!(g.category.cat.morphism_count(), d.morphism_count());
    }

    #[test]
    fn constant_point_recovers_the_base() {
        let c = swapped_pair();
        let g = grothendieck(&constant_cat(c.clone(), &FinCategory::terminal())).unwrap();
        assert_eq!(g.category.action.object_tables(), c.action.object_tables());
        assert!(g.projection.is_equivariant());
    }

    #[test]
    fn swapped_fibers_have_no_fixed_object() {
        let c = swapped_pair();
        let d = Arc::new(FinCategory::discrete(2));
        let id = CatMap::identity(&d);
        let swap = CatMap { on_objects: vec![1, 0], on_morphisms: vec![1, 0] };
        let f = CatGFunctor {
            domain: c,
            values: vec![d.clone(), d],
            maps: vec![id.clone(), id.clone()],
            eta: vec![vec![id.clone(), id], vec![swap.clone(), swap]],
        };
        let g = grothendieck(&f).unwrap();
        assert_eq!(g.category.cat.object_count(), 4);
        assert!((0..4).all(|o| g.category.action.obj(1, o) != o));
    }

    #[test]
    fn comma_family_gives_a_valid_g_category() {
        let c = Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(2), Arc::new(FinGroup::cyclic(2))));
        let family = under_family(&Functor::identity(c));
        let g = grothendieck(&family.functor).unwrap();
        // objects (c, (d, u)) with u: c → d: one per morphism of [2]
        assert_eq!(g.category.cat.object_count(), 6);
        assert!(g.category.validate().is_valid());
    }
}
