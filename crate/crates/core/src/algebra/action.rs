use std::sync::Arc;

use crate::algebra::category::{CatMap, FinCategory};
use crate::algebra::group::{FinGroup, Subgroup};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A group acting on a finite category by functors, one per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatAction {
    group: Arc<FinGroup>,
    on_objects: Vec<Vec<usize>>,
    on_morphisms: Vec<Vec<usize>>,
}

impl CatAction {
    pub fn new(group: Arc<FinGroup>, on_objects: Vec<Vec<usize>>, on_morphisms: Vec<Vec<usize>>) -> Result<Self> {
        if on_objects.len() != group.order() || on_morphisms.len() != group.order() {
            return Err(Error::Format(format!(
                "action lists {} object and {} morphism permutations for a group of order {}",
                on_objects.len(),
                on_morphisms.len(),
                group.order()
            )));
        }
        Ok(Self { group, on_objects, on_morphisms })
    }

    pub fn trivial(group: Arc<FinGroup>, cat: &FinCategory) -> Self {
        let n = group.order();
        Self {
            group,
            on_objects: vec![(0..cat.object_count()).collect(); n],
            on_morphisms: vec![(0..cat.morphism_count()).collect(); n],
        }
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn obj(&self, g: usize, x: usize) -> usize {
        self.on_objects[g][x]
    }

    pub fn mor(&self, g: usize, f: usize) -> usize {
        self.on_morphisms[g][f]
    }

    pub fn object_tables(&self) -> &[Vec<usize>] {
        &self.on_objects
    }

    pub fn morphism_tables(&self) -> &[Vec<usize>] {
        &self.on_morphisms
    }

    pub fn as_cat_map(&self, g: usize) -> CatMap {
        CatMap {
            on_objects: self.on_objects[g].clone(),
            on_morphisms: self.on_morphisms[g].clone(),
        }
    }

    pub fn validate(&self, cat: &FinCategory) -> ValidationReport {
        let mut report = ValidationReport::new();
        let group = &self.group;
        for g in group.elements() {
            let map = self.as_cat_map(g);
            if let Err(e) = map.check_shape(cat, cat) {
                report.push("action table shape", format!("element {g}: {e}"));
                continue;
            }
            report.absorb(&format!("element {g} as a functor"), map.validate(cat, cat));
            if !is_permutation(&map.on_objects) || !is_permutation(&map.on_morphisms) {
                report.push("action element is not a bijection", format!("element {g}"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for x in 0..cat.object_count() {
            if self.obj(0, x) != x {
                report.push("identity element does not act trivially", format!("object {x}"));
            }
        }
        for f in 0..cat.morphism_count() {
            if self.mor(0, f) != f {
                report.push("identity element does not act trivially", format!("morphism {f}"));
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                for x in 0..cat.object_count() {
                    if self.obj(ab, x) != self.obj(a, self.obj(b, x)) {
                        report.push("action is not a homomorphism", format!("(g1, g2, object) = ({a}, {b}, {x})"));
                    }
                }
                for f in 0..cat.morphism_count() {
                    if self.mor(ab, f) != self.mor(a, self.mor(b, f)) {
                        report.push("action is not a homomorphism", format!("(g1, g2, morphism) = ({a}, {b}, {f})"));
                    }
                }
            }
        }
        report
    }
}

pub(crate) fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    for &x in v {
        if x >= v.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// A finite category together with a group action on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCategory {
    pub cat: FinCategory,
    pub action: CatAction,
}

impl GCategory {
    pub fn new(cat: FinCategory, action: CatAction) -> Result<Self> {
        let c = Self { cat, action };
        c.validate().into_result()?;
        Ok(c)
    }

    pub fn with_trivial_action(cat: FinCategory, group: Arc<FinGroup>) -> Self {
        let action = CatAction::trivial(group, &cat);
        Self { cat, action }
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        self.action.group()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.cat.validate();
        if report.is_valid() {
            report = self.action.validate(&self.cat);
        }
        report
    }

    /// Product with the diagonal action; indices as in [`FinCategory::product`].
    pub fn product(a: &GCategory, b: &GCategory) -> Result<Self> {
        if a.group() != b.group() {
            return Err(Error::Signature("product of categories acted on by different groups".into()));
        }
        let cat = FinCategory::product(&a.cat, &b.cat);
        let (ob, mb) = (b.cat.object_count(), b.cat.morphism_count());
        let group = a.group().clone();
        let on_objects = group
            .elements()
            .map(|g| (0..cat.object_count()).map(|p| a.action.obj(g, p / ob) * ob + b.action.obj(g, p % ob)).collect())
            .collect();
        let on_morphisms = group
            .elements()
            .map(|g| (0..cat.morphism_count()).map(|f| a.action.mor(g, f / mb) * mb + b.action.mor(g, f % mb)).collect())
            .collect();
        let action = CatAction { group, on_objects, on_morphisms };
        Ok(Self { cat, action })
    }

    pub fn opposite(&self) -> Self {
        Self { cat: self.cat.opposite(), action: self.action.clone() }
    }

    /// The one-object category with the trivial action of `group`.
    pub fn terminal(group: Arc<FinGroup>) -> Self {
        Self::with_trivial_action(FinCategory::terminal(), group)
    }

    /// `C × C^op`, the domain of bifunctors used by coends and bar constructions.
    pub fn twisted_square(&self) -> Self {
        Self::product(self, &self.opposite()).expect("same group")
    }

    /// The same category acted on by `h` alone, with `h` presented as a group
    /// of its own; the second component maps its elements back into `G`.
    pub fn restrict(&self, h: &Subgroup) -> Result<(Self, Vec<usize>)> {
        if h.parent() != self.group() {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        let (group, embed) = h.as_group();
        let on_objects = embed.iter().map(|&g| self.action.on_objects[g].clone()).collect();
        let on_morphisms = embed.iter().map(|&g| self.action.on_morphisms[g].clone()).collect();
        let action = CatAction { group: Arc::new(group), on_objects, on_morphisms };
        Ok((Self { cat: self.cat.clone(), action }, embed))
    }

    /// Full subcategory on a union of orbits. Errors if the set is not invariant.
    pub fn invariant_full_subcategory(&self, objects: &[usize]) -> Result<(Self, CatMap)> {
        for &x in objects {
            for g in self.group().elements() {
                if !objects.contains(&self.action.obj(g, x)) {
                    return Err(Error::Signature(format!("object set not invariant: element {g} moves {x} outside")));
                }
            }
        }
        let (cat, inc) = self.cat.full_subcategory(objects);
        let pos = |x: usize| objects.iter().position(|&y| y == x).expect("invariant");
        let mpos = |f: usize| inc.on_morphisms.iter().position(|&h| h == f).expect("invariant");
        let group = self.group().clone();
        let on_objects = group.elements().map(|g| objects.iter().map(|&x| pos(self.action.obj(g, x))).collect()).collect();
        let on_morphisms = group
            .elements()
            .map(|g| inc.on_morphisms.iter().map(|&f| mpos(self.action.mor(g, f))).collect())
            .collect();
        Ok((Self { cat, action: CatAction { group, on_objects, on_morphisms } }, inc))
    }
}

/// The subgroup of elements fixing object `x`.
pub fn stabilizer(action: &CatAction, x: usize) -> Result<Subgroup> {
    let n_obj = action.on_objects.first().map_or(0, |t| t.len());
    if x >= n_obj {
        return Err(Error::OutOfRange(format!("object {x} of {n_obj}")));
    }
    let elements = action.group.elements().filter(|&g| action.obj(g, x) == x).collect();
    Subgroup::new(action.group.clone(), elements)
}

/// Stabilizer of a morphism.
pub fn morphism_stabilizer(action: &CatAction, f: usize) -> Result<Subgroup> {
    let elements = action.group.elements().filter(|&g| action.mor(g, f) == f).collect();
    Subgroup::new(action.group.clone(), elements)
}

/// Orbits of the object set; each orbit is sorted, so its first entry is the
/// least index, and orbits are ordered by that representative.
pub fn orbits(action: &CatAction) -> Vec<Vec<usize>> {
    let n_obj = action.on_objects.first().map_or(0, |t| t.len());
    let mut seen = vec![false; n_obj];
    let mut out = Vec::new();
    for x in 0..n_obj {
        if seen[x] {
            continue;
        }
        let mut orbit: Vec<usize> = action.group.elements().map(|g| action.obj(g, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permuting(group: FinGroup, n: usize, perm_of: impl Fn(usize) -> Vec<usize>) -> CatAction {
        let group = Arc::new(group);
        let cat = FinCategory::discrete(n);
        let on = group.elements().map(&perm_of).collect::<Vec<_>>();
        let action = CatAction::new(group, on.clone(), on).unwrap();
        assert!(action.validate(&cat).is_valid());
        action
    }

    #[test]
    fn point_stabilizer_in_s3() {
        let g = FinGroup::symmetric(3);
        // element index k is the k-th permutation in lexicographic order
        let perms = vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]];
        let action = permuting(g, 3, |k| perms[k].clone());
        assert_eq!(stabilizer(&action, 0).unwrap().order(), 2);
        assert_eq!(orbits(&action), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn trivial_action_stabilizes_everything() {
        let g = Arc::new(FinGroup::cyclic(3));
        let action = CatAction::trivial(g, &FinCategory::discrete(3));
        assert_eq!(stabilizer(&action, 1).unwrap().order(), 3);
        assert_eq!(orbits(&action), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn swap_has_trivial_stabilizer() {
        let action = permuting(FinGroup::cyclic(2), 2, |g| if g == 0 { vec![0, 1] } else { vec![1, 0] });
        assert_eq!(stabilizer(&action, 0).unwrap().elements(), &[0]);
        assert_eq!(orbits(&action), vec![vec![0, 1]]);
        assert!(matches!(stabilizer(&action, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn cyclic_shift_is_one_orbit() {
        let action = permuting(FinGroup::cyclic(4), 4, |g| (0..4).map(|i| (i + g) % 4).collect());
        assert_eq!(orbits(&action).len(), 1);
    }

    #[test]
    fn non_homomorphic_action_is_reported() {
        let group = Arc::new(FinGroup::cyclic(2));
        let cat = FinCategory::discrete(2);
        // the identity element swaps the objects
        let on = vec![vec![1, 0], vec![1, 0]];
        let action = CatAction::new(group, on.clone(), on).unwrap();
        assert!(!action.validate(&cat).is_valid());
    }
}
