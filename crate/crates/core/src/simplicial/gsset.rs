use std::sync::Arc;

use crate::algebra::group::{FinGroup, Subgroup};
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::simplicial::sset::{LevelMap, SSet, SimplicialMap};

/// A simplicial set with a group acting by simplicial automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSSet {
    pub space: Arc<SSet>,
    pub group: Arc<FinGroup>,
    action: Vec<LevelMap>,
}

impl GSSet {
    pub fn new(space: Arc<SSet>, group: Arc<FinGroup>, action: Vec<LevelMap>) -> Result<Self> {
        let x = Self::from_parts(space, group, action)?;
        x.validate().into_result()?;
        Ok(x)
    }

    /// Shape checks only.
    pub fn from_parts(space: Arc<SSet>, group: Arc<FinGroup>, action: Vec<LevelMap>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Format(format!(
                "{} action maps for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for a in &action {
            a.check_shape(&space, &space)?;
        }
        Ok(Self { space, group, action })
    }

    pub fn trivial(space: Arc<SSet>, group: Arc<FinGroup>) -> Self {
        let id = LevelMap::identity(&space);
        let action = vec![id; group.order()];
        Self { space, group, action }
    }

    /// The action of `h` alone, with `h` presented as a group of its own.
    pub fn restrict(&self, h: &Subgroup) -> Result<GSSet> {
        if h.parent() != &self.group {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        let (group, embed) = h.as_group();
        let action = embed.iter().map(|&g| self.action[g].clone()).collect();
        Ok(Self { space: self.space.clone(), group: Arc::new(group), action })
    }

    pub fn top(&self) -> usize {
        self.space.top()
    }

    pub fn act(&self, g: usize, n: usize, s: usize) -> usize {
        self.action[g].apply(n, s)
    }

    pub fn action_levels(&self, g: usize) -> &LevelMap {
        &self.action[g]
    }

    pub fn action_map(&self, g: usize) -> SimplicialMap {
        SimplicialMap::new_unchecked(self.space.clone(), self.space.clone(), self.action[g].clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.space.validate();
        for g in self.group.elements() {
            report.absorb(&format!("action of element {g}"), self.action[g].validate(&self.space, &self.space));
            if !self.action[g].is_bijective_onto(&self.space) {
                report.push("action element is not a bijection", format!("element {g}"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        let x = &self.space;
        for n in 0..=x.top() {
            for s in 0..x.count(n) {
                if self.act(0, n, s) != s {
                    report.push("identity element does not act trivially", format!("degree {n}, simplex {s}"));
                }
            }
        }
        for a in self.group.elements() {
            for b in self.group.elements() {
                let ab = self.group.mul(a, b);
                for n in 0..=x.top() {
                    for s in 0..x.count(n) {
                        if self.act(ab, n, s) != self.act(a, n, self.act(b, n, s)) {
                            report.push(
                                "action is not a homomorphism",
                                format!("(g1, g2) = ({a}, {b}), degree {n}, simplex {s}"),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// Checks `f(g x) = g f(x)` for every element and simplex.
    pub fn equivariance_violations(source: &GSSet, target: &GSSet, f: &LevelMap) -> ValidationReport {
        let mut report = ValidationReport::new();
        if source.group != target.group {
            report.push("equivariance", "different acting groups");
            return report;
        }
        for g in source.group.elements() {
            for n in 0..=source.top() {
                for s in 0..source.space.count(n) {
                    if f.apply(n, source.act(g, n, s)) != target.act(g, n, f.apply(n, s)) {
                        report.push("map is not equivariant", format!("element {g}, degree {n}, simplex {s}"));
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn swapped_points(top: usize) -> GSSet {
        let space = Arc::new(SSet::discrete(top, 2));
        let group = Arc::new(FinGroup::cyclic(2));
        let swap = LevelMap(vec![vec![1, 0]; top + 1]);
        GSSet::new(space.clone(), group, vec![LevelMap::identity(&space), swap]).unwrap()
    }

    #[test]
    fn swap_is_a_valid_action() {
        assert!(swapped_points(2).validate().is_valid());
    }

    #[test]
    fn non_bijective_action_rejected() {
        let space = Arc::new(SSet::discrete(1, 2));
        let group = Arc::new(FinGroup::cyclic(2));
        let collapse = LevelMap(vec![vec![0, 0]; 2]);
        assert!(GSSet::new(space.clone(), group, vec![LevelMap::identity(&space), collapse]).is_err());
    }

    #[test]
    fn each_element_inverse_is_inverse_map() {
        let x = swapped_points(3);
        for g in x.group.elements() {
            let gi = x.group.inv(g);
            let comp = x.action_levels(gi).after(x.action_levels(g));
            assert_eq!(comp, LevelMap::identity(&x.space));
        }
    }
}
