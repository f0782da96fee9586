use std::sync::Arc;

use crate::algebra::action::GCategory;
use crate::algebra::category::CatMap;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A functor between two G-categories. Equivariance is a predicate on the
/// functor, not a separate type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub source: Arc<GCategory>,
    pub target: Arc<GCategory>,
    pub map: CatMap,
}

impl Functor {
    pub fn new(source: Arc<GCategory>, target: Arc<GCategory>, map: CatMap) -> Result<Self> {
        map.check_shape(&source.cat, &target.cat)?;
        let f = Self { source, target, map };
        f.validate().into_result()?;
        Ok(f)
    }

    pub fn identity(c: Arc<GCategory>) -> Self {
        let map = CatMap::identity(&c.cat);
        Self { source: c.clone(), target: c, map }
    }

    pub fn obj(&self, x: usize) -> usize {
        self.map.obj(x)
    }

    pub fn mor(&self, f: usize) -> usize {
        self.map.mor(f)
    }

    pub fn validate(&self) -> ValidationReport {
        self.map.validate(&self.source.cat, &self.target.cat)
    }

    /// Every `(g, C)` or `(g, φ)` where `S(gC) ≠ gS(C)` or `S(gφ) ≠ gS(φ)`.
    pub fn equivariance_violations(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.source.group() != self.target.group() {
            report.push("equivariance", "source and target are acted on by different groups");
            return report;
        }
        let (sa, ta) = (&self.source.action, &self.target.action);
        for g in self.source.group().elements() {
            for x in 0..self.source.cat.object_count() {
                if self.obj(sa.obj(g, x)) != ta.obj(g, self.obj(x)) {
                    report.push("equivariance: S(gC) ≠ gS(C)", format!("(g, C) = ({g}, {x})"));
                }
            }
            for f in 0..self.source.cat.morphism_count() {
                if self.mor(sa.mor(g, f)) != ta.mor(g, self.mor(f)) {
                    report.push("equivariance: S(gφ) ≠ gS(φ)", format!("(g, φ) = ({g}, {f})"));
                }
            }
        }
        report
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariance_violations().is_valid()
    }

    /// Errors with the first offending `(g, C)` when not equivariant.
    pub fn require_equivariant(&self) -> Result<()> {
        let report = self.equivariance_violations();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::NotEquivariant(v.location.clone())),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.after(&first.map),
        }
    }

    /// Projection `A × B → A`.
    pub fn first_projection(a: Arc<GCategory>, b: &GCategory) -> Result<Self> {
        let product = Arc::new(GCategory::product(&a, b)?);
        let (ob, mb) = (b.cat.object_count(), b.cat.morphism_count());
        let map = CatMap {
            on_objects: (0..product.cat.object_count()).map(|p| p / ob).collect(),
            on_morphisms: (0..product.cat.morphism_count()).map(|f| f / mb).collect(),
        };
        Ok(Self { source: product, target: a, map })
    }

    /// `A × B → B × A`.
    pub fn swap(a: &GCategory, b: &GCategory) -> Result<Self> {
        let source = Arc::new(GCategory::product(a, b)?);
        let target = Arc::new(GCategory::product(b, a)?);
        let (oa, ob) = (a.cat.object_count(), b.cat.object_count());
        let (ma, mb) = (a.cat.morphism_count(), b.cat.morphism_count());
        let map = CatMap {
            on_objects: (0..oa * ob).map(|p| (p % ob) * oa + p / ob).collect(),
            on_morphisms: (0..ma * mb).map(|f| (f % mb) * ma + f / mb).collect(),
        };
        Ok(Self { source, target, map })
    }
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
        let action = CatAction::new(group, on.clone(), on).unwrap();
        Arc::new(GCategory::new(FinCategory::discrete(2), action).unwrap())
    }

    #[test]
    fn identity_is_equivariant() {
        assert!(Functor::identity(swapped_pair()).is_equivariant());
    }

    #[test]
    fn collapsing_a_swapped_pair_onto_one_side_is_not_equivariant() {
        let c = swapped_pair();
        let map = CatMap { on_objects: vec![0, 0], on_morphisms: vec![0, 0] };
        let f = Functor::new(c.clone(), c, map).unwrap();
        assert!(matches!(f.require_equivariant(), Err(Error::NotEquivariant(loc)) if loc.contains("(1, 0)")));
    }

    #[test]
    fn swap_is_an_equivariant_functor() {
        let a = swapped_pair();
        let b = GCategory::with_trivial_action(FinCategory::ordinal(1), a.group().clone());
        let s = Functor::swap(&a, &b).unwrap();
        assert!(s.validate().is_valid());
        assert!(s.is_equivariant());
        let back = Functor::swap(&b, &a).unwrap();
        assert_eq!(back.after(&s).map, CatMap::identity(&s.source.cat));
    }

    #[test]
    fn projection_is_equivariant() {
        let c = swapped_pair();
        let p = Functor::first_projection(c.clone(), &c).unwrap();
        assert!(p.validate().is_valid());
        assert!(p.is_equivariant());
    }
}
