//! `hocolim_C F = F ⊗_C N(−↓C)`.

use std::sync::Arc;

use crate::algebra::functor::Functor;
use crate::algebra::gfunctor::{GFunctorMorphism, SFunctor};
use crate::constructions::bimodule::Tensorand;
use crate::constructions::coend::{coend, induced_map};
use crate::constructions::comma::{under_family, NerveFamily};
use crate::constructions::quotient::QuotientSpace;
use crate::error::{Error, Result};
use crate::simplicial::gsset::GSSet;
use crate::simplicial::sset::SimplicialMap;

/// A homotopy colimit together with the pieces needed to read its simplices.
#[derive(Clone, Debug)]
pub struct Hocolim {
    pub f: Arc<SFunctor>,
    /// `X ↦ N(X↓C)` on `C^op`.
    pub nerves: Arc<NerveFamily>,
    pub tensorand: Tensorand,
    pub quotient: QuotientSpace,
}

impl Hocolim {
    pub fn g(&self) -> Result<&GSSet> {
        self.quotient.g()
    }
}

/// The under-category nerve family of the identity, truncated at `top`.
pub fn under_nerves(f: &SFunctor) -> Result<Arc<NerveFamily>> {
    Ok(Arc::new(NerveFamily::new(&under_family(&Functor::identity(f.domain.clone())), f.top())?))
}

pub fn hocolim(f: &Arc<SFunctor>) -> Result<Hocolim> {
    hocolim_with(f, under_nerves(f)?)
}

/// [`hocolim`] reusing a nerve family of the same category.
pub fn hocolim_with(f: &Arc<SFunctor>, nerves: Arc<NerveFamily>) -> Result<Hocolim> {
    let tensorand = Tensorand::new(f.clone(), nerves.functor.clone())?;
    let quotient = coend(&tensorand)?;
    Ok(Hocolim { f: f.clone(), nerves, tensorand, quotient })
}

/// `hocolim ε` for a morphism of right G-functors, between homotopy
/// colimits built over the same nerve family.
pub fn hocolim_map(eps: &GFunctorMorphism, source: &Hocolim, target: &Hocolim) -> Result<SimplicialMap> {
    if !Arc::ptr_eq(&source.nerves, &target.nerves) {
        return Err(Error::Signature("homotopy colimits over different nerve families".into()));
    }
    let (zs, zt) = (&source.tensorand, &target.tensorand);
    induced_map(&source.quotient, &target.quotient, |n, (x, s)| {
        let (a, b) = zs.split(x, n, s);
        (x, zt.join(x, n, eps.components[x].apply(n, a), b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::{CatAction, GCategory};
    use crate::algebra::category::FinCategory;
    use crate::algebra::group::FinGroup;
    use crate::constructions::nerve::Nerve;

    #[test]
    fn constant_point_gives_the_nerve() {
        let c = Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(2), Arc::new(FinGroup::trivial())));
        let h = hocolim(&Arc::new(SFunctor::point(c.clone(), 3))).unwrap();
        assert_eq!(h.quotient.space.counts(), Nerve::new(&c.cat, 3).space().counts());
        assert!(h.quotient.space.validate().is_valid());
    }

    #[test]
    fn discrete_category_gives_the_disjoint_union() {
        let group = Arc::new(FinGroup::cyclic(2));
        let on = vec![vec![0, 1], vec![1, 0]];
        let c = Arc::new(GCategory::new(FinCategory::discrete(2), CatAction::new(group, on.clone(), on).unwrap()).unwrap());
        let h = hocolim(&Arc::new(SFunctor::point(c, 2))).unwrap();
        let x = h.g().unwrap();
        assert_eq!(x.space.counts(), &[2, 2, 2]);
        assert_eq!(x.act(1, 0, 0), 1);
        assert!(x.validate().is_valid());
    }
}
