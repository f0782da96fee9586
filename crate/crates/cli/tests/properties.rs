//! Laws of the constructions, checked on generated instances.

use std::sync::Arc;

use ghocolim::generate::{generate, Caps, SChoice};
use ghocolim::resolve::{resolve, Model};
use ghocolim_core::algebra::gfunctor::SFunctor;
use ghocolim_core::constructions::canonical::{
    bar_to_hocolim, coend_to_bar_ft, comma_collapse, prop3a, prop3b, reduction, to_colim, to_nerve,
};
use ghocolim_core::constructions::hocolim::hocolim;
use ghocolim_core::constructions::nerve::nerve;
use proptest::prelude::*;

fn instance(seed: u64, s: SChoice) -> Model {
    let caps = Caps { max_group: 6, max_objects: 4, max_morphisms: 14, truncation: 2, s };
    resolve(&generate(seed, &caps).unwrap(), None).unwrap()
}

fn covariant(m: &Model) -> Arc<SFunctor> {
    m.functors["F"].functor.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn functor_actions_satisfy_the_cocycle_laws(seed in any::<u64>()) {
        let m = instance(seed, SChoice::Any);
        for f in m.functors.values() {
            prop_assert!(f.functor.validate().is_valid());
        }
        let (_, s) = m.functor_maps()[0];
        let pulled = covariant(&m).precompose(s).unwrap();
        prop_assert!(pulled.validate().is_valid());
    }

    #[test]
    fn nerves_validate_with_their_action(seed in any::<u64>()) {
        let m = instance(seed, SChoice::None);
        for c in m.gcats.values() {
            prop_assert!(nerve(c, 2).unwrap().validate().is_valid());
        }
    }

    #[test]
    fn canonical_isomorphisms_are_isomorphisms(seed in any::<u64>()) {
        let m = instance(seed, SChoice::Any);
        let f = covariant(&m);
        let c = f.domain.clone();
        let h = hocolim(&f).unwrap();
        prop_assert!(bar_to_hocolim(&f, &h).unwrap().iso().is_iso);
        let star = Arc::new(SFunctor::point(Arc::new(c.opposite()), f.top()));
        prop_assert!(coend_to_bar_ft(&f, &star).unwrap().iso().is_iso);
        prop_assert!(comma_collapse(&c, 2).unwrap().is_iso());
        let (_, s) = m.functor_maps()[0];
        prop_assert!(prop3a(s, 2).unwrap().0.is_iso());
        prop_assert!(prop3b(s, &f).unwrap().is_iso());
        prop_assert!(reduction(s, &f).unwrap().iso().is_iso);
    }

    #[test]
    fn maps_to_the_colimit_and_the_nerve_are_equivariant(seed in any::<u64>()) {
        let m = instance(seed, SChoice::None);
        let h = hocolim(&covariant(&m)).unwrap();
        prop_assert!(to_colim(&h).unwrap().0.equivariance().is_valid());
        prop_assert!(to_nerve(&h).unwrap().equivariance().is_valid());
    }
}
