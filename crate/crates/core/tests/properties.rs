use std::collections::BTreeSet;
use std::sync::Arc;

use ghocolim_core::algebra::action::{orbits, stabilizer, CatAction};
use ghocolim_core::algebra::category::FinCategory;
use ghocolim_core::algebra::group::{subgroups, FinGroup, Subgroup};
use ghocolim_core::homology::field::induced_iso;
use ghocolim_core::homology::{g_equivalence_witness, homology, ChainComplex, Coefficients};
use ghocolim_core::par::Exec;
use ghocolim_core::simplicial::gsset::GSSet;
use ghocolim_core::simplicial::ops::{coproduct, fixed_subcomplex, product};
use ghocolim_core::simplicial::sset::{LevelMap, SSet, SimplicialMap};
use proptest::prelude::*;

const TOP: usize = 3;

fn group(i: usize) -> Arc<FinGroup> {
    Arc::new(match i {
        0 => FinGroup::trivial(),
        1 => FinGroup::cyclic(2),
        2 => FinGroup::cyclic(3),
        3 => FinGroup::cyclic(4),
        4 => FinGroup::cyclic(2).product(&FinGroup::cyclic(2)),
        5 => FinGroup::symmetric(3),
        6 => FinGroup::cyclic(6),
        _ => FinGroup::dihedral(4),
    })
}

fn any_group() -> impl Strategy<Value = Arc<FinGroup>> {
    (0usize..8).prop_map(group)
}

/// A group with one of its subgroups.
fn group_and_subgroup() -> impl Strategy<Value = (Arc<FinGroup>, Subgroup)> {
    (any_group(), any::<prop::sample::Index>()).prop_map(|(g, i)| {
        let hs = subgroups(&g, 24).unwrap();
        let h = hs[i.index(hs.len())].clone();
        (g, h)
    })
}

/// Small simplicial sets: simplices and boundaries, closed under sums and
/// binary products.
fn space() -> impl Strategy<Value = SSet> {
    let leaf = prop_oneof![
        (0usize..3).prop_map(|k| SSet::standard(k, TOP)),
        (1usize..4).prop_map(|k| SSet::boundary(k, TOP)),
        (1usize..3).prop_map(|k| SSet::discrete(TOP, k)),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| coproduct(&[&x, &y]).unwrap().0),
            (inner.clone(), inner).prop_map(|(x, y)| product(&x, &y).unwrap().0),
        ]
    })
}

/// Positions of the cosets `gH` as `g` runs over the group.
fn coset_action(h: &Subgroup) -> (Vec<usize>, Vec<Vec<usize>>) {
    let g = h.parent();
    let reps = h.left_coset_representatives();
    let coset_of = |x: usize| reps.iter().position(|&r| h.contains(g.mul(g.inv(r), x))).unwrap();
    let table = g.elements().map(|a| reps.iter().map(|&r| coset_of(g.mul(a, r))).collect()).collect();
    (reps, table)
}

/// `G/H × X`, with G permuting the copies.
fn induced(h: &Subgroup, x: &SSet) -> GSSet {
    let (reps, table) = coset_action(h);
    let copies: Vec<&SSet> = vec![x; reps.len()];
    let (sum, inclusions) = coproduct(&copies).unwrap();
    let action = table
        .iter()
        .map(|perm: &Vec<usize>| {
            let mut levels = vec![vec![0; 0]; TOP + 1];
            for (n, level) in levels.iter_mut().enumerate() {
                *level = vec![0; sum.count(n)];
                for (c, inc) in inclusions.iter().enumerate() {
                    for s in 0..x.count(n) {
                        level[inc.apply(n, s)] = inclusions[perm[c]].apply(n, s);
                    }
                }
            }
            LevelMap(levels)
        })
        .collect();
    GSSet::new(Arc::new(sum), h.parent().clone(), action).unwrap()
}

fn boundary_squared(c: &ChainComplex, n: usize) -> bool {
    c.boundary[n + 1].iter().all(|col| {
        let mut acc = std::collections::BTreeMap::<usize, i64>::new();
        for &(r, v) in col {
            for &(r2, w) in &c.boundary[n][r] {
                *acc.entry(r2).or_default() += v * w;
            }
        }
        acc.values().all(|&v| v == 0)
    })
}

fn map(x: &Arc<SSet>, y: &Arc<SSet>, levels: LevelMap) -> SimplicialMap {
    SimplicialMap::new(x.clone(), y.clone(), levels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn orbit_times_stabilizer_is_the_group_order((g, h) in group_and_subgroup()) {
        let (_, table) = coset_action(&h);
        let cat = FinCategory::discrete(table[0].len());
        let action = CatAction::new(g.clone(), table.clone(), table).unwrap();
        prop_assert!(action.validate(&cat).is_valid());
        let os = orbits(&action);
        for orbit in &os {
            for &x in orbit {
                prop_assert_eq!(orbit.len() * stabilizer(&action, x).unwrap().order(), g.order());
            }
        }
    }

    #[test]
    fn subgroups_are_closed_under_conjugation(g in any_group()) {
        let hs = subgroups(&g, 24).unwrap();
        let sets: BTreeSet<Vec<usize>> = hs.iter().map(|h| h.elements().to_vec()).collect();
        for h in &hs {
            for a in g.elements() {
                prop_assert!(sets.contains(h.conjugate(a).elements()));
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero(x in space()) {
        let c = ChainComplex::new(&x);
        for n in 0..c.top() {
            prop_assert!(boundary_squared(&c, n), "degree {}", n);
        }
    }

    #[test]
    fn rational_homology_of_a_sum_adds(x in space(), y in space()) {
        let (sum, _) = coproduct(&[&x, &y]).unwrap();
        let h = |s: &SSet| homology(&ChainComplex::new(s), Coefficients::Rationals).unwrap().ranks();
        let (hx, hy, hs) = (h(&x), h(&y), h(&sum));
        let added: Vec<usize> = hx.iter().zip(&hy).map(|(a, b)| a + b).collect();
        prop_assert_eq!(hs, added);
    }

    #[test]
    fn induced_isomorphisms_compose(x in space(), y in space(), use_product in any::<bool>()) {
        let (x, y) = (Arc::new(x), Arc::new(y));
        let pt = Arc::new(SSet::point(TOP));
        // f: X × Y → X or X → X ⊔ Y, then g: target → point
        let (f, mid) = if use_product {
            let (p, first, _) = product(&x, &y).unwrap();
            let p = Arc::new(p);
            (map(&p, &x, first), x.clone())
        } else {
            let (s, inc) = coproduct(&[&x, &y]).unwrap();
            let s = Arc::new(s);
            (map(&x, &s, inc[0].clone()), s)
        };
        let g = map(&mid, &pt, LevelMap::to_point(&mid));
        let gf = g.after(&f).unwrap();
        for k in [Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)] {
            let (vf, vg, vgf) = (induced_iso(&f, k, TOP - 1).unwrap(), induced_iso(&g, k, TOP - 1).unwrap(), induced_iso(&gf, k, TOP - 1).unwrap());
            for d in 0..TOP {
                prop_assert!(!(vf[d] && vg[d]) || vgf[d], "degree {} over {}", d, k);
            }
        }
    }

    #[test]
    fn identity_passes_the_witness((_, h) in group_and_subgroup(), x in space()) {
        let gx = induced(&h, &x);
        prop_assert!(gx.validate().is_valid());
        let id = SimplicialMap::identity(gx.space.clone());
        let coeffs = [Coefficients::Rationals, Coefficients::Prime(2)];
        let r = g_equivalence_witness(&id, &gx, &gx, &coeffs, 24, Exec::Parallel).unwrap();
        prop_assert!(r.pass);
        let sequential = g_equivalence_witness(&id, &gx, &gx, &coeffs, 24, Exec::Sequential).unwrap();
        prop_assert_eq!(r, sequential);
    }

    #[test]
    fn fixed_points_of_the_trivial_subgroup_are_everything((_, h) in group_and_subgroup(), x in space()) {
        let gx = induced(&h, &x);
        let (fixed, inc) = fixed_subcomplex(&gx, &Subgroup::trivial(gx.group.clone())).unwrap();
        prop_assert_eq!(fixed.counts(), gx.space.counts());
        prop_assert_eq!(inc, LevelMap::identity(&gx.space));
    }

    #[test]
    fn fixed_points_shrink_as_the_subgroup_grows((g, h) in group_and_subgroup(), x in space()) {
        let gx = induced(&h, &x);
        let hs = subgroups(&g, 24).unwrap();
        let image = |k: &Subgroup| {
            let (f, inc) = fixed_subcomplex(&gx, k).unwrap();
            prop_assert!(f.validate().is_valid());
            Ok((0..=TOP).map(|n| inc.level(n).iter().copied().collect::<BTreeSet<usize>>()).collect::<Vec<_>>())
        };
        for small in &hs {
            for big in hs.iter().filter(|b| small.is_subgroup_of(b)) {
                let (a, b) = (image(small)?, image(big)?);
                for n in 0..=TOP {
                    prop_assert!(b[n].is_subset(&a[n]));
                }
            }
        }
    }

    #[test]
    fn inverse_elements_act_by_inverse_maps((_, h) in group_and_subgroup(), x in space()) {
        let gx = induced(&h, &x);
        let id = LevelMap::identity(&gx.space);
        for a in gx.group.elements() {
            let back = gx.action_levels(gx.group.inv(a)).after(gx.action_levels(a));
            prop_assert_eq!(back, id.clone());
        }
    }
}
