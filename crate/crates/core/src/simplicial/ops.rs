use std::sync::Arc;

use serde::Serialize;

use crate::algebra::group::Subgroup;
use crate::error::{Error, Result};
use crate::simplicial::gsset::GSSet;
use crate::simplicial::sset::{LevelMap, SSet, SimplicialMap};

fn same_top(xs: &[&SSet]) -> Result<usize> {
    let top = xs.first().map(|x| x.top()).ok_or_else(|| Error::Signature("empty input list".into()))?;
    for x in xs {
        if x.top() != top {
            return Err(Error::TruncationMismatch(top, x.top()));
        }
    }
    Ok(top)
}

/// Degreewise disjoint union, with the injections.
pub fn coproduct(xs: &[&SSet]) -> Result<(SSet, Vec<LevelMap>)> {
    let top = same_top(xs)?;
    let offsets: Vec<Vec<usize>> = (0..=top)
        .map(|n| {
            let mut acc = 0;
            xs.iter()
                .map(|x| {
                    let o = acc;
                    acc += x.count(n);
                    o
                })
                .collect()
        })
        .collect();
    let counts: Vec<usize> = (0..=top).map(|n| xs.iter().map(|x| x.count(n)).sum()).collect();
    // which summand each simplex belongs to
    let owner: Vec<Vec<(usize, usize)>> = (0..=top)
        .map(|n| {
            xs.iter()
                .enumerate()
                .flat_map(|(k, x)| (0..x.count(n)).map(move |s| (k, s)))
                .collect()
        })
        .collect();
    let sum = SSet::build(
        top,
        counts,
        |n, i, s| {
            let (k, local) = owner[n][s];
            offsets[n - 1][k] + xs[k].face(n, i, local)
        },
        |n, i, s| {
            let (k, local) = owner[n][s];
            offsets[n + 1][k] + xs[k].degen(n, i, local)
        },
    );
    let labels = (0..=top)
        .map(|n| owner[n].iter().map(|&(k, s)| format!("{k}:{}", xs[k].label(n, s))).collect())
        .collect();
    let injections = xs
        .iter()
        .enumerate()
        .map(|(k, x)| LevelMap((0..=top).map(|n| (0..x.count(n)).map(|s| offsets[n][k] + s).collect()).collect()))
        .collect();
    Ok((sum.with_labels(labels), injections))
}

/// Coproduct of G-simplicial sets acted on by the same group.
pub fn coproduct_g(xs: &[&GSSet]) -> Result<(GSSet, Vec<LevelMap>)> {
    let group = xs.first().ok_or_else(|| Error::Signature("empty input list".into()))?.group.clone();
    if xs.iter().any(|x| x.group != group) {
        return Err(Error::Signature("coproduct of spaces with different acting groups".into()));
    }
    let spaces: Vec<&SSet> = xs.iter().map(|x| x.space.as_ref()).collect();
    let (sum, inj) = coproduct(&spaces)?;
    let action = group
        .elements()
        .map(|g| {
            let mut levels: Vec<Vec<usize>> = (0..=sum.top()).map(|n| vec![0; sum.count(n)]).collect();
            for (k, x) in xs.iter().enumerate() {
                for (n, level) in levels.iter_mut().enumerate() {
                    for s in 0..x.space.count(n) {
                        level[inj[k].apply(n, s)] = inj[k].apply(n, x.act(g, n, s));
                    }
                }
            }
            LevelMap(levels)
        })
        .collect();
    Ok((GSSet::from_parts(Arc::new(sum), group, action)?, inj))
}

/// Degreewise cartesian product; `(a, b)` has index `a * |Y_n| + b`.
pub fn product(x: &SSet, y: &SSet) -> Result<(SSet, LevelMap, LevelMap)> {
    let top = same_top(&[x, y])?;
    let counts = (0..=top).map(|n| x.count(n) * y.count(n)).collect();
    let p = SSet::build(
        top,
        counts,
        |n, i, s| {
            let (a, b) = (s / y.count(n), s % y.count(n));
            x.face(n, i, a) * y.count(n - 1) + y.face(n, i, b)
        },
        |n, i, s| {
            let (a, b) = (s / y.count(n), s % y.count(n));
            x.degen(n, i, a) * y.count(n + 1) + y.degen(n, i, b)
        },
    );
    let labels = (0..=top)
        .map(|n| {
            (0..p.count(n))
                .map(|s| format!("({},{})", x.label(n, s / y.count(n)), y.label(n, s % y.count(n))))
                .collect()
        })
        .collect();
    let p1 = LevelMap((0..=top).map(|n| (0..p.count(n)).map(|s| s / y.count(n)).collect()).collect());
    let p2 = LevelMap((0..=top).map(|n| (0..p.count(n)).map(|s| s % y.count(n)).collect()).collect());
    Ok((p.with_labels(labels), p1, p2))
}

/// Product with the diagonal action.
pub fn product_g(x: &GSSet, y: &GSSet) -> Result<(GSSet, LevelMap, LevelMap)> {
    if x.group != y.group {
        return Err(Error::Signature("product of spaces with different acting groups".into()));
    }
    let (p, p1, p2) = product(&x.space, &y.space)?;
    let action = x
        .group
        .elements()
        .map(|g| {
            LevelMap(
                (0..=p.top())
                    .map(|n| {
                        let ny = y.space.count(n);
                        (0..p.count(n)).map(|s| x.act(g, n, s / ny) * ny + y.act(g, n, s % ny)).collect()
                    })
                    .collect(),
            )
        })
        .collect();
    Ok((GSSet::from_parts(Arc::new(p), x.group.clone(), action)?, p1, p2))
}

/// `f × g : X × Y → X' × Y'`, given the second factors `Y` and `Y'`.
pub fn product_map(f: &LevelMap, g: &LevelMap, y: &SSet, y2: &SSet) -> LevelMap {
    LevelMap(
        (0..f.0.len())
            .map(|n| {
                let ny = y.count(n);
                let ny2 = y2.count(n);
                (0..f.0[n].len() * ny).map(|s| f.apply(n, s / ny) * ny2 + g.apply(n, s % ny)).collect()
            })
            .collect(),
    )
}

/// Nondegenerate simplices in each degree.
pub fn nondegenerate(x: &SSet) -> Vec<Vec<usize>> {
    (0..=x.top())
        .map(|n| {
            x.degenerate_flags(n)
                .iter()
                .enumerate()
                .filter(|(_, &d)| !d)
                .map(|(s, _)| s)
                .collect()
        })
        .collect()
}

/// The simplicial subset of simplices fixed by every element of `h`, with
/// its inclusion.
pub fn fixed_subcomplex(x: &GSSet, h: &Subgroup) -> Result<(SSet, LevelMap)> {
    if h.parent() != &x.group {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    let sp = &x.space;
    let kept: Vec<Vec<usize>> = (0..=sp.top())
        .map(|n| (0..sp.count(n)).filter(|&s| h.elements().iter().all(|&g| x.act(g, n, s) == s)).collect())
        .collect();
    let position: Vec<Vec<usize>> = (0..=sp.top())
        .map(|n| {
            let mut pos = vec![usize::MAX; sp.count(n)];
            for (i, &s) in kept[n].iter().enumerate() {
                pos[s] = i;
            }
            pos
        })
        .collect();
    let counts = kept.iter().map(Vec::len).collect();
    let sub = SSet::build(
        sp.top(),
        counts,
        |n, i, s| position[n - 1][sp.face(n, i, kept[n][s])],
        |n, i, s| position[n + 1][sp.degen(n, i, kept[n][s])],
    );
    let labels = kept.iter().enumerate().map(|(n, l)| l.iter().map(|&s| sp.label(n, s)).collect()).collect();
    Ok((sub.with_labels(labels), LevelMap(kept)))
}

/// Restriction of an equivariant map to the `h`-fixed subcomplexes.
pub fn fixed_map(
    f: &LevelMap,
    source_inclusion: &LevelMap,
    target: &SSet,
    target_inclusion: &LevelMap,
) -> LevelMap {
    LevelMap(
        source_inclusion
            .0
            .iter()
            .enumerate()
            .map(|(n, kept)| {
                let mut pos = vec![usize::MAX; target.count(n)];
                for (i, &s) in target_inclusion.0[n].iter().enumerate() {
                    pos[s] = i;
                }
                kept.iter().map(|&s| pos[f.apply(n, s)]).collect()
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoFailure {
    pub degree: usize,
    pub reason: String,
    pub simplex: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub is_iso: bool,
    pub failure: Option<IsoFailure>,
}

/// Degreewise bijectivity, plus equivariance when the actions are given.
pub fn is_isomorphism(f: &SimplicialMap, actions: Option<(&GSSet, &GSSet)>) -> IsoVerdict {
    let fail = |degree, reason: &str, simplex| IsoVerdict {
        is_iso: false,
        failure: Some(IsoFailure { degree, reason: reason.into(), simplex }),
    };
    let (x, y) = (&f.source, &f.target);
    for n in 0..=x.top() {
        if x.count(n) != y.count(n) {
            return fail(n, &format!("{} source simplices vs {} target simplices", x.count(n), y.count(n)), None);
        }
        let mut hit = vec![false; y.count(n)];
        for s in 0..x.count(n) {
            let t = f.apply(n, s);
            if hit[t] {
                return fail(n, "not injective", Some(x.label(n, s)));
            }
            hit[t] = true;
        }
    }
    if let Some((gx, gy)) = actions {
        let report = GSSet::equivariance_violations(gx, gy, &f.levels);
        if let Some(v) = report.violations.first() {
            return fail(0, &format!("not equivariant: {}", v.location), None);
        }
    }
    IsoVerdict { is_iso: true, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::FinGroup;

    #[test]
    fn coproduct_of_two_points() {
        let p = SSet::point(2);
        let (s, inj) = coproduct(&[&p, &p]).unwrap();
        assert_eq!(s.counts(), &[2, 2, 2]);
        assert!(s.validate().is_valid());
        assert_eq!(nondegenerate(&s), vec![vec![0, 1], vec![], vec![]]);
        assert_eq!(inj[1].apply(0, 0), 1);
    }

    #[test]
    fn point_times_x_is_x() {
        let x = SSet::standard(2, 3);
        let (p, _, proj) = product(&SSet::point(3), &x).unwrap();
        let f = SimplicialMap::new(Arc::new(p), Arc::new(x), proj).unwrap();
        assert!(is_isomorphism(&f, None).is_iso);
    }

    #[test]
    fn square_has_two_nondegenerate_triangles() {
        let d1 = SSet::standard(1, 2);
        let (sq, _, _) = product(&d1, &d1).unwrap();
        assert!(sq.validate().is_valid());
        let nd = nondegenerate(&sq);
        assert_eq!(nd[0].len(), 4);
        assert_eq!(nd[1].len(), 5);
        assert_eq!(nd[2].len(), 2);
    }

    #[test]
    fn nondegenerate_counts() {
        let nd = nondegenerate(&SSet::standard(1, 3));
        assert_eq!(nd.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 1, 0, 0]);
        let nd = nondegenerate(&SSet::point(3));
        assert_eq!(nd.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn fixed_points_of_a_swap() {
        let space = Arc::new(SSet::discrete(2, 2));
        let group = Arc::new(FinGroup::cyclic(2));
        let swap = LevelMap(vec![vec![1, 0]; 3]);
        let x = GSSet::new(space.clone(), group.clone(), vec![LevelMap::identity(&space), swap]).unwrap();
        let (whole, _) = fixed_subcomplex(&x, &Subgroup::whole(group.clone())).unwrap();
        assert!(whole.is_empty());
        let (triv, inc) = fixed_subcomplex(&x, &Subgroup::trivial(group)).unwrap();
        assert_eq!(triv, SSet::discrete(2, 2).with_labels(triv.labels().unwrap().clone()));
        assert_eq!(inc, LevelMap::identity(&space));
        let other = Subgroup::trivial(Arc::new(FinGroup::cyclic(3)));
        assert!(matches!(fixed_subcomplex(&x, &other), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn point_into_interval_is_not_iso() {
        let p = Arc::new(SSet::point(2));
        let d1 = Arc::new(SSet::standard(1, 2));
        let f = SimplicialMap::new(p, d1, LevelMap(vec![vec![0], vec![0], vec![0]])).unwrap();
        let v = is_isomorphism(&f, None);
        assert!(!v.is_iso);
        assert_eq!(v.failure.unwrap().degree, 0);
        let id = SimplicialMap::identity(Arc::new(SSet::standard(2, 2)));
        assert!(is_isomorphism(&id, None).is_iso);
    }

    #[test]
    fn truncation_mismatch_rejected() {
        assert!(matches!(
            product(&SSet::point(2), &SSet::point(3)),
            Err(Error::TruncationMismatch(2, 3))
        ));
    }
}
