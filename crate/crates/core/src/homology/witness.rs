//! The fixed-point homology witness for equivariant maps: for every
//! subgroup `H`, the restriction `f^H: X^H → Y^H` must induce isomorphisms
//! on homology below the truncation. Passing is consistent with `f` being
//! a G-homotopy equivalence; it does not prove it.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::group::{subgroups, Subgroup};
use crate::error::{Error, Result};
use crate::homology::complex::ChainComplex;
use crate::homology::field::{homology, induced_iso_complexes, Coefficients, DegreeHomology, HomologyProfile};
use crate::par::{self, Exec};
use crate::simplicial::gsset::GSSet;
use crate::simplicial::ops::{fixed_map, fixed_subcomplex};
use crate::simplicial::sset::SimplicialMap;

pub const CAVEAT: &str =
    "homology is exact through degree top-1 only; a pass is consistent with a G-homotopy equivalence, not a proof";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientVerdict {
    pub coefficients: Coefficients,
    /// One entry per degree `0..top`.
    pub degrees: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupWitness {
    pub subgroup: Vec<usize>,
    pub source: Vec<HomologyProfile>,
    pub target: Vec<HomologyProfile>,
    pub verdicts: Vec<CoefficientVerdict>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub subgroup: Vec<usize>,
    pub coefficients: Coefficients,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitnessReport {
    pub subgroups: Vec<SubgroupWitness>,
    pub pass: bool,
    pub first_failure: Option<Failure>,
    pub truncation: usize,
    pub caveat: String,
}

/// Runs the witness over every subgroup of the acting group, in parallel
/// when `exec` asks for it. `coefficients` should not contain
/// [`Coefficients::Integers`]: the integral verdict is the conjunction of
/// the field verdicts.
pub fn g_equivalence_witness(
    f: &SimplicialMap,
    source: &GSSet,
    target: &GSSet,
    coefficients: &[Coefficients],
    max_group_order: usize,
    exec: Exec,
) -> Result<EquivalenceWitnessReport> {
    if !Arc::ptr_eq(&f.source, &source.space) && f.source != source.space {
        return Err(Error::Signature("map source is not the acting space".into()));
    }
    if let Some(v) = GSSet::equivariance_violations(source, target, &f.levels).violations.first() {
        return Err(Error::NotEquivariant(v.location.clone()));
    }
    let top = source.top();
    if top == 0 {
        return Err(Error::OutOfRange("truncation 0 leaves no degree to check".into()));
    }
    let hs = subgroups(&source.group, max_group_order)?;
    let results = par::map(exec, &hs, |h| witness_at(f, source, target, h, coefficients, exec));
    let subgroups = results.into_iter().collect::<Result<Vec<_>>>()?;
    let first_failure = subgroups.iter().find_map(|w| {
        w.verdicts.iter().find_map(|v| {
            v.degrees.iter().position(|ok| !ok).map(|degree| Failure {
                subgroup: w.subgroup.clone(),
                coefficients: v.coefficients,
                degree,
            })
        })
    });
    Ok(EquivalenceWitnessReport {
        pass: first_failure.is_none(),
        subgroups,
        first_failure,
        truncation: top,
        caveat: CAVEAT.into(),
    })
}

fn witness_at(
    f: &SimplicialMap,
    source: &GSSet,
    target: &GSSet,
    h: &Subgroup,
    coefficients: &[Coefficients],
    exec: Exec,
) -> Result<SubgroupWitness> {
    let (xs, xi) = fixed_subcomplex(source, h)?;
    let (ys, yi) = fixed_subcomplex(target, h)?;
    let levels = fixed_map(&f.levels, &xi, &target.space, &yi);
    let fh = SimplicialMap::new(Arc::new(xs), Arc::new(ys), levels)?;
    let cx = ChainComplex::new(&fh.source);
    let cy = ChainComplex::new(&fh.target);
    let top = cx.top();
    let per_k = par::map(exec, coefficients, |&k| -> Result<_> {
        let c = induced_iso_complexes(&fh, &cx, &cy, k, top - 1)?;
        let (src, tgt) = if k == Coefficients::Integers {
            (homology(&cx, k)?, homology(&cy, k)?)
        } else {
            (profile(k, &c.source), profile(k, &c.target))
        };
        Ok((src, tgt, CoefficientVerdict { coefficients: k, degrees: c.iso }))
    });
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut verdicts = Vec::new();
    for r in per_k {
        let (s, t, v) = r?;
        src.push(s);
        tgt.push(t);
        verdicts.push(v);
    }
    let pass = verdicts.iter().all(|v| v.degrees.iter().all(|&ok| ok));
    Ok(SubgroupWitness { subgroup: h.elements().to_vec(), source: src, target: tgt, verdicts, pass })
}

fn profile(coefficients: Coefficients, betti: &[usize]) -> HomologyProfile {
    let degrees =
        betti.iter().enumerate().map(|(degree, &rank)| DegreeHomology { degree, rank, torsion: Vec::new() }).collect();
    HomologyProfile { coefficients, degrees }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::FinGroup;
    use crate::simplicial::sset::{LevelMap, SSet};

    #[test]
    fn identity_passes() {
        let g = Arc::new(FinGroup::cyclic(2));
        let x = GSSet::trivial(Arc::new(SSet::standard(1, 2)), g);
        let id = SimplicialMap::identity(x.space.clone());
        let r = g_equivalence_witness(&id, &x, &x, &[Coefficients::Rationals], 12, Exec::Sequential).unwrap();
        assert!(r.pass);
        assert_eq!(r.subgroups.len(), 2);
    }

    #[test]
    fn collapsing_swapped_points_fails_at_the_trivial_subgroup() {
        let g = Arc::new(FinGroup::cyclic(2));
        let two = Arc::new(SSet::discrete(2, 2));
        let swap = LevelMap(vec![vec![1, 0]; 3]);
        let x = GSSet::new(two.clone(), g.clone(), vec![LevelMap::identity(&two), swap]).unwrap();
        let y = GSSet::trivial(Arc::new(SSet::point(2)), g);
        let f = SimplicialMap::new(two.clone(), y.space.clone(), LevelMap::to_point(&two)).unwrap();
        let r = g_equivalence_witness(&f, &x, &y, &[Coefficients::Rationals, Coefficients::Prime(2)], 12, Exec::Parallel)
            .unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure, Some(Failure { subgroup: vec![0], coefficients: Coefficients::Rationals, degree: 0 }));
    }
}
