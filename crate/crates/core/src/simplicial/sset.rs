use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::report::ValidationReport;

/// Default truncation degree.
pub const DEFAULT_TRUNCATION: usize = 4;

/// A degreewise-finite simplicial set stored up to degree `top`.
///
/// Simplices are abstract ids `0..count(n)` in each degree. Faces are stored
/// for degrees `1..=top`, degeneracies for degrees `0..top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSet {
    top: usize,
    counts: Vec<usize>,
    /// `faces[n][i][s]` is `d_i s` for `s` of degree `n >= 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i][s]` is `s_i s` for `s` of degree `n < top`.
    degens: Vec<Vec<Vec<usize>>>,
    labels: Option<Vec<Vec<String>>>,
}

impl SSet {
    /// Builds from explicit tables after checking their shape.
    pub fn from_tables(
        top: usize,
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if counts.len() != top + 1 {
            return Err(Error::Format(format!("{} degree counts for truncation {top}", counts.len())));
        }
        if faces.len() != top + 1 || degens.len() != top + 1 {
            return Err(Error::Format("face/degeneracy tables must cover degrees 0..=top".into()));
        }
        for n in 0..=top {
            let want_faces = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != want_faces {
                return Err(Error::Format(format!("degree {n} has {} face maps, expected {want_faces}", faces[n].len())));
            }
            for (i, table) in faces[n].iter().enumerate() {
                if table.len() != counts[n] || table.iter().any(|&s| s >= counts[n - 1]) {
                    return Err(Error::Format(format!("face d_{i} on degree {n} has wrong length or range")));
                }
            }
            let want_degens = if n < top { n + 1 } else { 0 };
            if degens[n].len() != want_degens {
                return Err(Error::Format(format!(
                    "degree {n} has {} degeneracy maps, expected {want_degens}",
                    degens[n].len()
                )));
            }
            for (i, table) in degens[n].iter().enumerate() {
                if table.len() != counts[n] || table.iter().any(|&s| s >= counts[n + 1]) {
                    return Err(Error::Format(format!("degeneracy s_{i} on degree {n} has wrong length or range")));
                }
            }
        }
        Ok(Self { top, counts, faces, degens, labels: None })
    }

    /// Builds the tables from closures over `(degree, index, simplex)`.
    pub fn build(
        top: usize,
        counts: Vec<usize>,
        face: impl Fn(usize, usize, usize) -> usize + Sync + Send,
        degen: impl Fn(usize, usize, usize) -> usize + Sync + Send,
    ) -> Self {
        assert_eq!(counts.len(), top + 1);
        let faces = (0..=top)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n).map(|i| par::map_range_auto(counts[n], |s| face(n, i, s))).collect()
            })
            .collect();
        let degens = (0..=top)
            .map(|n| {
                if n == top {
                    return Vec::new();
                }
                (0..=n).map(|i| par::map_range_auto(counts[n], |s| degen(n, i, s))).collect()
            })
            .collect();
        Self { top, counts, faces, degens, labels: None }
    }

    /// The same simplicial set stored only up to degree `k <= top`.
    pub fn truncated(&self, k: usize) -> Result<Self> {
        if k > self.top {
            return Err(Error::TruncationMismatch(k, self.top));
        }
        let faces = self.faces[..=k].to_vec();
        let mut degens = self.degens[..=k].to_vec();
        degens[k] = Vec::new();
        let labels = self.labels.as_ref().map(|l| l[..=k].to_vec());
        Ok(Self { top: k, counts: self.counts[..=k].to_vec(), faces, degens, labels })
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        debug_assert!(labels.iter().zip(&self.counts).all(|(l, &c)| l.len() == c));
        self.labels = Some(labels);
        self
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn face(&self, n: usize, i: usize, s: usize) -> usize {
        self.faces[n][i][s]
    }

    pub fn degen(&self, n: usize, i: usize, s: usize) -> usize {
        self.degens[n][i][s]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degen_table(&self, n: usize, i: usize) -> &[usize] {
        &self.degens[n][i]
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn label(&self, n: usize, s: usize) -> String {
        match &self.labels {
            Some(l) => l[n][s].clone(),
            None => format!("#{s}"),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts[0] == 0
    }

    /// The point: one simplex in every degree.
    pub fn point(top: usize) -> Self {
        Self::discrete(top, 1)
    }

    /// A set viewed as a simplicial set: the same elements in every degree,
    /// all structure maps identities.
    pub fn discrete(top: usize, elements: usize) -> Self {
        Self::build(top, vec![elements; top + 1], |_, _, s| s, |_, _, s| s)
    }

    pub fn empty(top: usize) -> Self {
        Self::discrete(top, 0)
    }

    /// The standard simplex Δ^k.
    pub fn standard(k: usize, top: usize) -> Self {
        Self::from_sequences(k, top, |_| true)
    }

    /// The boundary ∂Δ^k: non-surjective sequences.
    pub fn boundary(k: usize, top: usize) -> Self {
        Self::from_sequences(k, top, |seq| (0..=k).any(|v| !seq.contains(&v)))
    }

    /// Simplicial subset of Δ^k whose n-simplices are the nondecreasing
    /// sequences of length n+1 in [0, k] accepted by `keep` (which must be
    /// closed under deleting and repeating entries).
    fn from_sequences(k: usize, top: usize, keep: impl Fn(&[usize]) -> bool) -> Self {
        let levels: Vec<Vec<Vec<usize>>> = (0..=top)
            .map(|n| nondecreasing(n + 1, k).into_iter().filter(|s| keep(s)).collect())
            .collect();
        let index: Vec<std::collections::HashMap<Vec<usize>, usize>> = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let counts = levels.iter().map(Vec::len).collect();
        let labels = levels
            .iter()
            .map(|l| l.iter().map(|s| format!("{s:?}")).collect())
            .collect();
        Self::build(
            top,
            counts,
            |n, i, s| {
                let mut seq = levels[n][s].clone();
                seq.remove(i);
                index[n - 1][&seq]
            },
            |n, i, s| {
                let mut seq = levels[n][s].clone();
                seq.insert(i, seq[i]);
                index[n + 1][&seq]
            },
        )
        .with_labels(labels)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        check_identities(
            self.top,
            &self.counts,
            |n, i, s| self.face(n, i, s),
            |n, i, s| self.degen(n, i, s),
            &mut report,
            "",
        );
        report
    }

    /// A simplex is degenerate iff it is `s_i` of something in degree n-1.
    pub fn degenerate_flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; self.counts[n]];
        if n > 0 {
            for table in &self.degens[n - 1] {
                for &s in table {
                    flags[s] = true;
                }
            }
        }
        flags
    }
}

/// All nondecreasing sequences of the given length with entries in [0, k].
fn nondecreasing(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(cur: &mut Vec<usize>, len: usize, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=k {
            cur.push(v);
            rec(cur, len, k, out);
            cur.pop();
        }
    }
    rec(&mut cur, len, k, &mut out);
    out
}

/// Checks every simplicial identity that fits below `top`.
pub(crate) fn check_identities(
    top: usize,
    counts: &[usize],
    face: impl Fn(usize, usize, usize) -> usize,
    degen: impl Fn(usize, usize, usize) -> usize,
    report: &mut ValidationReport,
    context: &str,
) {
    for n in 2..=top {
        for s in 0..counts[n] {
            for j in 1..=n {
                for i in 0..j {
                    if face(n - 1, i, face(n, j, s)) != face(n - 1, j - 1, face(n, i, s)) {
                        report.push(
                            format!("d_{i} d_{j} = d_{} d_{i}", j - 1),
                            format!("{context}degree {n}, simplex {s}"),
                        );
                    }
                }
            }
        }
    }
    for n in 0..top {
        for s in 0..counts[n] {
            for j in 0..=n {
                let sj = degen(n, j, s);
                for i in 0..=n + 1 {
                    let lhs = face(n + 1, i, sj);
                    let (rhs, rule) = if i < j {
                        (degen(n - 1, j - 1, face(n, i, s)), format!("d_{i} s_{j} = s_{} d_{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (s, format!("d_{i} s_{j} = id"))
                    } else {
                        (degen(n - 1, j, face(n, i - 1, s)), format!("d_{i} s_{j} = s_{j} d_{}", i - 1))
                    };
                    if lhs != rhs {
                        report.push(rule, format!("{context}degree {n}, simplex {s}"));
                    }
                }
                if n + 1 < top {
                    for i in 0..=j {
                        if degen(n + 1, i, sj) != degen(n + 1, j + 1, degen(n, i, s)) {
                            report.push(
                                format!("s_{i} s_{j} = s_{} s_{i}", j + 1),
                                format!("{context}degree {n}, simplex {s}"),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// A per-degree function on simplex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LevelMap(pub Vec<Vec<usize>>);

impl LevelMap {
    pub fn identity(x: &SSet) -> Self {
        LevelMap((0..=x.top()).map(|n| (0..x.count(n)).collect()).collect())
    }

    /// Everything to the unique simplex of the point.
    pub fn to_point(x: &SSet) -> Self {
        LevelMap((0..=x.top()).map(|n| vec![0; x.count(n)]).collect())
    }

    pub fn apply(&self, n: usize, s: usize) -> usize {
        self.0[n][s]
    }

    /// The first `k + 1` degrees.
    pub fn truncated(&self, k: usize) -> Self {
        LevelMap(self.0[..=k].to_vec())
    }

    pub fn level(&self, n: usize) -> &[usize] {
        &self.0[n]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LevelMap) -> LevelMap {
        LevelMap(
            first
                .0
                .iter()
                .enumerate()
                .map(|(n, l)| l.iter().map(|&s| self.0[n][s]).collect())
                .collect(),
        )
    }

    pub fn check_shape(&self, source: &SSet, target: &SSet) -> Result<()> {
        if source.top() != target.top() {
            return Err(Error::TruncationMismatch(source.top(), target.top()));
        }
        if self.0.len() != source.top() + 1 {
            return Err(Error::Format("map has the wrong number of degrees".into()));
        }
        for n in 0..=source.top() {
            if self.0[n].len() != source.count(n) || self.0[n].iter().any(|&s| s >= target.count(n)) {
                return Err(Error::Format(format!("map level {n} has wrong length or range")));
            }
        }
        Ok(())
    }

    /// Commutation with every face and degeneracy.
    pub fn validate(&self, source: &SSet, target: &SSet) -> ValidationReport {
        let mut report = ValidationReport::new();
        if let Err(e) = self.check_shape(source, target) {
            report.push("map shape", e.to_string());
            return report;
        }
        for n in 0..=source.top() {
            for s in 0..source.count(n) {
                let fs = self.apply(n, s);
                if n > 0 {
                    for i in 0..=n {
                        if self.apply(n - 1, source.face(n, i, s)) != target.face(n, i, fs) {
                            report.push(format!("map does not commute with d_{i}"), format!("degree {n}, simplex {s}"));
                        }
                    }
                }
                if n < source.top() {
                    for i in 0..=n {
                        if self.apply(n + 1, source.degen(n, i, s)) != target.degen(n, i, fs) {
                            report.push(format!("map does not commute with s_{i}"), format!("degree {n}, simplex {s}"));
                        }
                    }
                }
            }
        }
        report
    }

    pub fn is_bijective_onto(&self, target: &SSet) -> bool {
        self.0.iter().enumerate().all(|(n, l)| l.len() == target.count(n) && crate::algebra::action::is_permutation(l))
    }
}

/// A map of simplicial sets with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: Arc<SSet>,
    pub target: Arc<SSet>,
    pub levels: LevelMap,
}

impl SimplicialMap {
    pub fn new(source: Arc<SSet>, target: Arc<SSet>, levels: LevelMap) -> Result<Self> {
        levels.check_shape(&source, &target)?;
        let m = Self { source, target, levels };
        m.validate().into_result()?;
        Ok(m)
    }

    /// Skips the commutation check; for maps built by trusted constructions.
    pub fn new_unchecked(source: Arc<SSet>, target: Arc<SSet>, levels: LevelMap) -> Self {
        Self { source, target, levels }
    }

    pub fn identity(x: Arc<SSet>) -> Self {
        let levels = LevelMap::identity(&x);
        Self { source: x.clone(), target: x, levels }
    }

    pub fn apply(&self, n: usize, s: usize) -> usize {
        self.levels.apply(n, s)
    }

    pub fn validate(&self) -> ValidationReport {
        self.levels.validate(&self.source, &self.target)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target != self.source {
            return Err(Error::Signature("composed maps do not share an endpoint".into()));
        }
        Ok(SimplicialMap {
            source: first.source.clone(),
            target: self.target.clone(),
            levels: self.levels.after(&first.levels),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_one_simplex_counts() {
        let d1 = SSet::standard(1, 2);
        assert_eq!(d1.counts(), &[2, 3, 4]);
        assert!(d1.validate().is_valid());
    }

    #[test]
    fn boundary_of_two_simplex() {
        let b = SSet::boundary(2, 3);
        assert_eq!(b.count(0), 3);
        // six nondecreasing pairs minus none surjective-onto-{0,1,2}
        assert_eq!(b.count(1), 6);
        assert!(b.validate().is_valid());
    }

    #[test]
    fn corrupted_face_is_located() {
        let d2 = SSet::standard(2, 2);
        let mut faces = d2.faces.clone();
        // swap d_0 on the nondegenerate 2-simplex [0,1,2] (its id is the last one)
        let top_simplex = d2.labels().unwrap()[2].iter().position(|l| l == "[0, 1, 2]").unwrap();
        let other = faces[2][0][top_simplex];
        faces[2][0][top_simplex] = faces[2][1][top_simplex];
        assert_ne!(other, faces[2][0][top_simplex]);
        let bad = SSet::from_tables(2, d2.counts.clone(), faces, d2.degens.clone()).unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.location == format!("degree 2, simplex {top_simplex}")));
    }

    #[test]
    fn table_shape_errors_are_format_errors() {
        let p = SSet::point(1);
        let r = SSet::from_tables(1, vec![1, 1], vec![vec![], vec![vec![0]]], p.degens.clone());
        assert!(matches!(r, Err(Error::Format(_))));
    }

    #[test]
    fn point_includes_into_interval() {
        let p = Arc::new(SSet::point(2));
        let d1 = Arc::new(SSet::standard(1, 2));
        let levels = LevelMap(vec![vec![0], vec![0], vec![0]]);
        let f = SimplicialMap::new(p, d1, levels).unwrap();
        assert!(f.validate().is_valid());
    }
}
