use std::sync::Arc;

use crate::algebra::group::FinGroup;
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::simplicial::gsset::GSSet;
use crate::simplicial::sset::{check_identities, LevelMap, SSet};

type Table = Vec<Vec<usize>>;

/// A bisimplicial set truncated at bidegree `(top_h, top_v)`.
///
/// The horizontal direction varies `m`, the vertical one varies `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSSet {
    top_h: usize,
    top_v: usize,
    counts: Vec<Vec<usize>>,
    /// `[m][n][i][s]`, present for `m >= 1`.
    hface: Vec<Vec<Table>>,
    /// present for `n >= 1`.
    vface: Vec<Vec<Table>>,
    /// present for `m < top_h`.
    hdegen: Vec<Vec<Table>>,
    /// present for `n < top_v`.
    vdegen: Vec<Vec<Table>>,
    /// `[g][m][n][s]`, when a group acts.
    action: Option<(Arc<FinGroup>, Vec<Vec<Vec<Vec<usize>>>>)>,
}

/// Closures describing one bisimplicial set, used by [`BiSSet::build`].
pub struct BiSSetSpec<C, HF, VF, HD, VD> {
    pub top_h: usize,
    pub top_v: usize,
    pub count: C,
    pub hface: HF,
    pub vface: VF,
    pub hdegen: HD,
    pub vdegen: VD,
}

impl BiSSet {
    pub fn build<C, HF, VF, HD, VD>(spec: BiSSetSpec<C, HF, VF, HD, VD>) -> Self
    where
        C: Fn(usize, usize) -> usize,
        HF: Fn(usize, usize, usize, usize) -> usize,
        VF: Fn(usize, usize, usize, usize) -> usize,
        HD: Fn(usize, usize, usize, usize) -> usize,
        VD: Fn(usize, usize, usize, usize) -> usize,
    {
        let (th, tv) = (spec.top_h, spec.top_v);
        let counts: Vec<Vec<usize>> = (0..=th).map(|m| (0..=tv).map(|n| (spec.count)(m, n)).collect()).collect();
        let grid = |present: &dyn Fn(usize, usize) -> usize, f: &dyn Fn(usize, usize, usize, usize) -> usize| {
            (0..=th)
                .map(|m| {
                    (0..=tv)
                        .map(|n| (0..present(m, n)).map(|i| (0..counts[m][n]).map(|s| f(m, n, i, s)).collect()).collect())
                        .collect()
                })
                .collect::<Vec<Vec<Table>>>()
        };
        let hface = grid(&|m, _| if m == 0 { 0 } else { m + 1 }, &spec.hface);
        let vface = grid(&|_, n| if n == 0 { 0 } else { n + 1 }, &spec.vface);
        let hdegen = grid(&|m, _| if m < th { m + 1 } else { 0 }, &spec.hdegen);
        let vdegen = grid(&|_, n| if n < tv { n + 1 } else { 0 }, &spec.vdegen);
        Self { top_h: th, top_v: tv, counts, hface, vface, hdegen, vdegen, action: None }
    }

    pub fn with_action(mut self, group: Arc<FinGroup>, act: impl Fn(usize, usize, usize, usize) -> usize) -> Self {
        let tables = group
            .elements()
            .map(|g| {
                (0..=self.top_h)
                    .map(|m| (0..=self.top_v).map(|n| (0..self.counts[m][n]).map(|s| act(g, m, n, s)).collect()).collect())
                    .collect()
            })
            .collect();
        self.action = Some((group, tables));
        self
    }

    pub fn tops(&self) -> (usize, usize) {
        (self.top_h, self.top_v)
    }

    pub fn count(&self, m: usize, n: usize) -> usize {
        self.counts[m][n]
    }

    pub fn hface(&self, m: usize, n: usize, i: usize, s: usize) -> usize {
        self.hface[m][n][i][s]
    }

    pub fn vface(&self, m: usize, n: usize, i: usize, s: usize) -> usize {
        self.vface[m][n][i][s]
    }

    pub fn hdegen(&self, m: usize, n: usize, i: usize, s: usize) -> usize {
        self.hdegen[m][n][i][s]
    }

    pub fn vdegen(&self, m: usize, n: usize, i: usize, s: usize) -> usize {
        self.vdegen[m][n][i][s]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (th, tv) = (self.top_h, self.top_v);
        for n in 0..=tv {
            let counts: Vec<usize> = (0..=th).map(|m| self.counts[m][n]).collect();
            check_identities(
                th,
                &counts,
                |m, i, s| self.hface(m, n, i, s),
                |m, i, s| self.hdegen(m, n, i, s),
                &mut report,
                &format!("horizontal, vertical degree {n}, "),
            );
        }
        for m in 0..=th {
            check_identities(
                tv,
                &self.counts[m],
                |n, i, s| self.vface(m, n, i, s),
                |n, i, s| self.vdegen(m, n, i, s),
                &mut report,
                &format!("vertical, horizontal degree {m}, "),
            );
        }
        // horizontal and vertical structure maps commute
        for m in 0..=th {
            for n in 0..=tv {
                for s in 0..self.counts[m][n] {
                    let loc = || format!("bidegree ({m},{n}), simplex {s}");
                    for i in 0..if m == 0 { 0 } else { m + 1 } {
                        for j in 0..if n == 0 { 0 } else { n + 1 } {
                            if self.vface(m - 1, n, j, self.hface(m, n, i, s)) != self.hface(m, n - 1, i, self.vface(m, n, j, s)) {
                                report.push(format!("horizontal d_{i} and vertical d_{j} do not commute"), loc());
                            }
                        }
                        if n < tv {
                            for j in 0..=n {
                                if self.vdegen(m - 1, n, j, self.hface(m, n, i, s)) != self.hface(m, n + 1, i, self.vdegen(m, n, j, s)) {
                                    report.push(format!("horizontal d_{i} and vertical s_{j} do not commute"), loc());
                                }
                            }
                        }
                    }
                    if m < th {
                        for i in 0..=m {
                            for j in 0..if n == 0 { 0 } else { n + 1 } {
                                if self.vface(m + 1, n, j, self.hdegen(m, n, i, s)) != self.hdegen(m, n - 1, i, self.vface(m, n, j, s)) {
                                    report.push(format!("horizontal s_{i} and vertical d_{j} do not commute"), loc());
                                }
                            }
                            if n < tv {
                                for j in 0..=n {
                                    if self.vdegen(m + 1, n, j, self.hdegen(m, n, i, s)) != self.hdegen(m, n + 1, i, self.vdegen(m, n, j, s)) {
                                        report.push(format!("horizontal s_{i} and vertical s_{j} do not commute"), loc());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some((group, act)) = &self.action {
            for g in group.elements() {
                for m in 0..=th {
                    for n in 0..=tv {
                        for s in 0..self.counts[m][n] {
                            let gs = act[g][m][n][s];
                            let loc = || format!("element {g}, bidegree ({m},{n}), simplex {s}");
                            if m > 0 {
                                for i in 0..=m {
                                    if act[g][m - 1][n][self.hface(m, n, i, s)] != self.hface(m, n, i, gs) {
                                        report.push("action does not commute with horizontal faces", loc());
                                    }
                                }
                            }
                            if n > 0 {
                                for j in 0..=n {
                                    if act[g][m][n - 1][self.vface(m, n, j, s)] != self.vface(m, n, j, gs) {
                                        report.push("action does not commute with vertical faces", loc());
                                    }
                                }
                            }
                            for h in group.elements() {
                                if act[group.mul(g, h)][m][n][s] != act[g][m][n][act[h][m][n][s]] {
                                    report.push("action is not a homomorphism", loc());
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// The diagonal simplicial set: degree n is bidegree (n, n), with
    /// `d_i = d_i^h d_i^v` and `s_i = s_i^h s_i^v`.
    pub fn diagonal(&self) -> Result<SSet> {
        if self.top_h != self.top_v {
            return Err(Error::TruncationMismatch(self.top_h, self.top_v));
        }
        let top = self.top_h;
        let counts = (0..=top).map(|n| self.counts[n][n]).collect();
        Ok(SSet::build(
            top,
            counts,
            |n, i, s| self.hface(n, n - 1, i, self.vface(n, n, i, s)),
            |n, i, s| self.hdegen(n, n + 1, i, self.vdegen(n, n, i, s)),
        ))
    }

    /// The diagonal with the inherited action, when a group acts.
    pub fn diagonal_g(&self) -> Result<GSSet> {
        let space = Arc::new(self.diagonal()?);
        let (group, act) = self
            .action
            .as_ref()
            .ok_or_else(|| Error::Signature("bisimplicial set carries no action".into()))?;
        let action = group
            .elements()
            .map(|g| LevelMap((0..=self.top_h).map(|n| act[g][n][n].clone()).collect()))
            .collect();
        GSSet::from_parts(space, group.clone(), action)
    }

    /// The bisimplicial set constant in the horizontal direction.
    pub fn constant_horizontal(x: &SSet) -> Self {
        let top = x.top();
        Self::build(BiSSetSpec {
            top_h: top,
            top_v: top,
            count: |_, n| x.count(n),
            hface: |_, _, _, s| s,
            vface: |_, n, j, s| x.face(n, j, s),
            hdegen: |_, _, _, s| s,
            vdegen: |_, n, j, s| x.degen(n, j, s),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::ops::is_isomorphism;
    use crate::simplicial::sset::SimplicialMap;

    #[test]
    fn constant_direction_diagonal_is_the_other_direction() {
        let x = SSet::standard(2, 3);
        let b = BiSSet::constant_horizontal(&x);
        assert!(b.validate().is_valid());
        let d = b.diagonal().unwrap();
        let f = SimplicialMap::new(Arc::new(d), Arc::new(x.clone()), LevelMap::identity(&x)).unwrap();
        assert!(is_isomorphism(&f, None).is_iso);
    }

    #[test]
    fn diagonal_needs_equal_truncations() {
        let x = SSet::point(1);
        let b = BiSSet::build(BiSSetSpec {
            top_h: 2,
            top_v: 1,
            count: |_, n| x.count(n),
            hface: |_, _, _, s| s,
            vface: |_, n, j, s| x.face(n, j, s),
            hdegen: |_, _, _, s| s,
            vdegen: |_, n, j, s| x.degen(n, j, s),
        });
        assert!(matches!(b.diagonal(), Err(Error::TruncationMismatch(2, 1))));
    }
}
