use crate::simplicial::ops::nondegenerate;
use crate::simplicial::sset::{LevelMap, SSet};

/// A sparse column: `(row, coefficient)` sorted by row.
pub type Column = Vec<(usize, i64)>;

/// Normalized chains of a truncated simplicial set.
///
/// `basis[n]` lists the nondegenerate `n`-simplices; `boundary[n]` holds
/// one column per basis element of degree `n`, indexed into `basis[n-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub basis: Vec<Vec<usize>>,
    pub boundary: Vec<Vec<Column>>,
    position: Vec<Vec<Option<usize>>>,
}

impl ChainComplex {
    /// Panics if `∂∂ ≠ 0`, which would mean the input was not simplicial.
    pub fn new(x: &SSet) -> Self {
        let basis = nondegenerate(x);
        let position: Vec<Vec<Option<usize>>> = (0..=x.top())
            .map(|n| {
                let mut pos = vec![None; x.count(n)];
                for (i, &s) in basis[n].iter().enumerate() {
                    pos[s] = Some(i);
                }
                pos
            })
            .collect();
        let boundary = (0..=x.top())
            .map(|n| {
                basis[n]
                    .iter()
                    .map(|&s| {
                        if n == 0 {
                            return Vec::new();
                        }
                        let mut col: Column = Vec::with_capacity(n + 1);
                        for i in 0..=n {
                            if let Some(r) = position[n - 1][x.face(n, i, s)] {
                                col.push((r, if i % 2 == 0 { 1 } else { -1 }));
                            }
                        }
                        normalize(col)
                    })
                    .collect()
            })
            .collect();
        let c = Self { basis, boundary, position };
        for n in 2..=x.top() {
            assert!(c.boundary_squared_vanishes(n), "∂∂ ≠ 0 out of degree {n}");
        }
        c
    }

    pub fn top(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.basis[n].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Basis position of simplex `s`, or `None` when it is degenerate.
    pub fn position(&self, n: usize, s: usize) -> Option<usize> {
        self.position[n][s]
    }

    fn boundary_squared_vanishes(&self, n: usize) -> bool {
        self.boundary[n].iter().all(|col| {
            let mut acc: Column = Vec::new();
            for &(r, c) in col {
                acc.extend(self.boundary[n - 1][r].iter().map(|&(q, v)| (q, c * v)));
            }
            normalize(acc).is_empty()
        })
    }

    /// The chain map induced by a simplicial map, on basis positions:
    /// `None` where the image is degenerate.
    pub fn chain_map(&self, f: &LevelMap, target: &ChainComplex) -> Vec<Vec<Option<usize>>> {
        (0..=self.top())
            .map(|n| self.basis[n].iter().map(|&s| target.position(n, f.apply(n, s))).collect())
            .collect()
    }
}

/// Sorts by row, merges duplicates and drops zeros.
pub fn normalize(mut col: Column) -> Column {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Column = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_boundary() {
        let c = ChainComplex::new(&SSet::standard(1, 2));
        assert_eq!(c.ranks(), vec![2, 1, 0]);
        // d_0 is the vertex 1, d_1 the vertex 0
        assert_eq!(c.boundary[1][0], vec![(0, -1), (1, 1)]);
    }

    #[test]
    fn point_has_zero_boundaries() {
        let c = ChainComplex::new(&SSet::point(3));
        assert_eq!(c.ranks(), vec![1, 0, 0, 0]);
        assert!(c.boundary.iter().flatten().all(Vec::is_empty));
    }
}
