//! Degreewise quotients of a disjoint union of blocks by generated
//! relations. Each class is represented by its least pre-quotient id.

use std::sync::Arc;

use crate::algebra::group::FinGroup;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::simplicial::gsset::GSSet;
use crate::simplicial::sset::{LevelMap, SSet};

/// Union-find whose roots are always the least member of their class.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let up = self.parent[self.parent[x]];
            self.parent[x] = up;
            x = up;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The class structure of one quotient, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    class_of: Vec<Vec<usize>>,
    reps: Vec<Vec<usize>>,
}

impl Quotient {
    /// `relate(n, emit)` emits the generating pairs of degree `n`.
    pub fn new<R>(pre_counts: &[usize], relate: R) -> Self
    where
        R: Fn(usize, &mut dyn FnMut(usize, usize)) + Sync,
    {
        let levels = par::map_range(Exec::Parallel, pre_counts.len(), |n| {
            let mut uf = UnionFind::new(pre_counts[n]);
            relate(n, &mut |a, b| uf.union(a, b));
            let mut class_of = vec![usize::MAX; pre_counts[n]];
            let mut reps = Vec::new();
            for p in 0..pre_counts[n] {
                let r = uf.find(p);
                if r == p {
                    class_of[p] = reps.len();
                    reps.push(p);
                } else {
                    class_of[p] = class_of[r];
                }
            }
            (class_of, reps)
        });
        let (class_of, reps) = levels.into_iter().unzip();
        Self { class_of, reps }
    }

    pub fn count(&self, n: usize) -> usize {
        self.reps[n].len()
    }

    pub fn class(&self, n: usize, pre: usize) -> usize {
        self.class_of[n][pre]
    }

    pub fn rep(&self, n: usize, class: usize) -> usize {
        self.reps[n][class]
    }

    /// A map out of the quotient given on pre-quotient ids; fails when two
    /// members of one class disagree.
    pub fn descend<F>(&self, image: F) -> Result<LevelMap>
    where
        F: Fn(usize, usize) -> usize + Sync,
    {
        (0..self.reps.len())
            .map(|n| self.descend_level(n, |p| image(n, p)))
            .collect::<Result<Vec<_>>>()
            .map(LevelMap)
    }

    /// [`Quotient::descend`] in a single degree.
    pub fn descend_level<F>(&self, n: usize, image: F) -> Result<Vec<usize>>
    where
        F: Fn(usize) -> usize + Sync,
    {
        let on_reps: Vec<usize> = par::map_range_auto(self.reps[n].len(), |c| image(self.reps[n][c]));
        let bad = par::map_range_auto(self.class_of[n].len(), |p| on_reps[self.class_of[n][p]] != image(p))
            .iter()
            .position(|&b| b);
        match bad {
            Some(p) => Err(Error::IllDefined(format!(
                "degree {n}: pre-quotient simplex {p} and its representative {} have different images",
                self.reps[n][self.class_of[n][p]]
            ))),
            None => Ok(on_reps),
        }
    }
}

/// A quotient of `⨿_b X_b` where block `b` contributes `counts[n][b]`
/// simplices in degree `n`. Pre-quotient ids are block-major.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    offsets: Vec<Vec<usize>>,
    pub quotient: Quotient,
    pub space: Arc<SSet>,
    pub gsset: Option<GSSet>,
}

/// Location of a pre-quotient simplex: block and index inside the block.
pub type Spot = (usize, usize);

pub struct Presentation<'a> {
    pub top: usize,
    pub block_counts: Vec<Vec<usize>>,
    pub relate: Box<dyn Fn(usize, &mut dyn FnMut(Spot, Spot)) + Sync + 'a>,
    pub face: Box<dyn Fn(usize, usize, Spot) -> Spot + Sync + 'a>,
    pub degen: Box<dyn Fn(usize, usize, Spot) -> Spot + Sync + 'a>,
    pub action: Option<(Arc<FinGroup>, Box<dyn Fn(usize, usize, Spot) -> Spot + Sync + 'a>)>,
    pub label: Box<dyn Fn(usize, Spot) -> String + Sync + 'a>,
}

impl QuotientSpace {
    pub fn new(p: Presentation<'_>) -> Result<Self> {
        let top = p.top;
        let offsets: Vec<Vec<usize>> = p
            .block_counts
            .iter()
            .map(|level| {
                let mut acc = 0;
                let mut o: Vec<usize> = level
                    .iter()
                    .map(|&c| {
                        let here = acc;
                        acc += c;
                        here
                    })
                    .collect();
                o.push(acc);
                o
            })
            .collect();
        let pre_counts: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
        let at = |n: usize, (b, s): Spot| offsets[n][b] + s;
        let locate = |n: usize, pre: usize| locate_in(&offsets[n], pre);
        let quotient = Quotient::new(&pre_counts, |n, emit| (p.relate)(n, &mut |a, b| emit(at(n, a), at(n, b))));
        let mut faces = Vec::with_capacity(top + 1);
        let mut degens = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut f = Vec::new();
            if n > 0 {
                for i in 0..=n {
                    f.push(quotient.descend_level(n, |pre| {
                        quotient.class(n - 1, at(n - 1, (p.face)(n, i, locate(n, pre))))
                    })?);
                }
            }
            faces.push(f);
            let mut d = Vec::new();
            if n < top {
                for i in 0..=n {
                    d.push(quotient.descend_level(n, |pre| {
                        quotient.class(n + 1, at(n + 1, (p.degen)(n, i, locate(n, pre))))
                    })?);
                }
            }
            degens.push(d);
        }
        let counts: Vec<usize> = (0..=top).map(|n| quotient.count(n)).collect();
        let labels = (0..=top)
            .map(|n| (0..counts[n]).map(|c| (p.label)(n, locate(n, quotient.rep(n, c)))).collect())
            .collect();
        let space = Arc::new(SSet::from_tables(top, counts, faces, degens)?.with_labels(labels));
        let gsset = match &p.action {
            None => None,
            Some((group, act)) => {
                let maps = group
                    .elements()
                    .map(|g| quotient.descend(|n, pre| quotient.class(n, at(n, act(g, n, locate(n, pre))))))
                    .collect::<Result<Vec<_>>>()?;
                Some(GSSet::from_parts(space.clone(), group.clone(), maps)?)
            }
        };
        Ok(Self { offsets, quotient, space, gsset })
    }

    pub fn pre(&self, n: usize, (b, s): Spot) -> usize {
        self.offsets[n][b] + s
    }

    /// Number of simplices before the quotient.
    pub fn pre_count(&self, n: usize) -> usize {
        *self.offsets[n].last().unwrap()
    }

    pub fn class(&self, n: usize, spot: Spot) -> usize {
        self.quotient.class(n, self.pre(n, spot))
    }

    pub fn locate(&self, n: usize, pre: usize) -> Spot {
        locate_in(&self.offsets[n], pre)
    }

    /// Representative of a class, as a block location.
    pub fn rep(&self, n: usize, class: usize) -> Spot {
        self.locate(n, self.quotient.rep(n, class))
    }

    /// The G-simplicial set, when the presentation carried an action.
    pub fn g(&self) -> Result<&GSSet> {
        self.gsset.as_ref().ok_or_else(|| Error::Signature("quotient carries no group action".into()))
    }

    /// A map out of this quotient given on block locations.
    pub fn descend<F>(&self, image: F) -> Result<LevelMap>
    where
        F: Fn(usize, Spot) -> usize + Sync,
    {
        self.quotient.descend(|n, pre| image(n, self.locate(n, pre)))
    }
}

/// Block containing `pre`, for block offsets ending with the total.
pub(crate) fn locate_in(offsets: &[usize], pre: usize) -> Spot {
    // last block whose offset is <= pre, skipping empty blocks
    let b = offsets.partition_point(|&o| o <= pre) - 1;
    (b, pre - offsets[b])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_keeps_least_root() {
        let mut uf = UnionFind::new(6);
        uf.union(5, 3);
        uf.union(3, 4);
        uf.union(4, 1);
        assert_eq!(uf.find(5), 1);
        assert_eq!(uf.find(0), 0);
    }

    #[test]
    fn descend_rejects_ill_defined_maps() {
        let q = Quotient::new(&[3], |_, emit| emit(0, 2));
        assert_eq!(q.count(0), 2);
        assert!(q.descend(|_, p| p % 2).is_ok());
        assert!(matches!(q.descend(|_, p| p), Err(Error::IllDefined(_))));
    }

    #[test]
    fn locate_skips_empty_blocks() {
        let offsets = [0, 2, 2, 5];
        assert_eq!(locate_in(&offsets, 1), (0, 1));
        assert_eq!(locate_in(&offsets, 2), (2, 0));
        assert_eq!(locate_in(&offsets, 4), (2, 2));
    }
}
