use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::action::GCategory;
use crate::algebra::category::{CatMap, FinCategory};
use crate::error::{Error, Result};
use crate::simplicial::gsset::GSSet;
use crate::simplicial::sset::{LevelMap, SSet};

/// The nerve of a finite category, truncated at `top`, with an index from
/// chains back to simplex ids.
///
/// A degree-0 chain is stored as `[x]` (an object), a degree-n chain for
/// `n >= 1` as its morphisms `[φ1, …, φn]`.
#[derive(Clone, Debug)]
pub struct Nerve {
    cat: FinCategory,
    chains: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    space: Arc<SSet>,
}

impl Nerve {
    pub fn new(cat: &FinCategory, top: usize) -> Self {
        let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..cat.object_count()).map(|x| vec![x]).collect()];
        for n in 1..=top {
            let mut next = Vec::new();
            for c in &chains[n - 1] {
                let last = if n == 1 { c[0] } else { cat.tgt(c[n - 2]) };
                for &f in cat.out_of(last) {
                    let mut e = if n == 1 { Vec::with_capacity(1) } else { c.clone() };
                    e.push(f);
                    next.push(e);
                }
            }
            chains.push(next);
        }
        let index: Vec<HashMap<Vec<usize>, usize>> = chains
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        let counts = chains.iter().map(Vec::len).collect();
        let look = |n: usize, c: Vec<usize>| index[n][&c];
        let space = SSet::build(
            top,
            counts,
            |n, i, s| look(n - 1, face_chain(cat, &chains[n][s], n, i)),
            |n, i, s| look(n + 1, degen_chain(cat, &chains[n][s], n, i)),
        );
        let labels = chains
            .iter()
            .enumerate()
            .map(|(n, level)| level.iter().map(|c| chain_label(cat, n, c)).collect())
            .collect();
        Self { cat: cat.clone(), chains, index, space: Arc::new(space.with_labels(labels)) }
    }

    pub fn cat(&self) -> &FinCategory {
        &self.cat
    }

    pub fn top(&self) -> usize {
        self.space.top()
    }

    pub fn space(&self) -> &Arc<SSet> {
        &self.space
    }

    pub fn count(&self, n: usize) -> usize {
        self.chains[n].len()
    }

    pub fn chain(&self, n: usize, s: usize) -> &[usize] {
        &self.chains[n][s]
    }

    pub fn find(&self, n: usize, chain: &[usize]) -> Option<usize> {
        self.index[n].get(chain).copied()
    }

    /// The id of a chain known to be composable.
    pub fn id_of(&self, n: usize, chain: &[usize]) -> usize {
        self.find(n, chain).expect("chain of the category")
    }

    /// `X_0` of the chain.
    pub fn first_object(&self, n: usize, s: usize) -> usize {
        let c = &self.chains[n][s];
        if n == 0 {
            c[0]
        } else {
            self.cat.src(c[0])
        }
    }

    /// `X_n` of the chain.
    pub fn last_object(&self, n: usize, s: usize) -> usize {
        let c = &self.chains[n][s];
        if n == 0 {
            c[0]
        } else {
            self.cat.tgt(c[n - 1])
        }
    }

    /// `X_i` of the chain.
    pub fn object_at(&self, n: usize, s: usize, i: usize) -> usize {
        let c = &self.chains[n][s];
        match (n, i) {
            (0, _) => c[0],
            (_, 0) => self.cat.src(c[0]),
            _ => self.cat.tgt(c[i - 1]),
        }
    }

    /// Image of every chain under a functor into the category of `target`.
    pub fn map_along(&self, f: &CatMap, target: &Nerve) -> Result<LevelMap> {
        let levels = (0..=self.top())
            .map(|n| {
                self.chains[n]
                    .iter()
                    .map(|c| {
                        let image: Vec<usize> =
                            if n == 0 { vec![f.obj(c[0])] } else { c.iter().map(|&m| f.mor(m)).collect() };
                        target
                            .find(n, &image)
                            .ok_or_else(|| Error::Signature(format!("image of a degree-{n} chain is not a chain")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LevelMap(levels))
    }

    /// The nerve as a G-simplicial set under the action of `c`.
    pub fn with_action(&self, c: &GCategory) -> Result<GSSet> {
        if c.cat != self.cat {
            return Err(Error::Signature("action on a different category".into()));
        }
        let action = c
            .group()
            .elements()
            .map(|g| self.map_along(&c.action.as_cat_map(g), self))
            .collect::<Result<Vec<_>>>()?;
        GSSet::from_parts(self.space.clone(), c.group().clone(), action)
    }
}

fn face_chain(cat: &FinCategory, c: &[usize], n: usize, i: usize) -> Vec<usize> {
    if n == 1 {
        return vec![if i == 0 { cat.tgt(c[0]) } else { cat.src(c[0]) }];
    }
    let mut out = Vec::with_capacity(n - 1);
    if i == 0 {
        out.extend_from_slice(&c[1..]);
    } else if i == n {
        out.extend_from_slice(&c[..n - 1]);
    } else {
        out.extend_from_slice(&c[..i - 1]);
        out.push(cat.compose(c[i], c[i - 1]));
        out.extend_from_slice(&c[i + 1..]);
    }
    out
}

fn degen_chain(cat: &FinCategory, c: &[usize], n: usize, i: usize) -> Vec<usize> {
    if n == 0 {
        return vec![cat.identity(c[0])];
    }
    let x_i = if i == 0 { cat.src(c[0]) } else { cat.tgt(c[i - 1]) };
    let mut out = Vec::with_capacity(n + 1);
    out.extend_from_slice(&c[..i]);
    out.push(cat.identity(x_i));
    out.extend_from_slice(&c[i..]);
    out
}

fn chain_label(cat: &FinCategory, n: usize, c: &[usize]) -> String {
    if n == 0 {
        return cat.object_label(c[0]).to_string();
    }
    let parts: Vec<&str> = c.iter().map(|&f| cat.morphism_label(f)).collect();
    format!("[{}]", parts.join(", "))
}

/// The nerve of a G-category as a G-simplicial set.
pub fn nerve(c: &GCategory, top: usize) -> Result<GSSet> {
    Nerve::new(&c.cat, top).with_action(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::CatAction;
    use crate::algebra::group::FinGroup;
    use crate::simplicial::ops::nondegenerate;

    #[test]
    fn ordinal_one_counts() {
        let n = Nerve::new(&FinCategory::ordinal(1), 2);
        assert_eq!(n.space().counts(), &[2, 3, 4]);
        assert!(n.space().validate().is_valid());
    }

    #[test]
    fn terminal_category_is_a_point() {
        let n = Nerve::new(&FinCategory::terminal(), 3);
        assert_eq!(n.space().counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn swapped_objects_are_exchanged() {
        let group = Arc::new(FinGroup::cyclic(2));
        let on = vec![vec![0, 1], vec![1, 0]];
        let c = GCategory::new(FinCategory::discrete(2), CatAction::new(group, on.clone(), on).unwrap()).unwrap();
        let x = nerve(&c, 2).unwrap();
        assert!(x.validate().is_valid());
        assert_eq!(x.act(1, 0, 0), 1);
    }

    #[test]
    fn group_nerve_has_one_nondegenerate_simplex_per_degree() {
        let n = Nerve::new(&FinCategory::one_object(&FinGroup::cyclic(2)), 3);
        let counts: Vec<usize> = nondegenerate(n.space()).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 1, 1]);
    }
}
