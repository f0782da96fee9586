//! The simplicial bar construction `B(C, Z)`, its bisimplicial form, maps
//! between bar constructions, and bar constructions depending on a
//! parameter.

use std::sync::Arc;

use crate::algebra::action::GCategory;
use crate::algebra::gfunctor::SFunctor;
use crate::constructions::bimodule::{Bimodule, ParamTensorand};
use crate::constructions::nerve::Nerve;
use crate::constructions::quotient::locate_in;
use crate::error::{Error, Result};
use crate::simplicial::bisset::{BiSSet, BiSSetSpec};
use crate::simplicial::gsset::GSSet;
use crate::simplicial::sset::{LevelMap, SSet, SimplicialMap};

/// Degree `n` holds the pairs `(chain, z)` with `z ∈ Z(X_0, X_n)_n`, ordered
/// by chain and then by `z`.
#[derive(Clone, Debug)]
pub struct BarSpace {
    pub nerve: Arc<Nerve>,
    offsets: Vec<Vec<usize>>,
    pub space: Arc<SSet>,
    pub gsset: Option<GSSet>,
}

fn chain_offsets<Z: Bimodule + ?Sized>(nerve: &Nerve, z: &Z, n: usize, inner: usize) -> Vec<usize> {
    let mut acc = 0;
    let mut o = Vec::with_capacity(nerve.count(n) + 1);
    for c in 0..nerve.count(n) {
        o.push(acc);
        acc += z.count(nerve.first_object(n, c), nerve.last_object(n, c), inner);
    }
    o.push(acc);
    o
}

/// `Z(φ_1, 1)` followed by `d_0`, and the analogous last face, shared by the
/// flat and the bisimplicial form.
fn outer_face<Z: Bimodule + ?Sized>(z: &Z, nerve: &Nerve, n: usize, i: usize, c: usize, inner: usize, s: usize) -> usize {
    let chain = nerve.chain(n, c);
    let (x0, xn) = (nerve.first_object(n, c), nerve.last_object(n, c));
    if i == 0 {
        z.left(chain[0], xn, inner, s)
    } else if i == n {
        z.right(x0, chain[n - 1], inner, s)
    } else {
        s
    }
}

fn face_ends(nerve: &Nerve, n: usize, i: usize, c: usize) -> (usize, usize) {
    let (x0, xn) = (nerve.first_object(n, c), nerve.last_object(n, c));
    if i == 0 {
        (nerve.object_at(n, c, 1), xn)
    } else if i == n {
        (x0, nerve.object_at(n, c, n - 1))
    } else {
        (x0, xn)
    }
}

impl BarSpace {
    fn build<Z: Bimodule + ?Sized>(nerve: Arc<Nerve>, z: &Z, with_action: bool) -> Result<Self> {
        let top = z.top();
        if nerve.top() != top {
            return Err(Error::TruncationMismatch(nerve.top(), top));
        }
        if nerve.cat() != &z.base().cat {
            return Err(Error::Signature("nerve of a different category".into()));
        }
        let offsets: Vec<Vec<usize>> = (0..=top).map(|n| chain_offsets(&nerve, z, n, n)).collect();
        let counts: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
        let decode = |n: usize, s: usize| locate_in(&offsets[n], s);
        let encode = |n: usize, c: usize, w: usize| offsets[n][c] + w;
        let ns = nerve.space();
        let space = SSet::build(
            top,
            counts.clone(),
            |n, i, s| {
                let (c, w) = decode(n, s);
                let moved = outer_face(z, &nerve, n, i, c, n, w);
                let (a, b) = face_ends(&nerve, n, i, c);
                encode(n - 1, ns.face(n, i, c), z.face(a, b, n, i, moved))
            },
            |n, i, s| {
                let (c, w) = decode(n, s);
                let (a, b) = (nerve.first_object(n, c), nerve.last_object(n, c));
                encode(n + 1, ns.degen(n, i, c), z.degen(a, b, n, i, w))
            },
        );
        let labels = (0..=top)
            .map(|n| {
                (0..counts[n])
                    .map(|s| {
                        let (c, w) = decode(n, s);
                        let (a, b) = (nerve.first_object(n, c), nerve.last_object(n, c));
                        format!("({}; {})", ns.label(n, c), z.label(a, b, n, w))
                    })
                    .collect()
            })
            .collect();
        let space = Arc::new(space.with_labels(labels));
        let gsset = if with_action {
            let base = z.base();
            let maps = base
                .group()
                .elements()
                .map(|g| {
                    let on_chains = nerve.map_along(&base.action.as_cat_map(g), &nerve)?;
                    Ok(LevelMap(
                        (0..=top)
                            .map(|n| {
                                (0..counts[n])
                                    .map(|s| {
                                        let (c, w) = decode(n, s);
                                        let (a, b) = (nerve.first_object(n, c), nerve.last_object(n, c));
                                        encode(n, on_chains.apply(n, c), z.act(g, a, b, n, w))
                                    })
                                    .collect()
                            })
                            .collect(),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(GSSet::from_parts(space.clone(), base.group().clone(), maps)?)
        } else {
            None
        };
        Ok(Self { nerve, offsets, space, gsset })
    }

    pub fn encode(&self, n: usize, chain: usize, z: usize) -> usize {
        self.offsets[n][chain] + z
    }

    /// `(chain, z)` of a simplex.
    pub fn decode(&self, n: usize, s: usize) -> (usize, usize) {
        locate_in(&self.offsets[n], s)
    }

    /// `(X_0, X_n)` of a chain.
    pub fn ends(&self, n: usize, chain: usize) -> (usize, usize) {
        (self.nerve.first_object(n, chain), self.nerve.last_object(n, chain))
    }

    pub fn top(&self) -> usize {
        self.space.top()
    }

    pub fn g(&self) -> Result<&GSSet> {
        self.gsset.as_ref().ok_or_else(|| Error::Signature("bar construction carries no group action".into()))
    }

    /// A map to another bar construction given on `(n, chain, z)`, returning
    /// the target's `(chain, z)`. Checked to be simplicial.
    pub fn map_to<F>(&self, target: &BarSpace, f: F) -> Result<SimplicialMap>
    where
        F: Fn(usize, usize, usize) -> (usize, usize) + Sync,
    {
        let levels = LevelMap(
            (0..=self.top())
                .map(|n| {
                    (0..self.space.count(n))
                        .map(|s| {
                            let (c, w) = self.decode(n, s);
                            let (c2, w2) = f(n, c, w);
                            target.encode(n, c2, w2)
                        })
                        .collect()
                })
                .collect(),
        );
        SimplicialMap::new(self.space.clone(), target.space.clone(), levels)
    }

    /// A map into an arbitrary simplicial set, given on `(n, chain, z)`.
    pub fn map_into<F>(&self, target: &Arc<SSet>, f: F) -> Result<SimplicialMap>
    where
        F: Fn(usize, usize, usize) -> usize + Sync,
    {
        let levels = LevelMap(
            (0..=self.top())
                .map(|n| {
                    (0..self.space.count(n))
                        .map(|s| {
                            let (c, w) = self.decode(n, s);
                            f(n, c, w)
                        })
                        .collect()
                })
                .collect(),
        );
        SimplicialMap::new(self.space.clone(), target.clone(), levels)
    }
}

/// `B(C, Z)` with the action `g(φ; z) = (gφ; η_{g,(X_0,X_n)} z)`.
pub fn bar<Z: Bimodule + ?Sized>(z: &Z) -> Result<BarSpace> {
    let nerve = Arc::new(Nerve::new(&z.base().cat, z.top()));
    BarSpace::build(nerve, z, true)
}

/// [`bar`] reusing a nerve of the base category.
pub fn bar_with_nerve<Z: Bimodule + ?Sized>(nerve: Arc<Nerve>, z: &Z) -> Result<BarSpace> {
    BarSpace::build(nerve, z, true)
}

/// `B(C, Z)` without an action, for fibers of parametrized families.
pub fn bar_plain<Z: Bimodule + ?Sized>(nerve: Arc<Nerve>, z: &Z) -> Result<BarSpace> {
    BarSpace::build(nerve, z, false)
}

/// The bisimplicial set whose `(m, n)`-simplices are `(chain of length m,
/// z ∈ Z(X_0, X_m)_n)`. Horizontal faces act on the chain (moving `z` along
/// `φ_1` or `φ_m` at the ends), vertical ones on `z`.
pub fn bar_bi<Z: Bimodule + ?Sized>(z: &Z) -> Result<BiSSet> {
    let top = z.top();
    let nerve = Nerve::new(&z.base().cat, top);
    let ns = nerve.space().clone();
    let offsets: Vec<Vec<Vec<usize>>> =
        (0..=top).map(|m| (0..=top).map(|n| chain_offsets(&nerve, z, m, n)).collect()).collect();
    let decode = |m: usize, n: usize, s: usize| locate_in(&offsets[m][n], s);
    let ends = |m: usize, c: usize| (nerve.first_object(m, c), nerve.last_object(m, c));
    let bi = BiSSet::build(BiSSetSpec {
        top_h: top,
        top_v: top,
        count: |m: usize, n: usize| *offsets[m][n].last().unwrap(),
        hface: |m: usize, n: usize, i: usize, s: usize| {
            let (c, w) = decode(m, n, s);
            offsets[m - 1][n][ns.face(m, i, c)] + outer_face(z, &nerve, m, i, c, n, w)
        },
        vface: |m: usize, n: usize, i: usize, s: usize| {
            let (c, w) = decode(m, n, s);
            let (a, b) = ends(m, c);
            offsets[m][n - 1][c] + z.face(a, b, n, i, w)
        },
        hdegen: |m: usize, n: usize, i: usize, s: usize| {
            let (c, w) = decode(m, n, s);
            offsets[m + 1][n][ns.degen(m, i, c)] + w
        },
        vdegen: |m: usize, n: usize, i: usize, s: usize| {
            let (c, w) = decode(m, n, s);
            let (a, b) = ends(m, c);
            offsets[m][n + 1][c] + z.degen(a, b, n, i, w)
        },
    });
    let base = z.base();
    let on_chains = base
        .group()
        .elements()
        .map(|g| nerve.map_along(&base.action.as_cat_map(g), &nerve))
        .collect::<Result<Vec<_>>>()?;
    Ok(bi.with_action(base.group().clone(), |g, m, n, s| {
        let (c, w) = decode(m, n, s);
        let (a, b) = ends(m, c);
        offsets[m][n][on_chains[g].apply(m, c)] + z.act(g, a, b, n, w)
    }))
}

/// The map `(φ; z) ↦ (φ; ε(z))` induced by components
/// `ε_{(X, Y)}: Z(X, Y) → Z'(X, Y)`, given as `eps(x, y, n, z)`.
pub fn bar_induced<F>(source: &BarSpace, target: &BarSpace, eps: F) -> Result<SimplicialMap>
where
    F: Fn(usize, usize, usize, usize) -> usize + Sync,
{
    source.map_to(target, |n, c, w| {
        let (a, b) = source.ends(n, c);
        (c, eps(a, b, n, w))
    })
}

/// `p ↦ B(A(−, p), C, B(−, p))` as a right G-functor on the parameter
/// category, for `A` on `C × P` and `B` on `C^op × P`.
#[derive(Clone, Debug)]
pub struct BarFamily {
    pub functor: Arc<SFunctor>,
    pub fibers: Vec<BarSpace>,
    pub tensorand: ParamTensorand,
}

impl BarFamily {
    pub fn new(base: Arc<GCategory>, param: Arc<GCategory>, a: Arc<SFunctor>, b: Arc<SFunctor>) -> Result<Self> {
        let top = a.top();
        let tensorand = ParamTensorand::new(base.clone(), param.clone(), a, b, 0)?;
        let nerve = Arc::new(Nerve::new(&base.cat, top));
        let pc = &param.cat;
        let fibers = crate::par::map_range_auto(pc.object_count(), |p| bar_plain(nerve.clone(), &tensorand.at(p)))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let level_map = |from: usize, to: usize, f: &dyn Fn(usize, usize, usize) -> (usize, usize)| {
            let (src, dst) = (&fibers[from], &fibers[to]);
            LevelMap(
                (0..=top)
                    .map(|n| {
                        (0..src.space.count(n))
                            .map(|s| {
                                let (c, w) = src.decode(n, s);
                                let (c2, w2) = f(n, c, w);
                                dst.encode(n, c2, w2)
                            })
                            .collect()
                    })
                    .collect(),
            )
        };
        let maps = (0..pc.morphism_count())
            .map(|m| {
                let (p, q) = (pc.src(m), pc.tgt(m));
                let t = tensorand.at(p);
                level_map(p, q, &|n, c, w| {
                    let (x, y) = (nerve.first_object(n, c), nerve.last_object(n, c));
                    (c, t.along(x, y, m, q, n, w))
                })
            })
            .collect();
        let on_chains = base
            .group()
            .elements()
            .map(|g| nerve.map_along(&base.action.as_cat_map(g), &nerve))
            .collect::<Result<Vec<_>>>()?;
        let eta = param
            .group()
            .elements()
            .map(|g| {
                (0..pc.object_count())
                    .map(|p| {
                        let t = tensorand.at(p);
                        level_map(p, param.action.obj(g, p), &|n, c, w| {
                            let (x, y) = (nerve.first_object(n, c), nerve.last_object(n, c));
                            (on_chains[g].apply(n, c), t.act(g, x, y, n, w))
                        })
                    })
                    .collect()
            })
            .collect();
        let values = fibers.iter().map(|f| f.space.clone()).collect();
        let functor = Arc::new(SFunctor::from_parts(param, values, maps, eta)?);
        Ok(Self { functor, fibers, tensorand })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::CatAction;
    use crate::algebra::category::FinCategory;
    use crate::algebra::group::FinGroup;
    use crate::constructions::bimodule::Tensorand;
    use crate::simplicial::ops::is_isomorphism;

    fn trivial(cat: FinCategory) -> Arc<GCategory> {
        Arc::new(GCategory::with_trivial_action(cat, Arc::new(FinGroup::trivial())))
    }

    fn star_star(c: &Arc<GCategory>, top: usize) -> Tensorand {
        let f = Arc::new(SFunctor::point(c.clone(), top));
        let t = Arc::new(SFunctor::point(Arc::new(c.opposite()), top));
        Tensorand::new(f, t).unwrap()
    }

    #[test]
    fn bar_of_points_is_the_nerve() {
        let c = trivial(FinCategory::ordinal(1));
        let b = bar(&star_star(&c, 2)).unwrap();
        assert_eq!(b.space.counts(), &[2, 3, 4]);
        assert!(b.space.validate().is_valid());
        let n = Nerve::new(&c.cat, 2);
        let id = SimplicialMap::new(n.space().clone(), b.space.clone(), LevelMap::identity(&b.space)).unwrap();
        assert!(is_isomorphism(&id, None).is_iso);
    }

    #[test]
    fn one_object_trivial_hom_gives_product_of_values() {
        let c = trivial(FinCategory::terminal());
        let f = Arc::new(SFunctor::constant(c.clone(), &GSSet::trivial(Arc::new(SSet::standard(1, 2)), c.group().clone())).unwrap());
        let t = Arc::new(SFunctor::constant(Arc::new(c.opposite()), &GSSet::trivial(Arc::new(SSet::discrete(2, 2)), c.group().clone())).unwrap());
        let b = bar(&Tensorand::new(f, t).unwrap()).unwrap();
        assert_eq!(b.space.counts(), &[4, 6, 8]);
        assert!(b.space.validate().is_valid());
    }

    #[test]
    fn diagonal_of_bisimplicial_form_is_the_bar_construction() {
        let group = Arc::new(FinGroup::cyclic(2));
        let on = vec![vec![0, 1], vec![1, 0]];
        let cat = FinCategory::discrete(2);
        let c = Arc::new(GCategory::new(cat, CatAction::new(group, on.clone(), on).unwrap()).unwrap());
        let z = star_star(&c, 3);
        let bi = bar_bi(&z).unwrap();
        assert!(bi.validate().is_valid());
        let d = bi.diagonal_g().unwrap();
        let b = bar(&z).unwrap();
        let f = SimplicialMap::new(Arc::new(d.space.as_ref().clone()), b.space.clone(), LevelMap::identity(&b.space)).unwrap();
        let gd = GSSet::from_parts(f.source.clone(), d.group.clone(), (0..2).map(|g| d.action_levels(g).clone()).collect()).unwrap();
        assert!(is_isomorphism(&f, Some((&gd, b.g().unwrap()))).is_iso);
    }

    #[test]
    fn bisimplicial_count_in_bidegree_one_one() {
        let c = trivial(FinCategory::ordinal(1));
        let bi = bar_bi(&star_star(&c, 2)).unwrap();
        assert_eq!(bi.count(1, 1), 3);
    }
}
