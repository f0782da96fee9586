//! The canonical maps between bar constructions, coends and homotopy
//! colimits, each built as an explicit simplex-level map and then checked.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::action::GCategory;
use crate::algebra::functor::Functor;
use crate::algebra::gfunctor::{GFunctorMorphism, ProductWith, SFunctor};
use crate::constructions::bar::{bar, bar_induced, BarFamily, BarSpace};
use crate::constructions::bimodule::{is_opposite, OnSquare, Tensorand};
use crate::constructions::coend::{colim, induced_map, tensor, CoendFamily};
use crate::constructions::comma::{two_sided_family, under_family, CommaObject, NerveFamily};
use crate::constructions::hocolim::{hocolim_map, hocolim_with, under_nerves, Hocolim};
use crate::constructions::hom::{hom_element, hom_into_image, hom_out_of_image};
use crate::constructions::nerve::{nerve, Nerve};
use crate::constructions::quotient::QuotientSpace;
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::simplicial::gsset::GSSet;
use crate::simplicial::ops::{is_isomorphism, product, IsoVerdict};
use crate::simplicial::sset::{LevelMap, SSet, SimplicialMap};

/// An equivariant map between two G-simplicial sets.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub map: SimplicialMap,
    pub source: GSSet,
    pub target: GSSet,
}

impl Canonical {
    fn new(map: SimplicialMap, source: &GSSet, target: &GSSet) -> Self {
        Self { map, source: source.clone(), target: target.clone() }
    }

    /// Degreewise bijective and equivariant.
    pub fn iso(&self) -> IsoVerdict {
        is_isomorphism(&self.map, Some((&self.source, &self.target)))
    }

    pub fn equivariance(&self) -> ValidationReport {
        GSSet::equivariance_violations(&self.source, &self.target, &self.map.levels)
    }
}

/// A morphism of right G-functors expected to be an isomorphism objectwise.
#[derive(Clone, Debug)]
pub struct FamilyCanonical {
    pub morphism: GFunctorMorphism,
}

impl FamilyCanonical {
    /// Naturality and the `η` squares.
    pub fn report(&self) -> ValidationReport {
        self.morphism.validate()
    }

    /// Bijectivity of the component at `x`.
    pub fn iso_at(&self, x: usize) -> IsoVerdict {
        let m = &self.morphism;
        let f = SimplicialMap::new_unchecked(m.source.value(x).clone(), m.target.value(x).clone(), m.components[x].clone());
        is_isomorphism(&f, None)
    }

    pub fn is_iso(&self) -> bool {
        self.report().is_valid() && (0..self.morphism.components.len()).all(|x| self.iso_at(x).is_iso)
    }

    /// The component at `x` as a map of `G_x`-simplicial sets.
    pub fn restricted(&self, x: usize) -> Result<Canonical> {
        let m = &self.morphism;
        let (source, _) = m.source.restrict_action(x)?;
        let (target, _) = m.target.restrict_action(x)?;
        let map = SimplicialMap::new(source.space.clone(), target.space.clone(), m.components[x].clone())?;
        Ok(Canonical { map, source, target })
    }
}

fn comma_simplex(nf: &NerveFamily, x: usize, objects: &[CommaObject], ps: &[usize]) -> usize {
    let ids: Vec<usize> = objects.iter().map(|&o| nf.commas[x].object_id(o).expect("comma object")).collect();
    nf.simplex(x, &ids, ps)
}

fn chain_id(nerve: &Nerve, first: usize, ps: &[usize]) -> usize {
    if ps.is_empty() {
        nerve.id_of(0, &[first])
    } else {
        nerve.id_of(ps.len(), ps)
    }
}

/// Objects `X_0, …, X_n` and morphisms of a nerve simplex.
fn chain_parts(nerve: &Nerve, n: usize, c: usize) -> (Vec<usize>, Vec<usize>) {
    let objects = (0..=n).map(|i| nerve.object_at(n, c, i)).collect();
    let ps = if n == 0 { Vec::new() } else { nerve.chain(n, c).to_vec() };
    (objects, ps)
}

/// `X_0 → X_1 → …` as the chain `(X_0, 1) → (X_1, φ_1) → (X_2, φ_2φ_1) → …`
/// of `X_0↓C`, or of `c↓S` when the composites are pushed along `S` and
/// started at `u`.
fn under_chain(target: &GCategory, objects: &[usize], ps: &[usize], s: &dyn Fn(usize) -> usize, u: usize) -> Vec<CommaObject> {
    let cat = &target.cat;
    let mut out = Vec::with_capacity(objects.len());
    let mut acc = u;
    out.push(CommaObject { u: Some(acc), c: objects[0], v: None });
    for (i, &p) in ps.iter().enumerate() {
        acc = cat.compose(s(p), acc);
        out.push(CommaObject { u: Some(acc), c: objects[i + 1], v: None });
    }
    out
}

/// eq. 9: `hocolim F → F ⊗ * = colim F`.
pub fn to_colim(h: &Hocolim) -> Result<(Canonical, QuotientSpace)> {
    let c = colim(&h.f)?;
    let z = &h.tensorand;
    let map = induced_map(&h.quotient, &c, |n, (x, s)| (x, z.split(x, n, s).0))?;
    Ok((Canonical::new(map, h.g()?, c.g()?), c))
}

/// eq. 10: `hocolim F → N(−↓C) ⊗ * = N(C)`.
pub fn to_nerve(h: &Hocolim) -> Result<Canonical> {
    let c = &h.f.domain;
    let target = nerve(c, h.f.top())?;
    let plain = Nerve::new(&c.cat, h.f.top());
    let z = &h.tensorand;
    let levels = h.quotient.descend(|n, (x, s)| {
        let (_, b) = z.split(x, n, s);
        let (objects, ps) = h.nerves.decode(x, n, b);
        chain_id(&plain, objects[0].c, &ps)
    })?;
    let map = SimplicialMap::new(h.quotient.space.clone(), target.space.clone(), levels)?;
    Ok(Canonical::new(map, h.g()?, &target))
}

/// `B(F, C, *)`, with its tensorand.
pub fn bar_with_point(f: &Arc<SFunctor>) -> Result<(BarSpace, Tensorand)> {
    let star = Arc::new(SFunctor::point(Arc::new(f.domain.opposite()), f.top()));
    let z = Tensorand::new(f.clone(), star)?;
    Ok((bar(&z)?, z))
}

/// eq. 12: `B(F, C, *) → hocolim F`,
/// `(φ; a) ↦ [a, (X_0, 1) → (X_1, φ_1) → …]`.
pub fn bar_to_hocolim(f: &Arc<SFunctor>, h: &Hocolim) -> Result<Canonical> {
    let (b, z) = bar_with_point(f)?;
    let c = &f.domain;
    let cat = &c.cat;
    let levels = LevelMap(
        (0..=f.top())
            .map(|n| {
                (0..b.space.count(n))
                    .map(|s| {
                        let (ch, w) = b.decode(n, s);
                        let (objects, ps) = chain_parts(&b.nerve, n, ch);
                        let (x0, xn) = (objects[0], objects[n]);
                        let (a, _) = z.split(xn, n, w);
                        let chain = under_chain(c, &objects, &ps, &|p| p, cat.identity(x0));
                        let nb = comma_simplex(&h.nerves, x0, &chain, &ps);
                        h.quotient.class(n, (x0, h.tensorand.join(x0, n, a, nb)))
                    })
                    .collect()
            })
            .collect(),
    );
    let map = SimplicialMap::new(b.space.clone(), h.quotient.space.clone(), levels)?;
    Ok(Canonical::new(map, b.g()?, h.g()?))
}

/// `(x, y) ↦ N(x↓C↓y)` on `C^op × C`.
pub fn two_sided_nerves(c: &Arc<GCategory>, top: usize) -> Result<NerveFamily> {
    NerveFamily::new(&two_sided_family(&Functor::identity(c.clone()))?, top)
}

/// eq. 1: `Z ⊗_{C×C^op} N(−↓C↓−) → B(C, Z)`,
/// `[z, (u_0, c_0, v_0) → … → (u_n, c_n, v_n)] ↦ (c_0 → … → c_n; Z(u_0, v_n) z)`.
pub fn coend_to_bar(base: &Arc<GCategory>, z: &Arc<SFunctor>) -> Result<Canonical> {
    let top = z.top();
    let square = OnSquare::new(base.clone(), z.clone())?;
    let b = bar(&square)?;
    let nerves = two_sided_nerves(base, top)?;
    let (q, t) = tensor(z, &nerves.functor)?;
    let mb = base.cat.morphism_count();
    let levels = q.descend(|n, (p, s)| {
        let (a, w) = t.split(p, n, s);
        let (objects, ps) = nerves.decode(p, n, w);
        let chain = chain_id(&b.nerve, objects[0].c, &ps);
        let (u0, vn) = (objects[0].u.unwrap(), objects[n].v.unwrap());
        b.encode(n, chain, z.apply(u0 * mb + vn, n, a))
    })?;
    let map = SimplicialMap::new(q.space.clone(), b.space.clone(), levels)?;
    Ok(Canonical::new(map, q.g()?, b.g()?))
}

/// eq. 2: `F ⊗_C N(−↓C↓−) ⊗_C T → B(F, C, T)`, with the inner tensor
/// taken first: `V(y) = F ⊗_C N(−↓C↓y)`.
pub fn coend_to_bar_ft(f: &Arc<SFunctor>, t: &Arc<SFunctor>) -> Result<Canonical> {
    let c = f.domain.clone();
    if !is_opposite(&c, &t.domain) {
        return Err(Error::Signature("second functor is not defined on the opposite category".into()));
    }
    let top = f.top();
    let target_z = Tensorand::new(f.clone(), t.clone())?;
    let b = bar(&target_z)?;
    let nerves = two_sided_nerves(&c, top)?;
    let pulled = Arc::new(f.precompose(&Functor::first_projection(c.clone(), &c)?)?);
    let v = CoendFamily::new(c.clone(), c.clone(), pulled, nerves.functor.clone())?;
    let ob = c.cat.object_count();
    // the value of (a, inner chain) in the target, before the outer factor
    let inner = |y: usize, n: usize, (x, s): (usize, usize)| {
        let (a, w) = v.tensorand.at(y).split_at(x, y, n, s);
        let (objects, ps) = nerves.decode(x * ob + y, n, w);
        let chain = chain_id(&b.nerve, objects[0].c, &ps);
        (chain, f.apply(objects[0].u.unwrap(), n, a), objects[n].c, objects[n].v.unwrap())
    };
    for y in 0..ob {
        check_constant_on_classes(&v.fibers[y], |n, spot| inner(y, n, spot))?;
    }
    let (q, outer) = tensor(&v.functor, t)?;
    let levels = q.descend(|n, (y, s)| {
        let (cls, tb) = outer.split(y, n, s);
        let (chain, fa, cn, vn) = inner(y, n, v.fibers[y].rep(n, cls));
        b.encode(n, chain, target_z.join(cn, n, fa, t.apply(vn, n, tb)))
    })?;
    let map = SimplicialMap::new(q.space.clone(), b.space.clone(), levels)?;
    Ok(Canonical::new(map, q.g()?, b.g()?))
}

/// Errors unless `key` takes one value on every class of `q`.
fn check_constant_on_classes<K: PartialEq + std::fmt::Debug>(
    q: &QuotientSpace,
    key: impl Fn(usize, (usize, usize)) -> K,
) -> Result<()> {
    for n in 0..=q.space.top() {
        let mut seen: HashMap<usize, K> = HashMap::new();
        for pre in 0..q.pre_count(n) {
            let spot = q.locate(n, pre);
            let class = q.class(n, spot);
            let k = key(n, spot);
            match seen.get(&class) {
                Some(prev) if *prev != k => {
                    return Err(Error::IllDefined(format!("degree {n}: class {class} has images {prev:?} and {k:?}")));
                }
                Some(_) => {}
                None => {
                    seen.insert(class, k);
                }
            }
        }
    }
    Ok(())
}

/// eq. 22: `B(B(F, C, T), D, U) → B(F, C, B(T, D, U))` for `F` on `C`,
/// `T` on `C^op × D` and `U` on `D^op`,
/// `(ψ; (φ; a, t), u) ↦ (φ; a, (ψ; t, u))`.
pub fn assoc(f: &Arc<SFunctor>, t: &Arc<SFunctor>, u: &Arc<SFunctor>, d: &Arc<GCategory>) -> Result<Canonical> {
    let c = f.domain.clone();
    let c_op = Arc::new(c.opposite());
    if !is_opposite(d, &u.domain) {
        return Err(Error::Signature("third functor is not defined on D^op".into()));
    }
    let l = BarFamily::new(c.clone(), d.clone(), Arc::new(f.precompose(&Functor::first_projection(c.clone(), d)?)?), t.clone())?;
    let lhs_z = Tensorand::new(l.functor.clone(), u.clone())?;
    let lhs = bar(&lhs_z)?;
    let t_swapped = Arc::new(t.precompose(&Functor::swap(d, &c_op)?)?);
    let u_pulled = Arc::new(u.precompose(&Functor::first_projection(u.domain.clone(), &c_op)?)?);
    let r = BarFamily::new(d.clone(), c_op, t_swapped, u_pulled)?;
    let rhs_z = Tensorand::new(f.clone(), r.functor.clone())?;
    let rhs = bar(&rhs_z)?;
    let map = lhs.map_to(&rhs, |n, c_psi, w| {
        let (d0, dn) = lhs.ends(n, c_psi);
        let (ell, uu) = lhs_z.split(dn, n, w);
        let fiber = &l.fibers[d0];
        let (c_phi, w2) = fiber.decode(n, ell);
        let (_, cn) = fiber.ends(n, c_phi);
        let (a, tt) = l.tensorand.at(d0).split_at(cn, d0, n, w2);
        let inner = r.tensorand.at(cn).join_at(dn, cn, n, tt, uu);
        let rr = r.fibers[cn].encode(n, c_psi, inner);
        (c_phi, rhs_z.join(cn, n, a, rr))
    })?;
    Ok(Canonical::new(map, lhs.g()?, rhs.g()?))
}

/// eq. 7: `hocolim_D F∘S → F ⊗_C N(S↓−)`, `[a, (d_i, u_i)] ↦ [a, (d_i, S u_i)]`.
pub fn reduction(s: &Functor, f: &Arc<SFunctor>) -> Result<Canonical> {
    let fs = Arc::new(f.precompose(s)?);
    let lhs = hocolim_with(&fs, under_nerves(&fs)?)?;
    let fibers = NerveFamily::new(&under_family(s), f.top())?;
    let (q, z) = tensor(f, &fibers.functor)?;
    let map = induced_map(&lhs.quotient, &q, |n, (d, w)| {
        let (a, b) = lhs.tensorand.split(d, n, w);
        let (objects, ps) = lhs.nerves.decode(d, n, b);
        let pushed: Vec<CommaObject> =
            objects.iter().map(|o| CommaObject { u: Some(s.mor(o.u.unwrap())), c: o.c, v: None }).collect();
        let sd = s.obj(d);
        (sd, z.join(sd, n, a, comma_simplex(&fibers, sd, &pushed, &ps)))
    })?;
    Ok(Canonical::new(map, lhs.g()?, q.g()?))
}

/// eq. 11: `X ↦ N(X↓C↓−) ⊗_C *` on `C^op`, mapped to `X ↦ N(X↓C)` by
/// forgetting the `v` components.
pub fn comma_collapse(c: &Arc<GCategory>, top: usize) -> Result<FamilyCanonical> {
    let c_op = Arc::new(c.opposite());
    let two = two_sided_nerves(c, top)?;
    let a = Arc::new(two.functor.precompose(&Functor::swap(c, &c_op)?)?);
    let star = Arc::new(SFunctor::point(Arc::new(GCategory::product(&c_op, &c_op)?), top));
    let family = CoendFamily::new(c.clone(), c_op, a, star)?;
    let under = under_nerves(&SFunctor::point(c.clone(), top))?;
    let ob = c.cat.object_count();
    let components = (0..ob)
        .map(|x| {
            let t = family.tensorand.at(x);
            family.fibers[x].descend(|n, (y, s)| {
                let (w, _) = t.split_at(y, x, n, s);
                let (objects, ps) = two.decode(x * ob + y, n, w);
                let forgotten: Vec<CommaObject> = objects.iter().map(|o| CommaObject { v: None, ..*o }).collect();
                comma_simplex(&under, x, &forgotten, &ps)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism = GFunctorMorphism::new(family.functor.clone(), under.functor.clone(), components)?;
    Ok(FamilyCanonical { morphism })
}

/// Prop. 3 (1), second isomorphism: `C ↦ B(hom_C(C, S−), D, *)` mapped to
/// `C ↦ N(C↓S)` on `C^op`, `(ψ; u) ↦ (d_i, S(ψ_i ⋯ ψ_1) u)`.
pub fn prop3a(s: &Functor, top: usize) -> Result<(FamilyCanonical, BarFamily)> {
    let (c, d) = (s.target.clone(), s.source.clone());
    let c_op = Arc::new(c.opposite());
    let hom = Arc::new(hom_into_image(s, top)?.precompose(&Functor::swap(&d, &c_op)?)?);
    let star = Arc::new(SFunctor::point(Arc::new(GCategory::product(&d.opposite(), &c_op)?), top));
    let family = BarFamily::new(d.clone(), c_op, hom, star)?;
    let fibers = NerveFamily::new(&under_family(s), top)?;
    let components = (0..c.cat.object_count())
        .map(|x| {
            let b = &family.fibers[x];
            let t = family.tensorand.at(x);
            LevelMap(
                (0..=top)
                    .map(|n| {
                        (0..b.space.count(n))
                            .map(|sx| {
                                let (ch, w) = b.decode(n, sx);
                                let (objects, ps) = chain_parts(&b.nerve, n, ch);
                                let (a, _) = t.split_at(objects[n], x, n, w);
                                let u = hom_element(&c, x, s.obj(objects[0]), a);
                                let chain = under_chain(&c, &objects, &ps, &|p| s.mor(p), u);
                                comma_simplex(&fibers, x, &chain, &ps)
                            })
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    let morphism = GFunctorMorphism::new(family.functor.clone(), fibers.functor.clone(), components)?;
    Ok((FamilyCanonical { morphism }, family))
}

/// Prop. 3 (2), first isomorphism: `D ↦ F ⊗_C hom_C(−, SD)` mapped to
/// `F∘S` by `[a, u] ↦ F(u) a`.
pub fn prop3b(s: &Functor, f: &Arc<SFunctor>) -> Result<FamilyCanonical> {
    let (c, d) = (s.target.clone(), s.source.clone());
    let top = f.top();
    let pulled = Arc::new(f.precompose(&Functor::first_projection(c.clone(), &d)?)?);
    let hom = Arc::new(hom_into_image(s, top)?);
    let family = CoendFamily::new(c.clone(), d.clone(), pulled, hom)?;
    let fs = Arc::new(f.precompose(s)?);
    let components = (0..d.cat.object_count())
        .map(|y| {
            let t = family.tensorand.at(y);
            family.fibers[y].descend(|n, (x, w)| {
                let (a, ui) = t.split_at(x, y, n, w);
                f.apply(hom_element(&c, x, s.obj(y), ui), n, a)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism = GFunctorMorphism::new(family.functor.clone(), fs, components)?;
    Ok(FamilyCanonical { morphism })
}

/// Prop. 3 (2) through the bar construction: at each `D`,
/// `B(F, C, hom_C(−, SD)) → F(SD)`, `(φ; a, u) ↦ F(u φ_n ⋯ φ_1) a`. This is
/// a homotopy equivalence, not an isomorphism.
pub fn prop3b_bar(s: &Functor, f: &Arc<SFunctor>) -> Result<GFunctorMorphism> {
    let (c, d) = (s.target.clone(), s.source.clone());
    let top = f.top();
    let pulled = Arc::new(f.precompose(&Functor::first_projection(c.clone(), &d)?)?);
    let family = BarFamily::new(c.clone(), d.clone(), pulled, Arc::new(hom_into_image(s, top)?))?;
    let fs = Arc::new(f.precompose(s)?);
    let components = (0..d.cat.object_count())
        .map(|y| {
            let b = &family.fibers[y];
            let t = family.tensorand.at(y);
            LevelMap(
                (0..=top)
                    .map(|n| {
                        (0..b.space.count(n))
                            .map(|sx| {
                                let (ch, w) = b.decode(n, sx);
                                let (objects, ps) = chain_parts(&b.nerve, n, ch);
                                let (a, ui) = t.split_at(objects[n], y, n, w);
                                let mut along = hom_element(&c, objects[n], s.obj(y), ui);
                                for &p in ps.iter().rev() {
                                    along = c.cat.compose(along, p);
                                }
                                f.apply(along, n, a)
                            })
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    GFunctorMorphism::new(family.functor.clone(), fs, components)
}

/// eq. 28 at `x`: `B(hom_C(x, −), C, *) → N(x↓C)` as `G_x`-simplicial sets.
pub fn initial_collapse(c: &Arc<GCategory>, x: usize, top: usize) -> Result<Canonical> {
    let (fam, _) = prop3a(&Functor::identity(c.clone()), top)?;
    fam.restricted(x)
}

/// Theorem 1's map `B(C, Z × Δ¹) → B(C, Z)`, induced by the projection.
pub fn thickening_bar(base: &Arc<GCategory>, z: &Arc<SFunctor>) -> Result<Canonical> {
    let top = z.top();
    let interval = Arc::new(SSet::standard(1, top));
    let thick = Arc::new(z.postcompose(&ProductWith(interval.clone())));
    let source = bar(&OnSquare::new(base.clone(), thick)?)?;
    let target = bar(&OnSquare::new(base.clone(), z.clone())?)?;
    let width = |n: usize| interval.count(n);
    let map = bar_induced(&source, &target, |_, _, n, w| w / width(n))?;
    Ok(Canonical::new(map, source.g()?, target.g()?))
}

/// The projections `F'X × Δ¹ → F'X`, as a morphism of right G-functors.
pub fn thickening(f: &Arc<SFunctor>) -> Result<GFunctorMorphism> {
    let top = f.top();
    let interval = Arc::new(SSet::standard(1, top));
    let thick = Arc::new(f.postcompose(&ProductWith(interval.clone())));
    let components = (0..f.domain.cat.object_count())
        .map(|x| Ok(product(f.value(x), &interval)?.1))
        .collect::<Result<Vec<_>>>()?;
    GFunctorMorphism::new(thick, f.clone(), components)
}

/// Theorem 2's map `hocolim(F' × Δ¹) → hocolim F'`.
pub fn thickening_hocolim(f: &Arc<SFunctor>) -> Result<Canonical> {
    let eps = thickening(f)?;
    let nerves = under_nerves(f)?;
    let source = hocolim_with(&eps.source, nerves.clone())?;
    let target = hocolim_with(f, nerves)?;
    let map = hocolim_map(&eps, &source, &target)?;
    Ok(Canonical::new(map, source.g()?, target.g()?))
}

/// Theorem 4's map `hocolim_C S_{h*}(F) → hocolim_D F` in bar form:
/// `(ψ; (φ; a, u)) ↦ (φ; a)`. Also returns the pushdown functor.
pub fn pushdown(s: &Functor, f: &Arc<SFunctor>) -> Result<(Canonical, Arc<SFunctor>)> {
    let (c, d) = (s.target.clone(), s.source.clone());
    let top = f.top();
    let pulled = Arc::new(f.precompose(&Functor::first_projection(d.clone(), &c)?)?);
    let family = BarFamily::new(d.clone(), c.clone(), pulled, Arc::new(hom_out_of_image(s, top)?))?;
    let (lhs, lz) = bar_with_point(&family.functor)?;
    let (rhs, rz) = bar_with_point(f)?;
    let map = lhs.map_to(&rhs, |n, c_psi, w| {
        let (c0, cn) = lhs.ends(n, c_psi);
        let (ell, _) = lz.split(cn, n, w);
        let fiber = &family.fibers[c0];
        let (c_phi, w2) = fiber.decode(n, ell);
        let (_, dn) = fiber.ends(n, c_phi);
        let (a, _) = family.tensorand.at(c0).split_at(dn, c0, n, w2);
        (c_phi, rz.join(dn, n, a, 0))
    })?;
    Ok((Canonical::new(map, lhs.g()?, rhs.g()?), family.functor))
}

/// Theorem 5's map `hocolim_D F∘S → hocolim_C F` in bar form:
/// `(ψ; a) ↦ (Sψ; a)`.
pub fn cofinality(s: &Functor, f: &Arc<SFunctor>) -> Result<Canonical> {
    let fs = Arc::new(f.precompose(s)?);
    let (lhs, lz) = bar_with_point(&fs)?;
    let (rhs, rz) = bar_with_point(f)?;
    let on_chains = lhs.nerve.map_along(&s.map, &rhs.nerve)?;
    let map = lhs.map_to(&rhs, |n, ch, w| {
        let (_, dn) = lhs.ends(n, ch);
        let (a, _) = lz.split(dn, n, w);
        (on_chains.apply(n, ch), rz.join(s.obj(dn), n, a, 0))
    })?;
    Ok(Canonical::new(map, lhs.g()?, rhs.g()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::CatAction;
    use crate::algebra::category::FinCategory;
    use crate::algebra::group::FinGroup;
    use crate::constructions::hocolim::hocolim;

    fn ordinal(n: usize) -> Arc<GCategory> {
        Arc::new(GCategory::with_trivial_action(FinCategory::ordinal(n), Arc::new(FinGroup::trivial())))
    }

    fn swapped_pair() -> Arc<GCategory> {
        let group = Arc::new(FinGroup::cyclic(2));
        let on = vec![vec![0, 1], vec![1, 0]];
        Arc::new(GCategory::new(FinCategory::discrete(2), CatAction::new(group, on.clone(), on).unwrap()).unwrap())
    }

    #[test]
    fn eq12_on_ordinal() {
        let f = Arc::new(SFunctor::point(ordinal(2), 3));
        let h = hocolim(&f).unwrap();
        assert!(bar_to_hocolim(&f, &h).unwrap().iso().is_iso);
    }

    #[test]
    fn to_colim_collapses_interval() {
        let f = Arc::new(SFunctor::point(ordinal(1), 2));
        let h = hocolim(&f).unwrap();
        let (m, c) = to_colim(&h).unwrap();
        assert_eq!(c.space.counts(), &[1, 1, 1]);
        assert!(m.equivariance().is_valid());
        assert!(to_nerve(&h).unwrap().iso().is_iso);
    }

    #[test]
    fn eq1_and_eq2_on_swapped_pair() {
        let c = swapped_pair();
        let f = Arc::new(SFunctor::point(c.clone(), 2));
        let t = Arc::new(SFunctor::point(Arc::new(c.opposite()), 2));
        let z = Arc::new(SFunctor::external_product(&f, &t).unwrap());
        assert!(coend_to_bar(&c, &z).unwrap().iso().is_iso);
        assert!(coend_to_bar_ft(&f, &t).unwrap().iso().is_iso);
    }

    #[test]
    fn eq22_on_ordinals() {
        let (c, d) = (ordinal(1), ordinal(1));
        let f = Arc::new(SFunctor::point(c.clone(), 2));
        let t = Arc::new(SFunctor::point(Arc::new(GCategory::product(&c.opposite(), &d).unwrap()), 2));
        let u = Arc::new(SFunctor::point(Arc::new(d.opposite()), 2));
        assert!(assoc(&f, &t, &u, &d).unwrap().iso().is_iso);
    }

    #[test]
    fn eq7_eq11_prop3_on_ordinal() {
        let c = ordinal(2);
        let id = Functor::identity(c.clone());
        let f = Arc::new(SFunctor::point(c.clone(), 2));
        assert!(reduction(&id, &f).unwrap().iso().is_iso);
        assert!(comma_collapse(&c, 2).unwrap().is_iso());
        assert!(prop3a(&id, 2).unwrap().0.is_iso());
        assert!(prop3b(&id, &f).unwrap().is_iso());
        assert!(prop3b_bar(&id, &f).unwrap().validate().is_valid());
        assert!(initial_collapse(&c, 0, 2).unwrap().iso().is_iso);
    }

    #[test]
    fn theorem_maps_build() {
        let c = ordinal(1);
        let id = Functor::identity(c.clone());
        let f = Arc::new(SFunctor::point(c.clone(), 2));
        assert!(thickening_hocolim(&f).unwrap().equivariance().is_valid());
        assert!(pushdown(&id, &f).unwrap().0.equivariance().is_valid());
        assert!(cofinality(&id, &f).unwrap().iso().is_iso);
        let t = Arc::new(SFunctor::point(Arc::new(c.opposite()), 2));
        let z = Arc::new(SFunctor::external_product(&f, &t).unwrap());
        assert!(thickening_bar(&c, &z).unwrap().equivariance().is_valid());
    }

    fn swapped_arrows() -> Arc<GCategory> {
        let a = swapped_pair();
        let b = GCategory::with_trivial_action(FinCategory::ordinal(1), a.group().clone());
        Arc::new(GCategory::product(&a, &b).unwrap())
    }

    fn cyclic_loop() -> Arc<GCategory> {
        let g = FinGroup::cyclic(2);
        Arc::new(GCategory::with_trivial_action(FinCategory::one_object(&g), Arc::new(FinGroup::cyclic(2))))
    }

    #[test]
    fn isomorphisms_with_a_hom_functor_and_an_action() {
        for c in [swapped_arrows(), cyclic_loop()] {
            let top = 3;
            let id = Functor::identity(c.clone());
            let ob = c.cat.object_count();
            let f = Arc::new(SFunctor::point(c.clone(), top));
            let h = hocolim(&f).unwrap();
            assert!(bar_to_hocolim(&f, &h).unwrap().iso().is_iso);
            assert!(reduction(&id, &f).unwrap().iso().is_iso);
            assert!(comma_collapse(&c, top).unwrap().is_iso());
            assert!(prop3a(&id, top).unwrap().0.is_iso());
            assert!(prop3b(&id, &f).unwrap().is_iso());
            let t = Arc::new(SFunctor::point(Arc::new(c.opposite()), top));
            assert!(coend_to_bar_ft(&f, &t).unwrap().iso().is_iso);
            let z = Arc::new(crate::constructions::hom::hom_bifunctor(&id, top).unwrap());
            assert!(coend_to_bar(&c, &z).unwrap().iso().is_iso);
            let hom = Arc::new(hom_into_image(&id, top).unwrap());
            assert!(assoc(&f, &hom, &t, &c).unwrap().iso().is_iso);
            assert!(cofinality(&id, &f).unwrap().iso().is_iso);
            for x in 0..ob {
                let m = initial_collapse(&c, x, top).unwrap();
                assert!(m.iso().is_iso, "object {x}");
            }
        }
    }
}
