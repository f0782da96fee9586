//! Functors `Z: C × C^op → SSet`, read lazily.
//!
//! `Z(x, y)` is covariant in `x` and contravariant in `y`. For a morphism
//! `f: x → x'`, `left(f, y)` is `Z(f, 1): Z(x, y) → Z(x', y)`; for
//! `h: y' → y`, `right(x, h)` is `Z(1, h): Z(x, y) → Z(x, y')`.

use std::sync::Arc;

use crate::algebra::action::GCategory;
use crate::algebra::gfunctor::SFunctor;
use crate::error::{Error, Result};

pub trait Bimodule: Sync {
    fn base(&self) -> &Arc<GCategory>;
    fn top(&self) -> usize;
    fn count(&self, x: usize, y: usize, n: usize) -> usize;
    fn face(&self, x: usize, y: usize, n: usize, i: usize, s: usize) -> usize;
    fn degen(&self, x: usize, y: usize, n: usize, i: usize, s: usize) -> usize;
    fn left(&self, f: usize, y: usize, n: usize, s: usize) -> usize;
    fn right(&self, x: usize, h: usize, n: usize, s: usize) -> usize;
    /// `η_{g,(x,y)}: Z(x, y) → Z(gx, gy)`.
    fn act(&self, g: usize, x: usize, y: usize, n: usize, s: usize) -> usize;
    fn label(&self, x: usize, y: usize, n: usize, s: usize) -> String;
}

/// True when `b` is `a` with every morphism reversed, indices and action
/// unchanged.
pub fn is_opposite(a: &GCategory, b: &GCategory) -> bool {
    let (ca, cb) = (&a.cat, &b.cat);
    ca.object_count() == cb.object_count()
        && ca.morphism_count() == cb.morphism_count()
        && (0..ca.morphism_count()).all(|f| ca.src(f) == cb.tgt(f) && ca.tgt(f) == cb.src(f))
        && (0..ca.object_count()).all(|x| ca.identity(x) == cb.identity(x))
        && a.action.object_tables() == b.action.object_tables()
        && a.action.morphism_tables() == b.action.morphism_tables()
        && a.group() == b.group()
}

/// `(x, y) ↦ F(x) × T(y)` for `F` on `C` and `T` on `C^op`. The pair
/// `(a, b)` has index `a * |T(y)_n| + b`.
#[derive(Clone, Debug)]
pub struct Tensorand {
    pub f: Arc<SFunctor>,
    pub t: Arc<SFunctor>,
}

impl Tensorand {
    pub fn new(f: Arc<SFunctor>, t: Arc<SFunctor>) -> Result<Self> {
        if !is_opposite(&f.domain, &t.domain) {
            return Err(Error::Signature("second functor is not defined on the opposite category".into()));
        }
        if f.top() != t.top() {
            return Err(Error::TruncationMismatch(f.top(), t.top()));
        }
        Ok(Self { f, t })
    }

    pub fn split(&self, y: usize, n: usize, s: usize) -> (usize, usize) {
        let w = self.t.value(y).count(n);
        (s / w, s % w)
    }

    pub fn join(&self, y: usize, n: usize, a: usize, b: usize) -> usize {
        a * self.t.value(y).count(n) + b
    }
}

impl Bimodule for Tensorand {
    fn base(&self) -> &Arc<GCategory> {
        &self.f.domain
    }

    fn top(&self) -> usize {
        self.f.top()
    }

    fn count(&self, x: usize, y: usize, n: usize) -> usize {
        self.f.value(x).count(n) * self.t.value(y).count(n)
    }

    fn face(&self, x: usize, y: usize, n: usize, i: usize, s: usize) -> usize {
        let (a, b) = self.split(y, n, s);
        self.join(y, n - 1, self.f.value(x).face(n, i, a), self.t.value(y).face(n, i, b))
    }

    fn degen(&self, x: usize, y: usize, n: usize, i: usize, s: usize) -> usize {
        let (a, b) = self.split(y, n, s);
        self.join(y, n + 1, self.f.value(x).degen(n, i, a), self.t.value(y).degen(n, i, b))
    }

    fn left(&self, f: usize, y: usize, n: usize, s: usize) -> usize {
        let (a, b) = self.split(y, n, s);
        self.join(y, n, self.f.apply(f, n, a), b)
    }

    fn right(&self, _x: usize, h: usize, n: usize, s: usize) -> usize {
        let y = self.t.domain.cat.src(h);
        let (a, b) = self.split(y, n, s);
        self.join(self.t.domain.cat.tgt(h), n, a, self.t.apply(h, n, b))
    }

    fn act(&self, g: usize, x: usize, y: usize, n: usize, s: usize) -> usize {
        let (a, b) = self.split(y, n, s);
        let gy = self.t.domain.action.obj(g, y);
        self.join(gy, n, self.f.act(g, x, n, a), self.t.act(g, y, n, b))
    }

    fn label(&self, x: usize, y: usize, n: usize, s: usize) -> String {
        let (a, b) = self.split(y, n, s);
        format!("({}, {})", self.f.value(x).label(n, a), self.t.value(y).label(n, b))
    }
}

/// The fiber over `p` of `(x, y; p) ↦ A(x, p) × B(y, p)`, for `A` on
/// `C × P` and `B` on `C^op × P`.
///
/// `act` lands in the fiber over `gp`; it is an action on this fiber only
/// when `p` is fixed.
#[derive(Clone, Debug)]
pub struct ParamTensorand {
    pub base: Arc<GCategory>,
    pub a: Arc<SFunctor>,
    pub b: Arc<SFunctor>,
    pub param: Arc<GCategory>,
    pub p: usize,
}

impl ParamTensorand {
    /// `param` is the parameter category `P`; `a` and `b` must be defined on
    /// `C × P` and `C^op × P`.
    pub fn new(base: Arc<GCategory>, param: Arc<GCategory>, a: Arc<SFunctor>, b: Arc<SFunctor>, p: usize) -> Result<Self> {
        let expect_a = GCategory::product(&base, &param)?;
        let expect_b = GCategory::product(&base.opposite(), &param)?;
        if a.domain.cat != expect_a.cat || b.domain.cat != expect_b.cat {
            return Err(Error::Signature("parametrized factors on the wrong categories".into()));
        }
        if a.top() != b.top() {
            return Err(Error::TruncationMismatch(a.top(), b.top()));
        }
        Ok(Self { base, a, b, param, p })
    }

    /// The fiber over another parameter object.
    pub fn at(&self, p: usize) -> Self {
        Self { p, ..self.clone() }
    }

    pub fn obj(&self, x: usize, p: usize) -> usize {
        x * self.param.cat.object_count() + p
    }

    pub fn mor(&self, f: usize, m: usize) -> usize {
        f * self.param.cat.morphism_count() + m
    }

    fn param_identity(&self) -> usize {
        self.param.cat.identity(self.p)
    }

    pub fn b_count(&self, y: usize, p: usize, n: usize) -> usize {
        self.b.value(self.obj(y, p)).count(n)
    }

    pub fn split_at(&self, y: usize, p: usize, n: usize, s: usize) -> (usize, usize) {
        let w = self.b_count(y, p, n);
        (s / w, s % w)
    }

    pub fn join_at(&self, y: usize, p: usize, n: usize, a: usize, b: usize) -> usize {
        a * self.b_count(y, p, n) + b
    }

    /// `Z(x, y; m)` for a morphism `m: p → p'` of the parameter category.
    pub fn along(&self, x: usize, y: usize, m: usize, target_p: usize, n: usize, s: usize) -> usize {
        let cx = &self.base.cat;
        let (a, b) = self.split_at(y, self.p, n, s);
        let a2 = self.a.apply(self.mor(cx.identity(x), m), n, a);
        let b2 = self.b.apply(self.mor(cx.identity(y), m), n, b);
        self.join_at(y, target_p, n, a2, b2)
    }
}

impl Bimodule for ParamTensorand {
    fn base(&self) -> &Arc<GCategory> {
        &self.base
    }

    fn top(&self) -> usize {
        self.a.top()
    }

    fn count(&self, x: usize, y: usize, n: usize) -> usize {
        self.a.value(self.obj(x, self.p)).count(n) * self.b_count(y, self.p, n)
    }

    fn face(&self, x: usize, y: usize, n: usize, i: usize, s: usize) -> usize {
        let (a, b) = self.split_at(y, self.p, n, s);
        let a2 = self.a.value(self.obj(x, self.p)).face(n, i, a);
        let b2 = self.b.value(self.obj(y, self.p)).face(n, i, b);
        self.join_at(y, self.p, n - 1, a2, b2)
    }

    fn degen(&self, x: usize, y: usize, n: usize, i: usize, s: usize) -> usize {
        let (a, b) = self.split_at(y, self.p, n, s);
        let a2 = self.a.value(self.obj(x, self.p)).degen(n, i, a);
        let b2 = self.b.value(self.obj(y, self.p)).degen(n, i, b);
        self.join_at(y, self.p, n + 1, a2, b2)
    }

    fn left(&self, f: usize, y: usize, n: usize, s: usize) -> usize {
        let (a, b) = self.split_at(y, self.p, n, s);
        self.join_at(y, self.p, n, self.a.apply(self.mor(f, self.param_identity()), n, a), b)
    }

    fn right(&self, _x: usize, h: usize, n: usize, s: usize) -> usize {
        let c = &self.base.cat;
        let (a, b) = self.split_at(c.tgt(h), self.p, n, s);
        let b2 = self.b.apply(self.mor(h, self.param_identity()), n, b);
        self.join_at(c.src(h), self.p, n, a, b2)
    }

    fn act(&self, g: usize, x: usize, y: usize, n: usize, s: usize) -> usize {
        let (a, b) = self.split_at(y, self.p, n, s);
        let gp = self.param.action.obj(g, self.p);
        let gy = self.base.action.obj(g, y);
        let a2 = self.a.act(g, self.obj(x, self.p), n, a);
        let b2 = self.b.act(g, self.obj(y, self.p), n, b);
        self.join_at(gy, gp, n, a2, b2)
    }

    fn label(&self, x: usize, y: usize, n: usize, s: usize) -> String {
        let (a, b) = self.split_at(y, self.p, n, s);
        format!(
            "({}, {})",
            self.a.value(self.obj(x, self.p)).label(n, a),
            self.b.value(self.obj(y, self.p)).label(n, b)
        )
    }
}

/// A bimodule stored as an [`SFunctor`] on `C × C^op`.
#[derive(Clone, Debug)]
pub struct OnSquare {
    pub base: Arc<GCategory>,
    pub z: Arc<SFunctor>,
}

impl OnSquare {
    pub fn new(base: Arc<GCategory>, z: Arc<SFunctor>) -> Result<Self> {
        if z.domain.cat != base.twisted_square().cat {
            return Err(Error::Signature("bimodule is not defined on C × C^op".into()));
        }
        Ok(Self { base, z })
    }

    fn obj(&self, x: usize, y: usize) -> usize {
        x * self.base.cat.object_count() + y
    }

    fn mor(&self, f: usize, h: usize) -> usize {
        f * self.base.cat.morphism_count() + h
    }
}

impl Bimodule for OnSquare {
    fn base(&self) -> &Arc<GCategory> {
        &self.base
    }

    fn top(&self) -> usize {
        self.z.top()
    }

    fn count(&self, x: usize, y: usize, n: usize) -> usize {
        self.z.value(self.obj(x, y)).count(n)
    }

    fn face(&self, x: usize, y: usize, n: usize, i: usize, s: usize) -> usize {
        self.z.value(self.obj(x, y)).face(n, i, s)
    }

    fn degen(&self, x: usize, y: usize, n: usize, i: usize, s: usize) -> usize {
        self.z.value(self.obj(x, y)).degen(n, i, s)
    }

    fn left(&self, f: usize, y: usize, n: usize, s: usize) -> usize {
        self.z.apply(self.mor(f, self.base.cat.identity(y)), n, s)
    }

    fn right(&self, x: usize, h: usize, n: usize, s: usize) -> usize {
        self.z.apply(self.mor(self.base.cat.identity(x), h), n, s)
    }

    fn act(&self, g: usize, x: usize, y: usize, n: usize, s: usize) -> usize {
        self.z.act(g, self.obj(x, y), n, s)
    }

    fn label(&self, x: usize, y: usize, n: usize, s: usize) -> String {
        self.z.value(self.obj(x, y)).label(n, s)
    }
}
