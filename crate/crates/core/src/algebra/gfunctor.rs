//! Right G-functors: functors out of a G-category together with the
//! family `η_{g,X}: F(X) → F(gX)`.

use std::sync::Arc;

use crate::algebra::action::{stabilizer, GCategory};
use crate::algebra::category::{CatMap, FinCategory};
use crate::algebra::functor::Functor;
use crate::algebra::group::Subgroup;
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::simplicial::gsset::GSSet;
use crate::simplicial::ops::{product, product_map};
use crate::simplicial::sset::{LevelMap, SSet};

/// A right G-functor valued in truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFunctor {
    pub domain: Arc<GCategory>,
    values: Vec<Arc<SSet>>,
    maps: Vec<LevelMap>,
    /// `eta[g][x]: F(x) → F(gx)`.
    eta: Vec<Vec<LevelMap>>,
}

impl SFunctor {
    pub fn new(domain: Arc<GCategory>, values: Vec<Arc<SSet>>, maps: Vec<LevelMap>, eta: Vec<Vec<LevelMap>>) -> Result<Self> {
        let f = Self::from_parts(domain, values, maps, eta)?;
        f.validate().into_result()?;
        Ok(f)
    }

    /// Shape checks only.
    pub fn from_parts(
        domain: Arc<GCategory>,
        values: Vec<Arc<SSet>>,
        maps: Vec<LevelMap>,
        eta: Vec<Vec<LevelMap>>,
    ) -> Result<Self> {
        let c = &domain.cat;
        if values.len() != c.object_count() {
            return Err(Error::Format(format!("{} values for {} objects", values.len(), c.object_count())));
        }
        if maps.len() != c.morphism_count() {
            return Err(Error::Format(format!("{} maps for {} morphisms", maps.len(), c.morphism_count())));
        }
        let top = values.first().map(|v| v.top());
        for v in &values {
            if Some(v.top()) != top {
                return Err(Error::TruncationMismatch(top.unwrap_or(0), v.top()));
            }
        }
        for (f, m) in maps.iter().enumerate() {
            m.check_shape(&values[c.src(f)], &values[c.tgt(f)])
                .map_err(|e| Error::Format(format!("map of morphism {f}: {e}")))?;
        }
        let group = domain.group();
        if eta.len() != group.order() {
            return Err(Error::Format(format!("η lists {} elements, group has {}", eta.len(), group.order())));
        }
        for g in group.elements() {
            if eta[g].len() != c.object_count() {
                return Err(Error::Format(format!("η for element {g} lists {} objects", eta[g].len())));
            }
            for x in 0..c.object_count() {
                eta[g][x]
                    .check_shape(&values[x], &values[domain.action.obj(g, x)])
                    .map_err(|e| Error::Format(format!("η for (g, X) = ({g}, {x}): {e}")))?;
            }
        }
        Ok(Self { domain, values, maps, eta })
    }

    /// Constant functor with value `k`, where `η_{g,X}` is the action of `g`
    /// on `k`.
    pub fn constant(domain: Arc<GCategory>, k: &GSSet) -> Result<Self> {
        if domain.group() != &k.group {
            return Err(Error::Signature("constant value acted on by a different group".into()));
        }
        let c = &domain.cat;
        let space = k.space.clone();
        let id = LevelMap::identity(&space);
        let values = vec![space; c.object_count()];
        let maps = vec![id; c.morphism_count()];
        let eta = domain
            .group()
            .elements()
            .map(|g| vec![k.action_levels(g).clone(); c.object_count()])
            .collect();
        Ok(Self { domain, values, maps, eta })
    }

    /// The constant functor `*` with value the point.
    pub fn point(domain: Arc<GCategory>, top: usize) -> Self {
        let k = GSSet::trivial(Arc::new(SSet::point(top)), domain.group().clone());
        Self::constant(domain, &k).expect("same group")
    }

    pub fn top(&self) -> usize {
        self.values[0].top()
    }

    pub fn value(&self, x: usize) -> &Arc<SSet> {
        &self.values[x]
    }

    pub fn values(&self) -> &[Arc<SSet>] {
        &self.values
    }

    pub fn map(&self, f: usize) -> &LevelMap {
        &self.maps[f]
    }

    pub fn maps(&self) -> &[LevelMap] {
        &self.maps
    }

    pub fn eta(&self, g: usize, x: usize) -> &LevelMap {
        &self.eta[g][x]
    }

    pub fn eta_tables(&self) -> &[Vec<LevelMap>] {
        &self.eta
    }

    pub fn apply(&self, f: usize, n: usize, s: usize) -> usize {
        self.maps[f].apply(n, s)
    }

    pub fn act(&self, g: usize, x: usize, n: usize, s: usize) -> usize {
        self.eta[g][x].apply(n, s)
    }

    /// Functor axioms, simpliciality of every map, and the three conditions
    /// on `η`: unit, cocycle, naturality.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let dom = &self.domain;
        let c = &dom.cat;
        for (x, v) in self.values.iter().enumerate() {
            report.absorb(&format!("value at object {x}"), v.validate());
        }
        for f in 0..c.morphism_count() {
            report.absorb(
                &format!("map of morphism {f}"),
                self.maps[f].validate(&self.values[c.src(f)], &self.values[c.tgt(f)]),
            );
        }
        for x in 0..c.object_count() {
            if self.maps[c.identity(x)] != LevelMap::identity(&self.values[x]) {
                report.push("functor does not preserve identities", format!("object {x}"));
            }
        }
        for (g, f, h) in c.composition_entries() {
            if self.maps[g].after(&self.maps[f]) != self.maps[h] {
                report.push("functor does not preserve composition", format!("({g}, {f})"));
            }
        }
        let group = dom.group();
        for g in group.elements() {
            for x in 0..c.object_count() {
                report.absorb(
                    &format!("η for (g, X) = ({g}, {x})"),
                    self.eta[g][x].validate(&self.values[x], &self.values[dom.action.obj(g, x)]),
                );
            }
        }
        if !report.is_valid() {
            return report;
        }
        for x in 0..c.object_count() {
            if self.eta[0][x] != LevelMap::identity(&self.values[x]) {
                report.push("η axiom (1): η_{1,X} ≠ id", format!("X = {x}"));
            }
        }
        for g1 in group.elements() {
            for g2 in group.elements() {
                for x in 0..c.object_count() {
                    let lhs = self.eta[g1][dom.action.obj(g2, x)].after(&self.eta[g2][x]);
                    if lhs != self.eta[group.mul(g1, g2)][x] {
                        report.push(
                            "η axiom (2): η_{g1,g2X} ∘ η_{g2,X} ≠ η_{g1g2,X}",
                            format!("(g1, g2, X) = ({g1}, {g2}, {x})"),
                        );
                    }
                }
            }
        }
        for g in group.elements() {
            for f in 0..c.morphism_count() {
                let lhs = self.eta[g][c.tgt(f)].after(&self.maps[f]);
                let rhs = self.maps[dom.action.mor(g, f)].after(&self.eta[g][c.src(f)]);
                if lhs != rhs {
                    report.push("η axiom (3): η_{g,Y} ∘ F(f) ≠ F(gf) ∘ η_{g,X}", format!("(g, f) = ({g}, {f})"));
                }
            }
        }
        report
    }

    /// Every value truncated to degree `k`.
    pub fn truncated(&self, k: usize) -> Result<SFunctor> {
        let values = self.values.iter().map(|v| v.truncated(k).map(Arc::new)).collect::<Result<Vec<_>>>()?;
        let maps = self.maps.iter().map(|m| m.truncated(k)).collect();
        let eta = self.eta.iter().map(|row| row.iter().map(|m| m.truncated(k)).collect()).collect();
        Ok(SFunctor { domain: self.domain.clone(), values, maps, eta })
    }

    /// `F ∘ S` for an equivariant `S`, with `η_{g,D} := η_{g,S(D)}`.
    pub fn precompose(&self, s: &Functor) -> Result<SFunctor> {
        if s.target.as_ref() != self.domain.as_ref() {
            return Err(Error::Signature("precomposed functor does not land in the domain".into()));
        }
        s.require_equivariant()?;
        let d = &s.source.cat;
        let values = (0..d.object_count()).map(|x| self.values[s.obj(x)].clone()).collect();
        let maps = (0..d.morphism_count()).map(|f| self.maps[s.mor(f)].clone()).collect();
        let eta = s
            .source
            .group()
            .elements()
            .map(|g| (0..d.object_count()).map(|x| self.eta[g][s.obj(x)].clone()).collect())
            .collect();
        Ok(SFunctor { domain: s.source.clone(), values, maps, eta })
    }

    /// `T ∘ F` for a functor `T` on simplicial sets; `η` becomes `T(η)`.
    pub fn postcompose(&self, t: &dyn ValueFunctor) -> SFunctor {
        let c = &self.domain.cat;
        let values: Vec<Arc<SSet>> = self.values.iter().map(|v| Arc::new(t.on_value(v))).collect();
        let maps = (0..c.morphism_count())
            .map(|f| t.on_map(&self.maps[f], &self.values[c.src(f)], &self.values[c.tgt(f)]))
            .collect();
        let eta = self
            .domain
            .group()
            .elements()
            .map(|g| {
                (0..c.object_count())
                    .map(|x| t.on_map(&self.eta[g][x], &self.values[x], &self.values[self.domain.action.obj(g, x)]))
                    .collect()
            })
            .collect();
        SFunctor { domain: self.domain.clone(), values, maps, eta }
    }

    /// `(a, b) ↦ F(a) × T(b)` on the product of the two domains, with the
    /// diagonal `η`.
    pub fn external_product(f: &SFunctor, t: &SFunctor) -> Result<SFunctor> {
        let domain = Arc::new(GCategory::product(&f.domain, &t.domain)?);
        let (ob, mb) = (t.domain.cat.object_count(), t.domain.cat.morphism_count());
        let cat = &domain.cat;
        let mut values = Vec::with_capacity(cat.object_count());
        for p in 0..cat.object_count() {
            values.push(Arc::new(product(f.value(p / ob), t.value(p % ob))?.0));
        }
        let maps = (0..cat.morphism_count())
            .map(|m| {
                let (a, b) = (m / mb, m % mb);
                let (tb_src, tb_tgt) = (t.domain.cat.src(b), t.domain.cat.tgt(b));
                product_map(f.map(a), t.map(b), t.value(tb_src), t.value(tb_tgt))
            })
            .collect();
        let eta = domain
            .group()
            .elements()
            .map(|g| {
                (0..cat.object_count())
                    .map(|p| {
                        let (a, b) = (p / ob, p % ob);
                        product_map(f.eta(g, a), t.eta(g, b), t.value(b), t.value(t.domain.action.obj(g, b)))
                    })
                    .collect()
            })
            .collect();
        Ok(SFunctor { domain, values, maps, eta })
    }

    /// The same functor over `domain`, which must be this domain acted on by a
    /// subgroup through `embed` (see [`GCategory::restrict`]).
    pub fn restrict(&self, domain: Arc<GCategory>, embed: &[usize]) -> Result<SFunctor> {
        if domain.cat != self.domain.cat {
            return Err(Error::Signature("restriction to a different category".into()));
        }
        let eta = embed.iter().map(|&g| self.eta[g].clone()).collect();
        SFunctor::from_parts(domain, self.values.clone(), self.maps.clone(), eta)
    }

    /// `F(X)` as a `G_X`-object through `η_{g,X}`, `g ∈ G_X`. The returned
    /// space is acted on by the stabilizer as a group of its own; the
    /// subgroup records the embedding into `G`.
    pub fn restrict_action(&self, x: usize) -> Result<(GSSet, Subgroup)> {
        let stab = stabilizer(&self.domain.action, x)?;
        let (group, embed) = stab.as_group();
        let action = embed.iter().map(|&g| self.eta[g][x].clone()).collect();
        let restricted = GSSet::new(self.values[x].clone(), Arc::new(group), action)?;
        Ok((restricted, stab))
    }
}

/// A functor from simplicial sets to simplicial sets, for postcomposition.
pub trait ValueFunctor {
    fn on_value(&self, x: &SSet) -> SSet;
    fn on_map(&self, f: &LevelMap, source: &SSet, target: &SSet) -> LevelMap;
}

/// `X ↦ X × K`.
pub struct ProductWith(pub Arc<SSet>);

impl ValueFunctor for ProductWith {
    fn on_value(&self, x: &SSet) -> SSet {
        product(x, &self.0).expect("matching truncation").0
    }

    fn on_map(&self, f: &LevelMap, _source: &SSet, _target: &SSet) -> LevelMap {
        product_map(f, &LevelMap::identity(&self.0), &self.0, &self.0)
    }
}

/// A morphism of right G-functors (a natural transformation compatible with
/// both `η` families).
#[derive(Clone, Debug)]
pub struct GFunctorMorphism {
    pub source: Arc<SFunctor>,
    pub target: Arc<SFunctor>,
    pub components: Vec<LevelMap>,
}

impl GFunctorMorphism {
    pub fn new(source: Arc<SFunctor>, target: Arc<SFunctor>, components: Vec<LevelMap>) -> Result<Self> {
        if source.domain != target.domain {
            return Err(Error::Signature("morphism between functors on different categories".into()));
        }
        if components.len() != source.domain.cat.object_count() {
            return Err(Error::Format("one component per object required".into()));
        }
        for (x, c) in components.iter().enumerate() {
            c.check_shape(source.value(x), target.value(x))?;
        }
        Ok(Self { source, target, components })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let dom = &self.source.domain;
        let c = &dom.cat;
        for x in 0..c.object_count() {
            report.absorb(
                &format!("component at {x}"),
                self.components[x].validate(self.source.value(x), self.target.value(x)),
            );
        }
        for f in 0..c.morphism_count() {
            let lhs = self.components[c.tgt(f)].after(self.source.map(f));
            let rhs = self.target.map(f).after(&self.components[c.src(f)]);
            if lhs != rhs {
                report.push("naturality", format!("morphism {f}"));
            }
        }
        for g in dom.group().elements() {
            for x in 0..c.object_count() {
                let lhs = self.target.eta(g, x).after(&self.components[x]);
                let rhs = self.components[dom.action.obj(g, x)].after(self.source.eta(g, x));
                if lhs != rhs {
                    report.push("η²_{g,X} ∘ ε_X ≠ ε_{gX} ∘ η¹_{g,X}", format!("(g, X) = ({g}, {x})"));
                }
            }
        }
        report
    }
}

/// A right G-functor valued in finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatGFunctor {
    pub domain: Arc<GCategory>,
    pub values: Vec<Arc<FinCategory>>,
    pub maps: Vec<CatMap>,
    pub eta: Vec<Vec<CatMap>>,
}

impl CatGFunctor {
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let dom = &self.domain;
        let c = &dom.cat;
        if self.values.len() != c.object_count() || self.maps.len() != c.morphism_count() {
            report.push("functor shape", "values or maps do not match the domain");
            return report;
        }
        for (x, v) in self.values.iter().enumerate() {
            report.absorb(&format!("value at object {x}"), v.validate());
        }
        for f in 0..c.morphism_count() {
            report.absorb(
                &format!("functor of morphism {f}"),
                self.maps[f].validate(&self.values[c.src(f)], &self.values[c.tgt(f)]),
            );
        }
        for g in dom.group().elements() {
            for x in 0..c.object_count() {
                report.absorb(
                    &format!("η for (g, X) = ({g}, {x})"),
                    self.eta[g][x].validate(&self.values[x], &self.values[dom.action.obj(g, x)]),
                );
            }
        }
        if !report.is_valid() {
            return report;
        }
        for x in 0..c.object_count() {
            if self.maps[c.identity(x)] != CatMap::identity(&self.values[x]) {
                report.push("functor does not preserve identities", format!("object {x}"));
            }
            if self.eta[0][x] != CatMap::identity(&self.values[x]) {
                report.push("η axiom (1): η_{1,X} ≠ id", format!("X = {x}"));
            }
        }
        for (g, f, h) in c.composition_entries() {
            if self.maps[g].after(&self.maps[f]) != self.maps[h] {
                report.push("functor does not preserve composition", format!("({g}, {f})"));
            }
        }
        let group = dom.group();
        for g1 in group.elements() {
            for g2 in group.elements() {
                for x in 0..c.object_count() {
                    if self.eta[g1][dom.action.obj(g2, x)].after(&self.eta[g2][x]) != self.eta[group.mul(g1, g2)][x] {
                        report.push("η axiom (2)", format!("(g1, g2, X) = ({g1}, {g2}, {x})"));
                    }
                }
            }
        }
        for g in group.elements() {
            for f in 0..c.morphism_count() {
                let lhs = self.eta[g][c.tgt(f)].after(&self.maps[f]);
                let rhs = self.maps[dom.action.mor(g, f)].after(&self.eta[g][c.src(f)]);
                if lhs != rhs {
                    report.push("η axiom (3)", format!("(g, f) = ({g}, {f})"));
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::CatAction;
    use crate::algebra::group::FinGroup;

    fn swapped_pair() -> Arc<GCategory> {
        let group = Arc::new(FinGroup::cyclic(2));
        let on = vec![vec![0, 1], vec![1, 0]];
        let action = CatAction::new(group, on.clone(), on).unwrap();
        Arc::new(GCategory::new(FinCategory::discrete(2), action).unwrap())
    }

    #[test]
    fn point_functor_is_valid() {
        let f = SFunctor::point(swapped_pair(), 2);
        assert!(f.validate().is_valid());
    }

    #[test]
    fn broken_unit_axiom_is_cited() {
        let c = Arc::new(GCategory::with_trivial_action(FinCategory::terminal(), Arc::new(FinGroup::cyclic(2))));
        let two = Arc::new(SSet::discrete(1, 2));
        let id = LevelMap::identity(&two);
        let swap = LevelMap(vec![vec![1, 0]; 2]);
        // η_{1,X} is the swap: axiom (1) fails
        let f = SFunctor::from_parts(c, vec![two], vec![id.clone()], vec![vec![swap], vec![id]]).unwrap();
        let report = f.validate();
        assert!(report.violations.iter().any(|v| v.rule.starts_with("η axiom (1)")));
    }

    #[test]
    fn restriction_to_free_orbit_is_trivial() {
        let f = SFunctor::point(swapped_pair(), 1);
        let (gx, stab) = f.restrict_action(0).unwrap();
        assert_eq!(stab.order(), 1);
        assert_eq!(gx.group.order(), 1);
    }

    #[test]
    fn precompose_with_identity_is_unchanged() {
        let c = swapped_pair();
        let f = SFunctor::point(c.clone(), 2);
        let g = f.precompose(&Functor::identity(c)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn postcompose_product_with_interval_stays_valid() {
        let f = SFunctor::point(swapped_pair(), 2);
        let t = ProductWith(Arc::new(SSet::standard(1, 2)));
        let g = f.postcompose(&t);
        assert!(g.validate().is_valid());
        assert_eq!(g.value(0).counts(), &[2, 3, 4]);
    }
}
