use std::collections::HashMap;

use crate::algebra::group::FinGroup;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Default caps on input categories; derived categories are not capped.
pub const DEFAULT_MAX_OBJECTS: usize = 8;
pub const DEFAULT_MAX_MORPHISMS: usize = 40;

/// A finite category with an explicit composition table.
///
/// `compose(g, f)` is `g ∘ f`, "g after f", defined exactly when
/// `tgt(f) == src(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    object_labels: Vec<String>,
    morphism_labels: Vec<String>,
}

impl FinCategory {
    /// Builds a category from its tables, checking only shapes and ranges.
    ///
    /// `morphisms` lists `(src, tgt)`; `identity[x]` names the identity of
    /// `x`; each `(g, f, h)` in `comp` records `g ∘ f = h`.
    pub fn from_parts(
        objects: usize,
        morphisms: Vec<(usize, usize)>,
        identity: Vec<usize>,
        comp: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let m = morphisms.len();
        for (i, &(s, t)) in morphisms.iter().enumerate() {
            if s >= objects || t >= objects {
                return Err(Error::Format(format!("morphism {i} has endpoint outside {objects} objects")));
            }
        }
        if identity.len() != objects {
            return Err(Error::Format(format!(
                "{} identities listed for {objects} objects",
                identity.len()
            )));
        }
        for (x, &id) in identity.iter().enumerate() {
            if id >= m || morphisms[id] != (x, x) {
                return Err(Error::Format(format!("identity of object {x} is not an endomorphism of {x}")));
            }
        }
        let mut table = HashMap::new();
        for (g, f, h) in comp {
            if g >= m || f >= m || h >= m {
                return Err(Error::Format(format!("composition entry ({g}, {f}, {h}) out of range")));
            }
            if morphisms[f].1 != morphisms[g].0 {
                return Err(Error::Format(format!("composition entry for non-composable pair ({g}, {f})")));
            }
            if let Some(prev) = table.insert((g, f), h) {
                if prev != h {
                    return Err(Error::Format(format!("conflicting composition entries for ({g}, {f})")));
                }
            }
        }
        let mut out = vec![Vec::new(); objects];
        let mut inc = vec![Vec::new(); objects];
        for (i, &(s, t)) in morphisms.iter().enumerate() {
            out[s].push(i);
            inc[t].push(i);
        }
        Ok(Self {
            objects,
            src: morphisms.iter().map(|p| p.0).collect(),
            tgt: morphisms.iter().map(|p| p.1).collect(),
            identity,
            comp: table,
            out,
            inc,
            object_labels: (0..objects).map(|x| x.to_string()).collect(),
            morphism_labels: (0..m).map(|f| format!("m{f}")).collect(),
        })
    }

    /// Like [`FinCategory::from_parts`], then fills in every missing
    /// composition with an identity, so only non-identity products need to
    /// be listed.
    pub fn from_parts_with_units(
        objects: usize,
        morphisms: Vec<(usize, usize)>,
        identity: Vec<usize>,
        comp: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let mut c = Self::from_parts(objects, morphisms, identity, comp)?;
        for f in 0..c.morphism_count() {
            let (s, t) = (c.src[f], c.tgt[f]);
            c.comp.entry((f, c.identity[s])).or_insert(f);
            c.comp.entry((c.identity[t], f)).or_insert(f);
        }
        Ok(c)
    }

    pub fn with_labels(mut self, objects: Vec<String>, morphisms: Vec<String>) -> Self {
        assert_eq!(objects.len(), self.objects);
        assert_eq!(morphisms.len(), self.src.len());
        self.object_labels = objects;
        self.morphism_labels = morphisms;
        self
    }

    pub fn discrete(n: usize) -> Self {
        Self::thin(n, |x, y| x == y)
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// The poset `[n] = {0 < 1 < … < n}` as a category.
    pub fn ordinal(n: usize) -> Self {
        Self::thin(n + 1, |x, y| x <= y)
    }

    /// The thin category of a reflexive, transitive relation. Morphisms are
    /// the related pairs in lexicographic order.
    pub fn thin(objects: usize, related: impl Fn(usize, usize) -> bool) -> Self {
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for x in 0..objects {
            for y in 0..objects {
                if related(x, y) {
                    index.insert((x, y), morphisms.len());
                    morphisms.push((x, y));
                }
            }
        }
        let identity: Vec<usize> = (0..objects).map(|x| index[&(x, x)]).collect();
        let mut comp = Vec::new();
        for (f, &(x, y)) in morphisms.iter().enumerate() {
            for (g, &(y2, z)) in morphisms.iter().enumerate() {
                if y == y2 {
                    comp.push((g, f, index[&(x, z)]));
                }
            }
        }
        let labels = morphisms.iter().map(|(x, y)| format!("{x}<={y}")).collect();
        Self::from_parts(objects, morphisms, identity, comp)
            .expect("thin category tables")
            .with_labels((0..objects).map(|x| x.to_string()).collect(), labels)
    }

    /// The one-object category of a group; morphism `g` is group element `g`.
    pub fn one_object(group: &FinGroup) -> Self {
        let n = group.order();
        let comp = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, group.mul(a, b)));
        Self::from_parts(1, vec![(0, 0); n], vec![0], comp)
            .expect("group category")
            .with_labels(vec!["*".into()], (0..n).map(|g| format!("g{g}")).collect())
    }

    /// Product category. Object `(x, y)` has index `x * |obj B| + y`,
    /// morphism `(f, h)` has index `f * |mor B| + h`.
    pub fn product(a: &FinCategory, b: &FinCategory) -> Self {
        let (ob, mb) = (b.objects, b.morphism_count());
        let objects = a.objects * ob;
        let mut morphisms = Vec::with_capacity(a.morphism_count() * mb);
        for f in 0..a.morphism_count() {
            for h in 0..mb {
                morphisms.push((a.src[f] * ob + b.src[h], a.tgt[f] * ob + b.tgt[h]));
            }
        }
        let identity = (0..objects).map(|p| a.identity[p / ob] * mb + b.identity[p % ob]).collect();
        let mut comp = Vec::new();
        for (&(g1, f1), &h1) in &a.comp {
            for (&(g2, f2), &h2) in &b.comp {
                comp.push((g1 * mb + g2, f1 * mb + f2, h1 * mb + h2));
            }
        }
        let object_labels = (0..objects)
            .map(|p| format!("({},{})", a.object_labels[p / ob], b.object_labels[p % ob]))
            .collect();
        let morphism_labels = (0..morphisms.len())
            .map(|f| format!("({},{})", a.morphism_labels[f / mb], b.morphism_labels[f % mb]))
            .collect();
        Self::from_parts(objects, morphisms, identity, comp)
            .expect("product tables")
            .with_labels(object_labels, morphism_labels)
    }

    /// Opposite category on the same object and morphism indices.
    pub fn opposite(&self) -> Self {
        let morphisms = (0..self.morphism_count()).map(|f| (self.tgt[f], self.src[f])).collect();
        let comp = self.comp.iter().map(|(&(g, f), &h)| (f, g, h));
        Self::from_parts(self.objects, morphisms, self.identity.clone(), comp)
            .expect("opposite tables")
            .with_labels(self.object_labels.clone(), self.morphism_labels.clone())
    }

    /// Full subcategory on `objects` (kept in the given order), with the
    /// inclusion.
    pub fn full_subcategory(&self, objects: &[usize]) -> (Self, CatMap) {
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let kept: Vec<usize> = (0..self.morphism_count())
            .filter(|&f| pos.contains_key(&self.src[f]) && pos.contains_key(&self.tgt[f]))
            .collect();
        let mpos: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms = kept.iter().map(|&f| (pos[&self.src[f]], pos[&self.tgt[f]])).collect();
        let identity = objects.iter().map(|&x| mpos[&self.identity[x]]).collect();
        let comp: Vec<_> = self
            .comp
            .iter()
            .filter(|((g, f), _)| mpos.contains_key(g) && mpos.contains_key(f))
            .map(|(&(g, f), &h)| (mpos[&g], mpos[&f], mpos[&h]))
            .collect();
        let sub = Self::from_parts(objects.len(), morphisms, identity, comp)
            .expect("full subcategory")
            .with_labels(
                objects.iter().map(|&x| self.object_labels[x].clone()).collect(),
                kept.iter().map(|&f| self.morphism_labels[f].clone()).collect(),
            );
        let inclusion = CatMap { on_objects: objects.to_vec(), on_morphisms: kept };
        (sub, inclusion)
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f
    }

    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    /// `g ∘ f`; panics when the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        match self.comp.get(&(g, f)) {
            Some(&h) => h,
            None => panic!("morphisms {g} and {f} are not composable"),
        }
    }

    pub fn composition_entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.comp.iter().map(|(&(g, f), &h)| (g, f, h))
    }

    /// Morphisms with the given source.
    pub fn out_of(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    /// Morphisms with the given target.
    pub fn into(&self, y: usize) -> &[usize] {
        &self.inc[y]
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[x].iter().copied().filter(move |&f| self.tgt[f] == y)
    }

    pub fn morphisms(&self) -> Vec<(usize, usize)> {
        (0..self.morphism_count()).map(|f| (self.src[f], self.tgt[f])).collect()
    }

    pub fn identities(&self) -> &[usize] {
        &self.identity
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.object_labels[x]
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        &self.morphism_labels[f]
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.morphism_count()).all(|f| self.is_identity(f))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let m = self.morphism_count();
        for f in 0..m {
            let (s, t) = (self.src[f], self.tgt[f]);
            if self.comp(f, self.identity[s]) != Some(f) {
                report.push("right unit: f ∘ 1 ≠ f", format!("morphism {f}"));
            }
            if self.comp(self.identity[t], f) != Some(f) {
                report.push("left unit: 1 ∘ f ≠ f", format!("morphism {f}"));
            }
            for &g in &self.out[t] {
                match self.comp(g, f) {
                    None => report.push("composition undefined for composable pair", format!("({g}, {f})")),
                    Some(h) => {
                        if self.src[h] != s || self.tgt[h] != self.tgt[g] {
                            report.push("composition does not respect source/target", format!("({g}, {f}) = {h}"));
                        }
                    }
                }
            }
        }
        if !report.is_valid() {
            return report;
        }
        for f in 0..m {
            for &g in &self.out[self.tgt[f]] {
                let gf = self.compose(g, f);
                for &h in &self.out[self.tgt[g]] {
                    let lhs = self.compose(h, gf);
                    let rhs = self.compose(self.compose(h, g), f);
                    if lhs != rhs {
                        report.push("associativity: (h∘g)∘f ≠ h∘(g∘f)", format!("(h, g, f) = ({h}, {g}, {f})"));
                    }
                }
            }
        }
        report
    }
}

/// Object and morphism assignment between two finite categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CatMap {
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl CatMap {
    pub fn identity(c: &FinCategory) -> Self {
        Self {
            on_objects: (0..c.object_count()).collect(),
            on_morphisms: (0..c.morphism_count()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CatMap) -> CatMap {
        CatMap {
            on_objects: first.on_objects.iter().map(|&x| self.on_objects[x]).collect(),
            on_morphisms: first.on_morphisms.iter().map(|&f| self.on_morphisms[f]).collect(),
        }
    }

    pub fn obj(&self, x: usize) -> usize {
        self.on_objects[x]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.on_morphisms[f]
    }

    /// Shape check against the given endpoints.
    pub fn check_shape(&self, source: &FinCategory, target: &FinCategory) -> Result<()> {
        if self.on_objects.len() != source.object_count() || self.on_morphisms.len() != source.morphism_count() {
            return Err(Error::Format("functor tables do not match the source category".into()));
        }
        if self.on_objects.iter().any(|&x| x >= target.object_count())
            || self.on_morphisms.iter().any(|&f| f >= target.morphism_count())
        {
            return Err(Error::Format("functor image outside the target category".into()));
        }
        Ok(())
    }

    pub fn validate(&self, source: &FinCategory, target: &FinCategory) -> ValidationReport {
        let mut report = ValidationReport::new();
        if let Err(e) = self.check_shape(source, target) {
            report.push("functor shape", e.to_string());
            return report;
        }
        for f in 0..source.morphism_count() {
            let img = self.on_morphisms[f];
            if target.src(img) != self.on_objects[source.src(f)] || target.tgt(img) != self.on_objects[source.tgt(f)] {
                report.push("functor does not preserve source/target", format!("morphism {f}"));
            }
        }
        for x in 0..source.object_count() {
            if self.on_morphisms[source.identity(x)] != target.identity(self.on_objects[x]) {
                report.push("functor does not preserve identities", format!("object {x}"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for (g, f, h) in source.composition_entries() {
            if target.comp(self.on_morphisms[g], self.on_morphisms[f]) != Some(self.on_morphisms[h]) {
                report.push("functor does not preserve composition", format!("({g}, {f})"));
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinal_one_has_three_morphisms() {
        let c = FinCategory::ordinal(1);
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 3);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn constructed_categories_validate() {
        let c = FinCategory::ordinal(2);
        let g = FinCategory::one_object(&FinGroup::symmetric(3));
        for cat in [
            FinCategory::discrete(3),
            FinCategory::product(&c, &c.opposite()),
            g.clone(),
            g.opposite(),
            FinCategory::product(&g, &c),
            c.full_subcategory(&[0, 2]).0,
        ] {
            assert!(cat.validate().is_valid(), "{}", cat.validate());
        }
    }

    #[test]
    fn broken_associativity_names_the_triple() {
        // one object with morphisms {1, a, b}: a∘a = b, a∘b = a, b∘a = b, b∘b = b.
        // (a∘a)∘b = b∘b = b but a∘(a∘b) = a∘a = b -> fine; (a∘b)∘a = a∘a = b,
        // a∘(b∘a) = a∘b = a -> violation on (a, b, a).
        let comp = [(1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 2)];
        let c = FinCategory::from_parts_with_units(1, vec![(0, 0); 3], vec![0], comp).unwrap();
        let report = c.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.rule.starts_with("associativity") && v.location.contains("(1, 2, 1)")));
    }

    #[test]
    fn non_composable_entry_is_format_error() {
        let r = FinCategory::from_parts(2, vec![(0, 0), (1, 1), (0, 1)], vec![0, 1], [(2, 2, 2)]);
        assert!(matches!(r, Err(Error::Format(_))));
    }

    #[test]
    fn missing_composition_is_axiom_violation() {
        let c = FinCategory::from_parts(1, vec![(0, 0)], vec![0], []).unwrap();
        assert!(!c.validate().is_valid());
    }

    #[test]
    fn inclusion_is_a_functor() {
        let c = FinCategory::ordinal(2);
        let (sub, inc) = c.full_subcategory(&[2, 0]);
        assert!(inc.validate(&sub, &c).is_valid());
    }
}
