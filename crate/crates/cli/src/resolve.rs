//! Turning a parsed document into core objects.
//!
//! Resolution only checks shapes and references; the axioms are checked by
//! [`Model::validate`], so that a document with, say, a broken face table can
//! still be loaded and reported on.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use ghocolim_core::algebra::action::{CatAction, GCategory};
use ghocolim_core::algebra::category::{CatMap, FinCategory};
use ghocolim_core::algebra::functor::Functor;
use ghocolim_core::algebra::gfunctor::SFunctor;
use ghocolim_core::algebra::group::FinGroup;
use ghocolim_core::simplicial::gsset::GSSet;
use ghocolim_core::simplicial::sset::{LevelMap, SSet};
use ghocolim_core::ValidationReport;

use crate::document::{Block, Document, Entry, Kind};
use crate::error::InputError;

type Res<T> = Result<T, InputError>;

#[derive(Clone, Debug)]
pub enum ResolvedMap {
    Simplicial { source: String, target: String, levels: LevelMap },
    Functor(Functor),
}

#[derive(Clone, Debug)]
pub struct ResolvedFunctor {
    pub functor: Arc<SFunctor>,
    /// The gaction block the domain comes from.
    pub gaction: String,
    /// Defined on the opposite of that category.
    pub contra: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Model {
    pub groups: BTreeMap<String, Arc<FinGroup>>,
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub gcats: BTreeMap<String, Arc<GCategory>>,
    pub ssets: BTreeMap<String, Arc<SSet>>,
    /// Simplicial sets declared with a `group=` attribute.
    pub gssets: BTreeMap<String, GSSet>,
    pub maps: BTreeMap<String, ResolvedMap>,
    pub functors: BTreeMap<String, ResolvedFunctor>,
    /// Group block of each gaction, for emitting constructions.
    pub gaction_group: BTreeMap<String, String>,
    /// Block names in document order.
    pub order: Vec<(Kind, String)>,
    pub truncation: Option<usize>,
}

fn num(e: &Entry, i: usize) -> Res<usize> {
    let a = &e.args[i];
    a.parse().map_err(|_| InputError::at(e.line, format!("`{}`: expected a nonnegative integer, found `{a}`", e.keyword)))
}

fn nums(e: &Entry, from: usize) -> Res<Vec<usize>> {
    (from..e.args.len()).map(|i| num(e, i)).collect()
}

fn attr_num(b: &Block, key: &str) -> Res<usize> {
    let v = b.get(key).ok_or_else(|| b.error(format!("missing attribute `{key}`")))?;
    v.parse().map_err(|_| b.error(format!("attribute `{key}` must be a nonnegative integer, found `{v}`")))
}

/// `name:N` shapes.
fn shape_arg(b: &Block, shape: &str, name: &str) -> Res<Option<usize>> {
    match shape.strip_prefix(name).and_then(|r| r.strip_prefix(':')) {
        Some(n) => n.parse().map(Some).map_err(|_| b.error(format!("shape `{shape}`: bad size"))),
        None => Ok(None),
    }
}

fn lookup<'a, T>(table: &'a BTreeMap<String, T>, name: &str, what: &str, b: &Block, line: usize) -> Res<&'a T> {
    table.get(name).ok_or_else(|| {
        InputError::at(line.max(b.line), format!("{} {}: dangling reference to {what} `{name}`", b.kind, b.name))
    })
}

/// Entries `KEYWORD g ARGS…` for every non-identity `g`. No entries at all
/// means the trivial action; otherwise every element must be listed.
fn per_element<'a>(b: &'a Block, keyword: &'a str, order: usize) -> Res<Option<Vec<Option<&'a Entry>>>> {
    let mut found: Vec<Option<&Entry>> = vec![None; order];
    let mut any = false;
    for e in b.entries_named(keyword) {
        let g = num(e, 0)?;
        if g >= order {
            return Err(InputError::at(e.line, format!("group element {g} out of range for order {order}")));
        }
        if found[g].replace(e).is_some() {
            return Err(InputError::at(e.line, format!("element {g} listed twice")));
        }
        any = true;
    }
    if !any {
        return Ok(None);
    }
    if let Some(g) = (1..order).find(|&g| found[g].is_none()) {
        return Err(b.error(format!("`{keyword}` entry missing for group element {g}")));
    }
    Ok(Some(found))
}

impl Model {
    pub fn gcat(&self, name: &str) -> Option<&Arc<GCategory>> {
        self.gcats.get(name)
    }

    pub fn functor_domain(&self, f: &ResolvedFunctor) -> Arc<GCategory> {
        f.functor.domain.clone()
    }

    /// Functor maps between two gactions, in document order.
    pub fn functor_maps(&self) -> Vec<(&str, &Functor)> {
        self.order
            .iter()
            .filter_map(|(_, n)| match self.maps.get(n) {
                Some(ResolvedMap::Functor(f)) => Some((n.as_str(), f)),
                _ => None,
            })
            .collect()
    }

    /// Names of the functors, in document order.
    pub fn functor_names(&self) -> Vec<&str> {
        self.order.iter().filter(|(k, _)| *k == Kind::Functor).map(|(_, n)| n.as_str()).collect()
    }

    /// The axioms of every block, in document order. Only failing blocks are
    /// listed.
    pub fn validate(&self) -> Vec<(String, ValidationReport)> {
        let mut out = Vec::new();
        for (kind, name) in &self.order {
            let report = match kind {
                Kind::Group => self.groups[name].validate(),
                Kind::Category => self.categories[name].validate(),
                Kind::GAction => self.gcats[name].validate(),
                Kind::SSet => {
                    let mut r = self.ssets[name].validate();
                    if r.is_valid() {
                        if let Some(g) = self.gssets.get(name) {
                            r = g.validate();
                        }
                    }
                    r
                }
                Kind::Map => match &self.maps[name] {
                    ResolvedMap::Simplicial { source, target, levels } => {
                        levels.validate(&self.ssets[source], &self.ssets[target])
                    }
                    ResolvedMap::Functor(f) => {
                        let mut r = f.validate();
                        if r.is_valid() {
                            r = f.equivariance_violations();
                        }
                        r
                    }
                },
                Kind::Functor => self.functors[name].functor.validate(),
                Kind::Eta => ValidationReport::new(),
            };
            if !report.is_valid() {
                out.push((name.clone(), report));
            }
        }
        out
    }
}

/// Resolves every block. With `truncate = Some(k)` every simplicial set is
/// cut down to degree `k`, which must not exceed its stored truncation.
pub fn resolve(doc: &Document, truncate: Option<usize>) -> Res<Model> {
    let mut m = Model { truncation: truncate, ..Model::default() };
    let mut by_kind: BTreeMap<Kind, Vec<&Block>> = BTreeMap::new();
    for b in &doc.blocks {
        by_kind.entry(b.kind).or_default().push(b);
        m.order.push((b.kind, b.name.clone()));
    }
    let blocks = |k: Kind| by_kind.get(&k).cloned().unwrap_or_default();

    for b in blocks(Kind::Group) {
        let g = group(b)?;
        m.groups.insert(b.name.clone(), Arc::new(g));
    }
    for b in blocks(Kind::Category) {
        let c = category(b, &m)?;
        m.categories.insert(b.name.clone(), Arc::new(c));
    }
    for b in blocks(Kind::GAction) {
        let c = gaction(b, &m)?;
        m.gaction_group.insert(b.name.clone(), b.get("group").expect("required").to_string());
        m.gcats.insert(b.name.clone(), Arc::new(c));
    }
    for b in blocks(Kind::SSet) {
        let (x, g) = sset(b, &m)?;
        let x = Arc::new(x);
        if let Some(action) = g {
            let group = m.groups[b.get("group").expect("checked")].clone();
            let gx = GSSet::from_parts(x.clone(), group, action).map_err(|e| b.error(e.to_string()))?;
            m.gssets.insert(b.name.clone(), gx);
        }
        m.ssets.insert(b.name.clone(), x);
    }
    for b in blocks(Kind::Map) {
        let map = map(b, &m)?;
        m.maps.insert(b.name.clone(), map);
    }
    let mut etas: HashMap<&str, &Block> = HashMap::new();
    for b in blocks(Kind::Eta) {
        let f = b.get("functor").expect("required");
        if !by_kind.get(&Kind::Functor).is_some_and(|fs| fs.iter().any(|x| x.name == f)) {
            return Err(b.error(format!("dangling reference to functor `{f}`")));
        }
        if let Some(prev) = etas.insert(f, b) {
            return Err(b.error(format!("functor {f} already has eta block {}", prev.name)));
        }
    }
    for b in blocks(Kind::Functor) {
        let f = functor(b, etas.get(b.name.as_str()).copied(), &m)?;
        m.functors.insert(b.name.clone(), f);
    }
    Ok(m)
}

fn group(b: &Block) -> Res<FinGroup> {
    if let Some(shape) = b.get("shape") {
        if !b.entries.is_empty() {
            return Err(b.error("a shape and explicit rows cannot both be given"));
        }
        if shape == "trivial" {
            return Ok(FinGroup::trivial());
        }
        for (name, make) in [
            ("cyclic", FinGroup::cyclic as fn(usize) -> FinGroup),
            ("symmetric", FinGroup::symmetric),
            ("dihedral", FinGroup::dihedral),
        ] {
            if let Some(n) = shape_arg(b, shape, name)? {
                if n == 0 || (name == "symmetric" && n > 5) || (name == "dihedral" && n < 2) {
                    return Err(b.error(format!("shape `{shape}` is out of range")));
                }
                return Ok(make(n));
            }
        }
        return Err(b.error(format!("unknown group shape `{shape}`")));
    }
    let rows = b.entries_named("row").map(|e| nums(e, 0)).collect::<Res<Vec<_>>>()?;
    FinGroup::from_rows(rows).map_err(|e| b.error(e.to_string()))
}

fn category(b: &Block, m: &Model) -> Res<FinCategory> {
    if let Some(shape) = b.get("shape") {
        if !b.entries.is_empty() {
            return Err(b.error("a shape and explicit tables cannot both be given"));
        }
        if shape == "terminal" {
            return Ok(FinCategory::terminal());
        }
        if let Some(n) = shape_arg(b, shape, "ordinal")? {
            return Ok(FinCategory::ordinal(n));
        }
        if let Some(n) = shape_arg(b, shape, "discrete")? {
            return Ok(FinCategory::discrete(n));
        }
        if let Some(g) = shape.strip_prefix("group:") {
            return Ok(FinCategory::one_object(lookup(&m.groups, g, "group", b, 0)?));
        }
        return Err(b.error(format!("unknown category shape `{shape}`")));
    }
    let objects_entry = b.entries_named("objects").next().ok_or_else(|| b.error("missing `objects` entry"))?;
    let objects = num(objects_entry, 0)?;
    let mut morphisms: Vec<Option<(usize, usize)>> = Vec::new();
    for e in b.entries_named("morphism") {
        let (id, s, t) = (num(e, 0)?, num(e, 1)?, num(e, 2)?);
        if s >= objects || t >= objects {
            return Err(InputError::at(e.line, format!("morphism {id} has an endpoint outside {objects} objects")));
        }
        if id >= morphisms.len() {
            morphisms.resize(id + 1, None);
        }
        if morphisms[id].replace((s, t)).is_some() {
            return Err(InputError::at(e.line, format!("morphism {id} declared twice")));
        }
    }
    if let Some(missing) = morphisms.iter().position(Option::is_none) {
        return Err(b.error(format!("morphism ids must be 0..{} without gaps; {missing} is missing", morphisms.len())));
    }
    let morphisms: Vec<(usize, usize)> = morphisms.into_iter().map(|x| x.expect("checked")).collect();
    let mut identity = vec![None; objects];
    for e in b.entries_named("identity") {
        let (x, f) = (num(e, 0)?, num(e, 1)?);
        if x >= objects || f >= morphisms.len() {
            return Err(InputError::at(e.line, "identity entry out of range"));
        }
        if identity[x].replace(f).is_some() {
            return Err(InputError::at(e.line, format!("identity of object {x} given twice")));
        }
    }
    if let Some(x) = identity.iter().position(Option::is_none) {
        return Err(b.error(format!("no identity declared for object {x}")));
    }
    let comp = b.entries_named("comp").map(|e| Ok((num(e, 0)?, num(e, 1)?, num(e, 2)?))).collect::<Res<Vec<_>>>()?;
    FinCategory::from_parts_with_units(objects, morphisms, identity.into_iter().map(|x| x.expect("checked")).collect(), comp)
        .map_err(|e| b.error(e.to_string()))
}

fn permutation_tables(b: &Block, keyword: &str, order: usize, len: usize) -> Res<Vec<Vec<usize>>> {
    let identity: Vec<usize> = (0..len).collect();
    let Some(found) = per_element(b, keyword, order)? else {
        return Ok(vec![identity; order]);
    };
    found
        .into_iter()
        .map(|e| match e {
            None => Ok(identity.clone()),
            Some(e) => {
                let t = nums(e, 1)?;
                if t.len() != len || t.iter().any(|&i| i >= len) {
                    return Err(InputError::at(e.line, format!("`{keyword}` table must list {len} entries below {len}")));
                }
                Ok(t)
            }
        })
        .collect()
}

fn gaction(b: &Block, m: &Model) -> Res<GCategory> {
    let cat = lookup(&m.categories, b.get("category").expect("required"), "category", b, 0)?;
    let group = lookup(&m.groups, b.get("group").expect("required"), "group", b, 0)?.clone();
    let on_objects = permutation_tables(b, "objects", group.order(), cat.object_count())?;
    let on_morphisms = permutation_tables(b, "morphisms", group.order(), cat.morphism_count())?;
    if b.entries_named("objects").next().is_some() != b.entries_named("morphisms").next().is_some() {
        return Err(b.error("give both `objects` and `morphisms` tables, or neither for the trivial action"));
    }
    let action = CatAction::new(group, on_objects, on_morphisms).map_err(|e| b.error(e.to_string()))?;
    Ok(GCategory { cat: (**cat).clone(), action })
}

fn truncate_sset(b: &Block, x: SSet, k: Option<usize>) -> Res<SSet> {
    match k {
        Some(k) if k < x.top() => x.truncated(k).map_err(|e| b.error(e.to_string())),
        Some(k) if k > x.top() => Err(b.error(format!("stored to degree {} but truncation {k} was requested", x.top()))),
        _ => Ok(x),
    }
}

fn sset(b: &Block, m: &Model) -> Res<(SSet, Option<Vec<LevelMap>>)> {
    let top = attr_num(b, "top")?;
    let x = if let Some(shape) = b.get("shape") {
        if b.entries.iter().any(|e| e.keyword != "act") {
            return Err(b.error("a shape and explicit tables cannot both be given"));
        }
        if shape == "point" {
            SSet::point(top)
        } else if shape == "empty" {
            SSet::empty(top)
        } else if let Some(k) = shape_arg(b, shape, "discrete")? {
            SSet::discrete(top, k)
        } else if let Some(k) = shape_arg(b, shape, "standard")? {
            SSet::standard(k, top)
        } else if let Some(k) = shape_arg(b, shape, "boundary")? {
            if k == 0 {
                return Err(b.error("boundary:0 is empty; use shape=empty"));
            }
            SSet::boundary(k, top)
        } else {
            return Err(b.error(format!("unknown sset shape `{shape}`")));
        }
    } else {
        sset_tables(b, top)?
    };
    let action = match b.get("group") {
        None => {
            if b.entries_named("act").next().is_some() {
                return Err(b.error("`act` entries need a `group=` attribute"));
            }
            None
        }
        Some(g) => {
            let group = lookup(&m.groups, g, "group", b, 0)?;
            Some(sset_action(b, &x, group.order())?)
        }
    };
    let x2 = truncate_sset(b, x, m.truncation)?;
    let action = action.map(|a| a.into_iter().map(|l| l.truncated(x2.top())).collect());
    Ok((x2, action))
}

fn sset_tables(b: &Block, top: usize) -> Res<SSet> {
    let mut counts = vec![None; top + 1];
    for e in b.entries_named("count") {
        let n = num(e, 0)?;
        if n > top {
            return Err(InputError::at(e.line, format!("degree {n} above top {top}")));
        }
        if counts[n].replace(num(e, 1)?).is_some() {
            return Err(InputError::at(e.line, format!("count for degree {n} given twice")));
        }
    }
    if let Some(n) = counts.iter().position(Option::is_none) {
        return Err(b.error(format!("missing `count` for degree {n}")));
    }
    let counts: Vec<usize> = counts.into_iter().map(|c| c.expect("checked")).collect();
    let tables = |keyword: &str, present: &dyn Fn(usize) -> bool| -> Res<Vec<Vec<Vec<usize>>>> {
        let mut t: Vec<Vec<Option<Vec<usize>>>> = (0..=top).map(|n| vec![None; if present(n) { n + 1 } else { 0 }]).collect();
        for e in b.entries_named(keyword) {
            let (n, i) = (num(e, 0)?, num(e, 1)?);
            if n > top || i >= t[n].len() {
                return Err(InputError::at(e.line, format!("no {keyword} map {i} in degree {n}")));
            }
            if t[n][i].replace(nums(e, 2)?).is_some() {
                return Err(InputError::at(e.line, format!("{keyword} {n} {i} given twice")));
            }
        }
        t.into_iter()
            .enumerate()
            .map(|(n, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(i, x)| x.ok_or_else(|| b.error(format!("missing `{keyword} {n} {i}`"))))
                    .collect()
            })
            .collect()
    };
    let faces = tables("face", &|n| n > 0)?;
    let degens = tables("degen", &|n| n < top)?;
    SSet::from_tables(top, counts, faces, degens).map_err(|e| b.error(e.to_string()))
}

fn sset_action(b: &Block, x: &SSet, order: usize) -> Res<Vec<LevelMap>> {
    let mut found: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; x.top() + 1]; order];
    let mut any = false;
    for e in b.entries_named("act") {
        let (g, n) = (num(e, 0)?, num(e, 1)?);
        if g >= order || n > x.top() {
            return Err(InputError::at(e.line, format!("`act {g} {n}` out of range")));
        }
        let t = nums(e, 2)?;
        if t.len() != x.count(n) || t.iter().any(|&s| s >= x.count(n)) {
            return Err(InputError::at(e.line, format!("`act {g} {n}` must list {} simplices of degree {n}", x.count(n))));
        }
        if found[g][n].replace(t).is_some() {
            return Err(InputError::at(e.line, format!("`act {g} {n}` given twice")));
        }
        any = true;
    }
    let id = LevelMap::identity(x);
    if !any {
        return Ok(vec![id; order]);
    }
    (0..order)
        .map(|g| {
            let levels = (0..=x.top())
                .map(|n| match found[g][n].take() {
                    Some(t) => Ok(t),
                    None if g == 0 => Ok(id.level(n).to_vec()),
                    None => Err(b.error(format!("missing `act` entry for element {g} in degree {n}"))),
                })
                .collect::<Res<Vec<_>>>()?;
            Ok(LevelMap(levels))
        })
        .collect()
}

fn map(b: &Block, m: &Model) -> Res<ResolvedMap> {
    let (source, target) = (b.get("source").expect("required"), b.get("target").expect("required"));
    if let (Some(s), Some(t)) = (m.ssets.get(source), m.ssets.get(target)) {
        let mut levels: Vec<Option<Vec<usize>>> = Vec::new();
        for e in b.entries_named("level") {
            let n = num(e, 0)?;
            if n >= levels.len() {
                levels.resize(n + 1, None);
            }
            if levels[n].replace(nums(e, 1)?).is_some() {
                return Err(InputError::at(e.line, format!("level {n} given twice")));
            }
        }
        if b.entries.iter().any(|e| e.keyword != "level") {
            return Err(b.error("a map between simplicial sets only takes `level` entries"));
        }
        let top = s.top();
        // the source may have been truncated; extra stored levels are dropped
        if levels.len() <= top {
            return Err(b.error(format!("missing `level {}`", levels.len())));
        }
        levels.truncate(top + 1);
        let levels = LevelMap(
            levels
                .into_iter()
                .enumerate()
                .map(|(n, l)| l.ok_or_else(|| b.error(format!("missing `level {n}`"))))
                .collect::<Res<Vec<_>>>()?,
        );
        levels.check_shape(s, t).map_err(|e| b.error(e.to_string()))?;
        return Ok(ResolvedMap::Simplicial { source: source.into(), target: target.into(), levels });
    }
    if let (Some(s), Some(t)) = (m.gcats.get(source), m.gcats.get(target)) {
        let one = |keyword: &str| -> Res<Vec<usize>> {
            let mut es = b.entries_named(keyword);
            let e = es.next().ok_or_else(|| b.error(format!("missing `{keyword}` entry")))?;
            if es.next().is_some() {
                return Err(b.error(format!("`{keyword}` given twice")));
            }
            nums(e, 0)
        };
        if b.entries_named("level").next().is_some() {
            return Err(b.error("a map between categories takes `objects` and `morphisms` entries"));
        }
        let map = CatMap { on_objects: one("objects")?, on_morphisms: one("morphisms")? };
        map.check_shape(&s.cat, &t.cat).map_err(|e| b.error(e.to_string()))?;
        return Ok(ResolvedMap::Functor(Functor { source: s.clone(), target: t.clone(), map }));
    }
    for name in [source, target] {
        if !m.ssets.contains_key(name) && !m.gcats.contains_key(name) {
            return Err(b.error(format!("dangling reference to `{name}` (expected an sset or a gaction)")));
        }
    }
    Err(b.error("source and target must both be ssets or both be gactions"))
}

/// A map reference inside a functor or eta block.
fn level_map(m: &Model, b: &Block, e: &Entry, name: &str, source: &Arc<SSet>, target: &Arc<SSet>) -> Res<LevelMap> {
    if name == "id" {
        if source != target {
            return Err(InputError::at(e.line, "`id` used between different simplicial sets"));
        }
        return Ok(LevelMap::identity(source));
    }
    let ResolvedMap::Simplicial { levels, .. } = lookup(&m.maps, name, "map", b, e.line)? else {
        return Err(InputError::at(e.line, format!("`{name}` is a map of categories, not of simplicial sets")));
    };
    levels.check_shape(source, target).map_err(|err| InputError::at(e.line, format!("map `{name}`: {err}")))?;
    Ok(levels.clone())
}

fn functor(b: &Block, eta: Option<&Block>, m: &Model) -> Res<ResolvedFunctor> {
    let gaction = b.get("domain").expect("required");
    let base = lookup(&m.gcats, gaction, "gaction", b, 0)?;
    let contra = match b.get("variance").unwrap_or("co") {
        "co" => false,
        "contra" => true,
        v => return Err(b.error(format!("variance must be `co` or `contra`, found `{v}`"))),
    };
    let domain = if contra { Arc::new(base.opposite()) } else { base.clone() };
    let c = &domain.cat;
    let mut values: Vec<Option<Arc<SSet>>> = vec![None; c.object_count()];
    for e in b.entries_named("value") {
        let x = num(e, 0)?;
        if x >= values.len() {
            return Err(InputError::at(e.line, format!("object {x} out of range")));
        }
        let v = lookup(&m.ssets, &e.args[1], "sset", b, e.line)?.clone();
        if values[x].replace(v).is_some() {
            return Err(InputError::at(e.line, format!("value of object {x} given twice")));
        }
    }
    if let Some(x) = values.iter().position(Option::is_none) {
        return Err(b.error(format!("missing `value` for object {x}")));
    }
    let values: Vec<Arc<SSet>> = values.into_iter().map(|v| v.expect("checked")).collect();
    let mut maps: Vec<Option<LevelMap>> = vec![None; c.morphism_count()];
    for e in b.entries_named("map") {
        let f = num(e, 0)?;
        if f >= maps.len() {
            return Err(InputError::at(e.line, format!("morphism {f} out of range")));
        }
        let lm = level_map(m, b, e, &e.args[1], &values[c.src(f)], &values[c.tgt(f)])?;
        if maps[f].replace(lm).is_some() {
            return Err(InputError::at(e.line, format!("map of morphism {f} given twice")));
        }
    }
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(f, lm)| match lm {
            Some(lm) => Ok(lm),
            None if c.is_identity(f) => Ok(LevelMap::identity(&values[c.src(f)])),
            None => Err(b.error(format!("missing `map` for morphism {f}"))),
        })
        .collect::<Res<Vec<_>>>()?;
    let group = domain.group().clone();
    let mut eta_maps: Vec<Vec<Option<LevelMap>>> = vec![vec![None; c.object_count()]; group.order()];
    match eta {
        None if group.order() > 1 => return Err(b.error("no eta block for a nontrivial group")),
        None => {}
        Some(eb) => {
            for e in eb.entries_named("entry") {
                let (g, x) = (num(e, 0)?, num(e, 1)?);
                if g >= group.order() || x >= c.object_count() {
                    return Err(InputError::at(e.line, format!("eta entry ({g}, {x}) out of range")));
                }
                let gx = domain.action.obj(g, x);
                let lm = level_map(m, eb, e, &e.args[2], &values[x], &values[gx])?;
                if eta_maps[g][x].replace(lm).is_some() {
                    return Err(InputError::at(e.line, format!("eta entry ({g}, {x}) given twice")));
                }
            }
        }
    }
    let eta_maps = eta_maps
        .into_iter()
        .enumerate()
        .map(|(g, row)| {
            row.into_iter()
                .enumerate()
                .map(|(x, lm)| match lm {
                    Some(lm) => Ok(lm),
                    None if g == 0 => Ok(LevelMap::identity(&values[x])),
                    None => Err(eta.map_or_else(|| b.error("missing eta"), |eb| {
                        eb.error(format!("missing entry for the pair (g, X) = ({g}, {x})"))
                    })),
                })
                .collect::<Res<Vec<_>>>()
        })
        .collect::<Res<Vec<_>>>()?;
    let f = SFunctor::from_parts(domain, values, maps, eta_maps).map_err(|e| b.error(e.to_string()))?;
    Ok(ResolvedFunctor { functor: Arc::new(f), gaction: gaction.into(), contra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse;

    #[test]
    fn two_row_group_is_z2() {
        let m = resolve(&parse("group Z2\n  row 0 1\n  row 1 0\nend\n").unwrap(), None).unwrap();
        assert_eq!(m.groups["Z2"].order(), 2);
        assert!(m.validate().is_empty());
    }

    #[test]
    fn interval_from_tables() {
        let text = "sset I top=2\n  count 0 2\n  count 1 3\n  count 2 4\n  face 1 0 0 1 1\n  face 1 1 0 0 1\n  \
                    face 2 0 0 1 2 2\n  face 2 1 0 1 1 2\n  face 2 2 0 0 1 2\n  degen 0 0 0 2\n  degen 1 0 0 1 3\n  degen 1 1 0 2 3\nend\n";
        let m = resolve(&parse(text).unwrap(), None).unwrap();
        assert_eq!(m.ssets["I"].counts(), &[2, 3, 4]);
        assert!(m.validate().is_empty(), "{:?}", m.validate());
    }

    #[test]
    fn missing_eta_pair_is_named() {
        let text = "group Z2 shape=cyclic:2\nend\ncategory C shape=discrete:2\nend\n\
                    gaction CG category=C group=Z2\n  objects 1 1 0\n  morphisms 1 1 0\nend\n\
                    sset pt top=1 shape=point\nend\n\
                    functor F domain=CG\n  value 0 pt\n  value 1 pt\nend\n\
                    eta E functor=F\n  entry 1 0 id\nend\n";
        let e = resolve(&parse(text).unwrap(), None).unwrap_err();
        assert!(e.message.contains("(g, X) = (1, 1)"), "{e}");
        assert_eq!(e.line, Some(15));
    }

    #[test]
    fn dangling_reference_is_reported_at_its_line() {
        let text = "sset pt top=1 shape=point\nend\ngroup T shape=trivial\nend\ncategory C shape=terminal\nend\n\
                    gaction CG category=C group=T\nend\nfunctor F domain=CG\n  value 0 nowhere\nend\n";
        let e = resolve(&parse(text).unwrap(), None).unwrap_err();
        assert_eq!(e.line, Some(10));
        assert!(e.message.contains("dangling reference to sset `nowhere`"));
    }

    #[test]
    fn truncation_cuts_down_and_refuses_to_extend() {
        let text = "sset I top=3 shape=standard:1\nend\n";
        let d = parse(text).unwrap();
        assert_eq!(resolve(&d, Some(2)).unwrap().ssets["I"].top(), 2);
        assert!(resolve(&d, Some(4)).is_err());
    }
}
