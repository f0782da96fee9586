//! The `verify` checks and the `check` command.

use std::sync::Arc;

use ghocolim_core::algebra::action::GCategory;
use ghocolim_core::algebra::functor::Functor;
use ghocolim_core::algebra::gfunctor::SFunctor;
use ghocolim_core::algebra::group::subgroups;
use ghocolim_core::constructions::canonical::{
    assoc, bar_with_point, bar_to_hocolim, coend_to_bar, coend_to_bar_ft, cofinality, comma_collapse, initial_collapse,
    pushdown, reduction, thickening_bar, thickening_hocolim, to_colim, to_nerve, Canonical,
};
use ghocolim_core::constructions::coend::{colim, tensor};
use ghocolim_core::constructions::comma::under_family;
use ghocolim_core::constructions::grothendieck::grothendieck;
use ghocolim_core::constructions::hocolim::{hocolim, under_nerves};
use ghocolim_core::constructions::hom::hom_into_image;
use ghocolim_core::constructions::nerve::nerve;
use ghocolim_core::homology::witness::CAVEAT;
use ghocolim_core::homology::{g_equivalence_witness, homology, ChainComplex, Coefficients};
use ghocolim_core::par::Exec;
use ghocolim_core::simplicial::gsset::GSSet;
use ghocolim_core::simplicial::ops::fixed_subcomplex;
use ghocolim_core::simplicial::sset::SimplicialMap;
use ghocolim_core::ValidationReport;

use crate::document::Document;
use crate::error::InputError;
use crate::report::{Check, Witness};
use crate::resolve::{resolve, Model, ResolvedMap};

type Res<T> = Result<T, InputError>;

/// Truncation used when none is requested and the document allows it.
pub const DEFAULT_TRUNCATION: usize = 4;

pub const CHECKS: [&str; 14] = [
    "axioms",
    "iso:eq1",
    "iso:eq2",
    "iso:eq7",
    "iso:eq11",
    "iso:eq12",
    "iso:eq22",
    "contractible:eq28",
    "witness:thm1",
    "witness:thm2",
    "witness:thm4",
    "witness:thm5",
    "equivariance:eq9",
    "equivariance:eq10",
];

#[derive(Clone, Debug)]
pub struct Options {
    pub truncate: Option<usize>,
    pub coefficients: Vec<Coefficients>,
    /// Covariant functor to use; by default the first one that fits.
    pub functor: Option<String>,
    /// Contravariant functor for the coend checks; by default the point.
    pub contra: Option<String>,
    /// Functor map `S: D → C`; by default the first one.
    pub s: Option<String>,
    /// Gaction to use where no functor fixes it.
    pub category: Option<String>,
    /// Simplicial map for `witness:thm1`.
    pub map: Option<String>,
    /// Largest group whose subgroups are enumerated.
    pub max_group_order: usize,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            truncate: None,
            coefficients: default_coefficients(),
            functor: None,
            contra: None,
            s: None,
            category: None,
            map: None,
            max_group_order: 64,
            exec: Exec::Parallel,
        }
    }
}

pub fn default_coefficients() -> Vec<Coefficients> {
    vec![Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3), Coefficients::Prime(5)]
}

/// Resolves at the requested truncation, or at the default when every
/// stored simplicial set reaches it, or as stored otherwise.
pub fn load(doc: &Document, truncate: Option<usize>) -> Res<Model> {
    if truncate.is_some() {
        return resolve(doc, truncate);
    }
    let m = resolve(doc, None)?;
    let lowest = m.ssets.values().map(|x| x.top()).min();
    match lowest {
        Some(t) if t > DEFAULT_TRUNCATION => resolve(doc, Some(DEFAULT_TRUNCATION)),
        _ => Ok(m),
    }
}

/// The truncation a loaded model works at.
pub fn working_truncation(m: &Model) -> usize {
    m.truncation.or_else(|| m.ssets.values().map(|x| x.top()).min()).unwrap_or(DEFAULT_TRUNCATION)
}

/// Validation of every block: one check per failing block, or one passing
/// check when all hold.
pub fn block_checks(m: &Model) -> Vec<Check> {
    let failures = m.validate();
    if failures.is_empty() {
        return vec![Check::pass("axioms:blocks", format!("all {} blocks satisfy their axioms", m.order.len()))];
    }
    failures.iter().map(|(name, r)| Check::from_validation(format!("axioms:{name}"), &format!("block {name}"), r)).collect()
}

/// Runs one named check. Input problems, including invalid blocks for any
/// check other than `axioms`, are errors; everything else is a verdict.
pub fn verify(m: &Model, check: &str, opts: &Options) -> Res<(Vec<Check>, Vec<String>)> {
    if !CHECKS.contains(&check) {
        return Err(InputError::new(format!("unknown check `{check}` (expected one of {})", CHECKS.join(", "))));
    }
    if check == "axioms" {
        return Ok((axioms(m, opts), Vec::new()));
    }
    if let Some((name, r)) = m.validate().into_iter().next() {
        return Err(InputError::new(format!("block {name} is invalid, run `verify axioms` for details:\n{r}")));
    }
    let cx = Ctx { m, opts };
    let checks = match check {
        "iso:eq1" => vec![cx.eq1()?],
        "iso:eq2" => vec![cx.eq2()?],
        "iso:eq7" => vec![cx.eq7()?],
        "iso:eq11" => cx.eq11()?,
        "iso:eq12" => vec![cx.eq12()?],
        "iso:eq22" => vec![cx.eq22()?],
        "contractible:eq28" => cx.eq28()?,
        "witness:thm1" => vec![cx.thm1()?],
        "witness:thm2" => vec![cx.thm2()?],
        "witness:thm4" => vec![cx.thm4()?],
        "witness:thm5" => vec![cx.thm5()?],
        "equivariance:eq9" => vec![cx.eq9()?],
        "equivariance:eq10" => vec![cx.eq10()?],
        _ => unreachable!("checked above"),
    };
    let caveats = if check.starts_with("witness:") || check.starts_with("contractible:") {
        vec![CAVEAT.to_string()]
    } else {
        Vec::new()
    };
    Ok((checks, caveats))
}

struct Ctx<'a> {
    m: &'a Model,
    opts: &'a Options,
}

fn core<T>(r: ghocolim_core::Result<T>) -> Res<T> {
    r.map_err(InputError::from)
}

/// `Ok(check)` either way: a construction error on valid input is a failed
/// verdict rather than an input error.
fn verdict(name: &str, r: ghocolim_core::Result<Check>) -> Res<Check> {
    Ok(r.unwrap_or_else(|e| Check::error(name, e)))
}

fn gsset_report(x: &GSSet) -> ValidationReport {
    x.validate()
}

impl Ctx<'_> {
    /// The covariant functor named by `--functor`, or the first one on
    /// `gaction` (any gaction when `None`).
    fn functor(&self, gaction: Option<&str>, what: &str) -> Res<(String, Arc<SFunctor>)> {
        let fits = |name: &str| {
            let f = &self.m.functors[name];
            !f.contra && gaction.is_none_or(|g| f.gaction == g)
        };
        if let Some(name) = &self.opts.functor {
            if !self.m.functors.contains_key(name) {
                return Err(InputError::new(format!("no functor named {name}")));
            }
            if !fits(name) {
                return Err(InputError::new(format!("functor {name} is not a covariant functor on {}", gaction.unwrap_or("a gaction"))));
            }
            return Ok((name.clone(), self.m.functors[name].functor.clone()));
        }
        let name = self.m.functor_names().into_iter().find(|n| fits(n)).ok_or_else(|| {
            InputError::new(format!("{what} needs a covariant functor{}", gaction.map(|g| format!(" on {g}")).unwrap_or_default()))
        })?;
        Ok((name.to_string(), self.m.functors[name].functor.clone()))
    }

    /// `--contra`, or the first contravariant functor on `gaction`, or the
    /// point.
    fn contra(&self, gaction: &str, base: &Arc<GCategory>, top: usize) -> Res<(String, Arc<SFunctor>)> {
        let fits = |name: &str| {
            let f = &self.m.functors[name];
            f.contra && f.gaction == gaction
        };
        if let Some(name) = &self.opts.contra {
            if !self.m.functors.contains_key(name) || !fits(name) {
                return Err(InputError::new(format!("{name} is not a contravariant functor on {gaction}")));
            }
            return Ok((name.clone(), self.m.functors[name].functor.clone()));
        }
        match self.m.functor_names().into_iter().find(|n| fits(n)) {
            Some(n) => Ok((n.to_string(), self.m.functors[n].functor.clone())),
            None => Ok(("*".into(), Arc::new(SFunctor::point(Arc::new(base.opposite()), top)))),
        }
    }

    fn s(&self) -> Res<(String, Functor)> {
        let maps = self.m.functor_maps();
        let (name, s) = match &self.opts.s {
            Some(name) => maps
                .into_iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| InputError::new(format!("no map of categories named {name}")))?,
            None => maps.into_iter().next().ok_or_else(|| InputError::new("this check needs a map of categories S: D → C"))?,
        };
        s.require_equivariant().map_err(|e| InputError::new(format!("S = {name}: {e}")))?;
        Ok((name.to_string(), s.clone()))
    }

    fn gaction_of(&self, g: &Arc<GCategory>) -> String {
        self.m.gcats.iter().find(|(_, c)| Arc::ptr_eq(c, g)).map(|(n, _)| n.clone()).unwrap_or_default()
    }

    fn category(&self) -> Res<(String, Arc<GCategory>)> {
        let name = match (&self.opts.category, &self.opts.functor) {
            (Some(c), _) => c.clone(),
            (None, Some(_)) => {
                let (_, f) = self.functor(None, "")?;
                self.gaction_of(&f.domain)
            }
            (None, None) => self
                .m
                .order
                .iter()
                .find(|(k, _)| *k == crate::document::Kind::GAction)
                .map(|(_, n)| n.clone())
                .ok_or_else(|| InputError::new("this check needs a gaction"))?,
        };
        let c = self.m.gcats.get(&name).ok_or_else(|| InputError::new(format!("no gaction named {name}")))?;
        Ok((name, c.clone()))
    }

    fn top(&self) -> usize {
        working_truncation(self.m)
    }

    fn witness(&self, name: &str, what: &str, c: &Canonical) -> Res<Check> {
        let coeffs: Vec<Coefficients> =
            self.opts.coefficients.iter().copied().filter(|&k| k != Coefficients::Integers).collect();
        let r = g_equivalence_witness(&c.map, &c.source, &c.target, &coeffs, self.opts.max_group_order, self.opts.exec);
        verdict(name, r.map(|r| Check::from_witness(name, what, r)))
    }

    fn eq1(&self) -> Res<Check> {
        let (fname, f) = self.functor(None, "iso:eq1")?;
        let c = f.domain.clone();
        let (tname, t) = self.contra(&self.gaction_of(&c), &c, f.top())?;
        let what = format!("Z ⊗ N(−↓C↓−) → B(C, Z) for Z = {fname} × {tname}");
        verdict("iso:eq1", (|| {
            let z = Arc::new(SFunctor::external_product(&f, &t)?);
            Ok(Check::from_iso("iso:eq1", &what, &coend_to_bar(&c, &z)?.iso()))
        })())
    }

    fn eq2(&self) -> Res<Check> {
        let (fname, f) = self.functor(None, "iso:eq2")?;
        let c = f.domain.clone();
        let (tname, t) = self.contra(&self.gaction_of(&c), &c, f.top())?;
        let what = format!("F ⊗ N(−↓C↓−) ⊗ T → B(F, C, T) for F = {fname}, T = {tname}");
        verdict("iso:eq2", coend_to_bar_ft(&f, &t).map(|k| Check::from_iso("iso:eq2", &what, &k.iso())))
    }

    fn eq7(&self) -> Res<Check> {
        let (sname, s) = self.s()?;
        let (fname, f) = self.functor(Some(&self.gaction_of(&s.target)), "iso:eq7")?;
        let what = format!("hocolim F∘S → F ⊗ N(S↓−) for F = {fname}, S = {sname}");
        verdict("iso:eq7", reduction(&s, &f).map(|k| Check::from_iso("iso:eq7", &what, &k.iso())))
    }

    fn eq11(&self) -> Res<Vec<Check>> {
        let (cname, c) = self.category()?;
        let fam = core(comma_collapse(&c, self.top()))?;
        let mut out = vec![Check::from_validation("iso:eq11:squares", &format!("naturality and η squares over {cname}"), &fam.report())];
        for x in 0..c.cat.object_count() {
            out.push(Check::from_iso(format!("iso:eq11:object{x}"), &format!("N(X↓C↓−) ⊗ * → N(X↓C) at X = {x}"), &fam.iso_at(x)));
        }
        Ok(out)
    }

    fn eq12(&self) -> Res<Check> {
        let (fname, f) = self.functor(None, "iso:eq12")?;
        let what = format!("B({fname}, C, *) → hocolim {fname}");
        verdict("iso:eq12", hocolim(&f).and_then(|h| bar_to_hocolim(&f, &h)).map(|k| Check::from_iso("iso:eq12", &what, &k.iso())))
    }

    fn eq22(&self) -> Res<Check> {
        let (sname, s) = self.s()?;
        let (fname, f) = self.functor(Some(&self.gaction_of(&s.target)), "iso:eq22")?;
        let what = format!("B(B(F, C, T), D, *) → B(F, C, B(T, D, *)) for F = {fname}, T = hom_C(−, S−), S = {sname}");
        verdict("iso:eq22", (|| {
            let d = s.source.clone();
            let t = Arc::new(hom_into_image(&s, f.top())?);
            let u = Arc::new(SFunctor::point(Arc::new(d.opposite()), f.top()));
            Ok(Check::from_iso("iso:eq22", &what, &assoc(&f, &t, &u, &d)?.iso()))
        })())
    }

    fn eq28(&self) -> Res<Vec<Check>> {
        let (cname, c) = self.category()?;
        let top = self.top();
        if top < 2 {
            return Err(InputError::new("contractible:eq28 needs truncation at least 2"));
        }
        let nerves = core(under_nerves(&SFunctor::point(c.clone(), top)))?;
        let mut coeffs = self.opts.coefficients.clone();
        for k in [Coefficients::Rationals, Coefficients::Prime(2)] {
            if !coeffs.contains(&k) {
                coeffs.push(k);
            }
        }
        let mut out = Vec::new();
        for x in 0..c.cat.object_count() {
            let name = format!("contractible:eq28:object{x}");
            out.push(verdict(&name, (|| {
                let iso = initial_collapse(&c, x, top)?.iso();
                if !iso.is_iso {
                    return Ok(Check::from_iso(&name, &format!("B(hom(X, −), C, *) → N(X↓C) at X = {x}"), &iso));
                }
                let (gx, stab) = nerves.functor.restrict_action(x)?;
                let hs = subgroups(&gx.group, self.opts.max_group_order)?;
                for h in &hs {
                    let (fixed, _) = fixed_subcomplex(&gx, h)?;
                    let cx = ChainComplex::new(&fixed);
                    for &k in &coeffs {
                        let p = homology(&cx, k)?;
                        if let Some(d) = p.degrees.iter().find(|d| d.rank != usize::from(d.degree == 0) || !d.torsion.is_empty()) {
                            let in_g: Vec<usize> = h.elements().iter().map(|&e| stab.elements()[e]).collect();
                            return Ok(Check::fail(
                                &name,
                                format!("fixed points of N(X↓C) at X = {x} have rank {} in degree {}", d.rank, d.degree),
                                Some(Witness {
                                    degree: Some(d.degree),
                                    subgroup: Some(in_g),
                                    coefficients: Some(k.to_string()),
                                    ..Witness::default()
                                }),
                            ));
                        }
                    }
                }
                Ok(Check::pass(
                    &name,
                    format!(
                        "N(X↓{cname}) at X = {x}: b0 = 1 and higher Betti numbers vanish below degree {top} on all {} subgroups of G_X",
                        hs.len()
                    ),
                ))
            })())?);
        }
        Ok(out)
    }

    fn thm1(&self) -> Res<Check> {
        if let Some(mname) = &self.opts.map {
            let Some(ResolvedMap::Simplicial { source, target, levels }) = self.m.maps.get(mname) else {
                return Err(InputError::new(format!("no map of simplicial sets named {mname}")));
            };
            let (Some(gs), Some(gt)) = (self.m.gssets.get(source), self.m.gssets.get(target)) else {
                return Err(InputError::new(format!("map {mname}: source and target need a `group=` attribute")));
            };
            if gs.group != gt.group {
                return Err(InputError::new(format!("map {mname}: source and target are acted on by different groups")));
            }
            let f = SimplicialMap::new_unchecked(gs.space.clone(), gt.space.clone(), levels.clone());
            let c = Canonical { map: f, source: gs.clone(), target: gt.clone() };
            return self.witness("witness:thm1", &format!("{mname}: {source} → {target}"), &c);
        }
        let (fname, f) = self.functor(None, "witness:thm1")?;
        let c = f.domain.clone();
        let what = format!("B(C, Z × Δ¹) → B(C, Z) for Z = {fname} × *");
        let k = (|| {
            let z = Arc::new(f.precompose(&Functor::first_projection(c.clone(), &c.opposite())?)?);
            thickening_bar(&c, &z)
        })();
        match k {
            Ok(k) => self.witness("witness:thm1", &what, &k),
            Err(e) => Ok(Check::error("witness:thm1", e)),
        }
    }

    fn thm2(&self) -> Res<Check> {
        let (fname, f) = self.functor(None, "witness:thm2")?;
        match thickening_hocolim(&f) {
            Ok(k) => self.witness("witness:thm2", &format!("hocolim({fname} × Δ¹) → hocolim {fname}"), &k),
            Err(e) => Ok(Check::error("witness:thm2", e)),
        }
    }

    fn thm4(&self) -> Res<Check> {
        let (sname, s) = self.s()?;
        let (fname, f) = self.functor(Some(&self.gaction_of(&s.source)), "witness:thm4")?;
        match pushdown(&s, &f) {
            Ok((k, _)) => self.witness("witness:thm4", &format!("hocolim_C S_h*({fname}) → hocolim_D {fname} for S = {sname}"), &k),
            Err(e) => Ok(Check::error("witness:thm4", e)),
        }
    }

    fn thm5(&self) -> Res<Check> {
        let (sname, s) = self.s()?;
        let (fname, f) = self.functor(Some(&self.gaction_of(&s.target)), "witness:thm5")?;
        if let Some(c) = missing_fixed_initial(&s) {
            return Err(InputError::new(format!(
                "S = {sname} does not meet the hypothesis: {c}↓S has no initial object fixed by the stabilizer of {c}"
            )));
        }
        match cofinality(&s, &f) {
            Ok(k) => self.witness("witness:thm5", &format!("hocolim_D {fname}∘S → hocolim_C {fname} for S = {sname}"), &k),
            Err(e) => Ok(Check::error("witness:thm5", e)),
        }
    }

    fn eq9(&self) -> Res<Check> {
        let (fname, f) = self.functor(None, "equivariance:eq9")?;
        let what = format!("hocolim {fname} → colim {fname}");
        verdict("equivariance:eq9", hocolim(&f).and_then(|h| to_colim(&h)).map(|(k, _)| {
            Check::from_validation("equivariance:eq9", &format!("{what} (equivariance)"), &k.equivariance())
        }))
    }

    fn eq10(&self) -> Res<Check> {
        let (fname, f) = self.functor(None, "equivariance:eq10")?;
        let what = format!("hocolim {fname} → N(C)");
        verdict("equivariance:eq10", hocolim(&f).and_then(|h| to_nerve(&h)).map(|k| {
            Check::from_validation("equivariance:eq10", &format!("{what} (equivariance)"), &k.equivariance())
        }))
    }
}

/// First object `c` whose `c↓S` lacks an initial object fixed by `G_c`.
pub fn missing_fixed_initial(s: &Functor) -> Option<usize> {
    let fam = under_family(s);
    let c = &s.target;
    (0..c.cat.object_count()).find(|&x| {
        let comma = &fam.values[x].cat;
        let stab: Vec<usize> = c.group().elements().filter(|&g| c.action.obj(g, x) == x).collect();
        !(0..comma.object_count()).any(|o| {
            let initial = (0..comma.object_count()).all(|o2| comma.hom(o, o2).count() == 1);
            initial && stab.iter().all(|&g| fam.functor.eta[g][x].obj(o) == o)
        })
    })
}

fn axioms(m: &Model, _opts: &Options) -> Vec<Check> {
    let mut out = block_checks(m);
    if out.iter().any(|c| !c.pass) {
        return out;
    }
    let top = working_truncation(m);
    let gactions: Vec<&String> = m.order.iter().filter(|(k, _)| *k == crate::document::Kind::GAction).map(|(_, n)| n).collect();
    for name in gactions {
        let c = &m.gcats[name];
        let check = format!("axioms:nerve({name})");
        out.push(match nerve(c, top) {
            Ok(x) => Check::from_validation(&check, &format!("N({name})"), &gsset_report(&x)),
            Err(e) => Check::error(&check, e),
        });
        let check = format!("axioms:grothendieck({name})");
        out.push(match grothendieck(&under_family(&Functor::identity(c.clone())).functor) {
            Ok(g) => Check::from_validation(&check, &format!("{name}∫(−↓{name})"), &g.category.validate()),
            Err(e) => Check::error(&check, e),
        });
    }
    for (sname, s) in m.functor_maps() {
        if !s.is_equivariant() {
            continue;
        }
        let check = format!("axioms:grothendieck({sname})");
        out.push(match grothendieck(&under_family(s).functor) {
            Ok(g) => Check::from_validation(&check, &format!("grothendieck of −↓{sname}"), &g.category.validate()),
            Err(e) => Check::error(&check, e),
        });
    }
    for fname in m.functor_names() {
        let rf = &m.functors[fname];
        if rf.contra {
            continue;
        }
        let f = &rf.functor;
        let mut push = |what: &str, r: ghocolim_core::Result<ValidationReport>| {
            let check = format!("axioms:{what}({fname})");
            out.push(match r {
                Ok(r) => Check::from_validation(&check, &format!("{what} of {fname}"), &r),
                Err(e) => Check::error(&check, e),
            });
        };
        push("bar", bar_with_point(f).and_then(|(b, _)| Ok(gsset_report(b.g()?))));
        push("hocolim", hocolim(f).and_then(|h| Ok(gsset_report(h.g()?))));
        push("colim", colim(f).and_then(|q| Ok(gsset_report(q.g()?))));
        let star = Arc::new(SFunctor::point(Arc::new(f.domain.opposite()), f.top()));
        push("coend", tensor(f, &star).and_then(|(q, _)| Ok(gsset_report(q.g()?))));
    }
    out
}
