//! The `build` command: run one construction and append its output.

use std::sync::Arc;

use ghocolim_core::algebra::category::FinCategory;
use ghocolim_core::algebra::functor::Functor;
use ghocolim_core::constructions::canonical::{bar_with_point, pushdown};
use ghocolim_core::constructions::coend::colim;
use ghocolim_core::constructions::comma::under_family;
use ghocolim_core::constructions::grothendieck::{constant_cat, grothendieck};
use ghocolim_core::constructions::hocolim::hocolim;
use ghocolim_core::constructions::nerve::nerve;
use ghocolim_core::simplicial::gsset::GSSet;

use crate::document::{Block, Document};
use crate::emit::{category_block, functor_blocks, gaction_block, sset_block};
use crate::error::InputError;
use crate::resolve::{Model, ResolvedMap};
use crate::verify::working_truncation;

type Res<T> = Result<T, InputError>;

pub const CONSTRUCTIONS: [&str; 6] = ["nerve", "bar", "hocolim", "colim", "grothendieck", "pushdown"];

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    pub functor: Option<String>,
    pub category: Option<String>,
    /// Functor map `S` for `pushdown`.
    pub map: Option<String>,
    /// Constant fiber category for `grothendieck`.
    pub fiber: Option<String>,
    /// Use `−↓C` as the fibers for `grothendieck`.
    pub under: bool,
    /// Name of the output block; the default depends on the construction.
    pub name: Option<String>,
}

/// Appends the output of `construction` to `doc`.
pub fn build(doc: &mut Document, m: &Model, construction: &str, opts: &BuildOptions) -> Res<()> {
    if let Some((name, r)) = m.validate().into_iter().next() {
        return Err(InputError::new(format!("block {name} is invalid:\n{r}")));
    }
    let blocks = match construction {
        "nerve" => {
            let c = gaction(m, opts)?;
            let x = nerve(&m.gcats[&c], working_truncation(m))?;
            vec![gsset(m, &c, opts.name.clone().unwrap_or(format!("nerve.{c}")), &x, "nerve", &c)]
        }
        "bar" | "hocolim" | "colim" => {
            let f = functor(m, opts)?;
            let rf = &m.functors[&f].functor;
            let x = match construction {
                "bar" => bar_with_point(rf)?.0.g()?.clone(),
                "hocolim" => hocolim(rf)?.g()?.clone(),
                _ => colim(rf)?.g()?.clone(),
            };
            let c = m.functors[&f].gaction.clone();
            let out = opts.name.clone().unwrap_or(format!("{construction}.{f}"));
            vec![gsset(m, &c, out, &x, construction, &f)]
        }
        "grothendieck" => grothendieck_blocks(m, opts)?,
        "pushdown" => {
            let (sname, s) = s_map(m, opts)?;
            let f = functor(m, opts)?;
            let rf = &m.functors[&f];
            if !Arc::ptr_eq(&rf.functor.domain, &s.source) {
                return Err(InputError::new(format!("functor {f} is not defined on the source of {sname}")));
            }
            let (_, pushed) = pushdown(s, &rf.functor)?;
            let target = doc.block(&sname).and_then(|b| b.get("target")).unwrap_or_default().to_string();
            let out = opts.name.clone().unwrap_or(format!("push.{f}"));
            let mut blocks = functor_blocks(&out, &target, false, &pushed);
            let from = format!("build:pushdown:{sname}:{f}");
            for b in &mut blocks {
                if b.name == out {
                    b.attrs.push(("from".into(), from.clone()));
                }
            }
            blocks
        }
        other => {
            return Err(InputError::new(format!(
                "unknown construction `{other}` (expected one of {})",
                CONSTRUCTIONS.join(", ")
            )))
        }
    };
    for b in blocks {
        doc.append(b)?;
    }
    Ok(())
}

fn gsset(m: &Model, gaction: &str, name: String, x: &GSSet, construction: &str, input: &str) -> Block {
    let group = m.gaction_group[gaction].as_str();
    let mut b = sset_block(&name, &x.space, Some((group, x)));
    b.attrs.push(("from".into(), format!("build:{construction}:{input}")));
    b
}

fn gaction(m: &Model, opts: &BuildOptions) -> Res<String> {
    match &opts.category {
        Some(c) if m.gcats.contains_key(c) => Ok(c.clone()),
        Some(c) => Err(InputError::new(format!("no gaction named {c}"))),
        None => m
            .gaction_group
            .keys()
            .next()
            .cloned()
            .ok_or_else(|| InputError::new("the document has no gaction")),
    }
}

fn functor(m: &Model, opts: &BuildOptions) -> Res<String> {
    let name = match &opts.functor {
        Some(f) => f.clone(),
        None => m
            .functor_names()
            .into_iter()
            .find(|n| !m.functors[*n].contra)
            .map(str::to_string)
            .ok_or_else(|| InputError::new("the document has no covariant functor"))?,
    };
    match m.functors.get(&name) {
        None => Err(InputError::new(format!("no functor named {name}"))),
        Some(f) if f.contra => Err(InputError::new(format!("functor {name} is contravariant"))),
        Some(_) => Ok(name),
    }
}

fn s_map<'a>(m: &'a Model, opts: &BuildOptions) -> Res<(String, &'a Functor)> {
    let found = match &opts.map {
        Some(n) => match m.maps.get(n) {
            Some(ResolvedMap::Functor(s)) => Some((n.as_str(), s)),
            _ => return Err(InputError::new(format!("no map of categories named {n}"))),
        },
        None => m.functor_maps().into_iter().next(),
    };
    let (name, s) = found.ok_or_else(|| InputError::new("pushdown needs a map of categories S: D → C"))?;
    s.require_equivariant().map_err(|e| InputError::new(format!("S = {name}: {e}")))?;
    Ok((name.to_string(), s))
}

fn grothendieck_blocks(m: &Model, opts: &BuildOptions) -> Res<Vec<Block>> {
    let c = gaction(m, opts)?;
    let base = m.gcats[&c].clone();
    let (family, tag) = match (&opts.fiber, opts.under) {
        (Some(_), true) => return Err(InputError::new("--fiber and --under exclude each other")),
        (Some(d), false) => {
            let fiber = m.categories.get(d).ok_or_else(|| InputError::new(format!("no category named {d}")))?;
            (constant_cat(base.clone(), fiber), format!("fiber={d}"))
        }
        (None, true) => (under_family(&Functor::identity(base.clone())).functor, "under".to_string()),
        (None, false) => (constant_cat(base.clone(), &FinCategory::terminal()), "fiber=terminal".to_string()),
    };
    let g = grothendieck(&family)?;
    let out = opts.name.clone().unwrap_or(format!("groth.{c}"));
    let group = m.gaction_group[&c].clone();
    let from = format!("build:grothendieck:{c}:{tag}");
    let mut cat = category_block(&out, &g.category.cat);
    cat.attrs.push(("from".into(), from.clone()));
    let mut act = gaction_block(&format!("{out}.g"), &out, &group, &g.category.action);
    act.attrs.push(("from".into(), from));
    Ok(vec![cat, act])
}
