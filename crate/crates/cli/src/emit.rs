//! Writing core objects back out as document blocks.

use std::sync::Arc;

use ghocolim_core::algebra::action::CatAction;
use ghocolim_core::algebra::category::{CatMap, FinCategory};
use ghocolim_core::algebra::gfunctor::SFunctor;
use ghocolim_core::algebra::group::FinGroup;
use ghocolim_core::simplicial::gsset::GSSet;
use ghocolim_core::simplicial::sset::{LevelMap, SSet};

use crate::document::{Block, Kind};

pub fn group_block(name: &str, g: &FinGroup) -> Block {
    let mut b = Block::new(Kind::Group, name);
    for row in g.rows() {
        b.push("row", row);
    }
    b
}

pub fn category_block(name: &str, c: &FinCategory) -> Block {
    let mut b = Block::new(Kind::Category, name);
    b.push("objects", [c.object_count()]);
    for (f, (s, t)) in c.morphisms().into_iter().enumerate() {
        b.push("morphism", [f, s, t]);
    }
    for (x, &f) in c.identities().iter().enumerate() {
        b.push("identity", [x, f]);
    }
    let mut comp: Vec<(usize, usize, usize)> =
        c.composition_entries().filter(|&(g, f, _)| !c.is_identity(g) && !c.is_identity(f)).collect();
    comp.sort_unstable();
    for (g, f, h) in comp {
        b.push("comp", [g, f, h]);
    }
    b
}

/// An action with every element acting trivially is written without tables.
pub fn gaction_block(name: &str, category: &str, group: &str, action: &CatAction) -> Block {
    let mut b = Block::new(Kind::GAction, name).attr("category", category).attr("group", group);
    let objects = action.object_tables();
    let morphisms = action.morphism_tables();
    let trivial = objects.iter().all(|t| t.iter().enumerate().all(|(i, &j)| i == j))
        && morphisms.iter().all(|t| t.iter().enumerate().all(|(i, &j)| i == j));
    if !trivial {
        for g in 1..objects.len() {
            b.push("objects", std::iter::once(g).chain(objects[g].iter().copied()));
        }
        for g in 1..morphisms.len() {
            b.push("morphisms", std::iter::once(g).chain(morphisms[g].iter().copied()));
        }
    }
    b
}

/// Explicit tables; with `action`, the `act` entries of a nontrivial action.
pub fn sset_block(name: &str, x: &SSet, action: Option<(&str, &GSSet)>) -> Block {
    let mut b = Block::new(Kind::SSet, name).attr("top", x.top());
    if let Some((group, _)) = action {
        b = b.attr("group", group);
    }
    for n in 0..=x.top() {
        b.push("count", [n, x.count(n)]);
    }
    for n in 1..=x.top() {
        for i in 0..=n {
            b.push("face", [n, i].into_iter().chain(x.face_table(n, i).iter().copied()));
        }
    }
    for n in 0..x.top() {
        for i in 0..=n {
            b.push("degen", [n, i].into_iter().chain(x.degen_table(n, i).iter().copied()));
        }
    }
    if let Some((_, gx)) = action {
        let id = LevelMap::identity(x);
        if gx.group.elements().any(|g| *gx.action_levels(g) != id) {
            for g in gx.group.elements().skip(1) {
                for n in 0..=x.top() {
                    b.push("act", [g, n].into_iter().chain(gx.action_levels(g).level(n).iter().copied()));
                }
            }
        }
    }
    b
}

pub fn level_map_block(name: &str, source: &str, target: &str, f: &LevelMap) -> Block {
    let mut b = Block::new(Kind::Map, name).attr("source", source).attr("target", target);
    for (n, level) in f.0.iter().enumerate() {
        b.push("level", std::iter::once(n).chain(level.iter().copied()));
    }
    b
}

pub fn functor_map_block(name: &str, source: &str, target: &str, f: &CatMap) -> Block {
    let mut b = Block::new(Kind::Map, name).attr("source", source).attr("target", target);
    b.push("objects", f.on_objects.iter().copied());
    b.push("morphisms", f.on_morphisms.iter().copied());
    b
}

/// A functor with the blocks it needs: deduplicated value ssets, its level
/// maps (identities written as `id`) and its eta block. Block names start
/// with `prefix`.
pub fn functor_blocks(prefix: &str, gaction: &str, contra: bool, f: &SFunctor) -> Vec<Block> {
    let mut out = Vec::new();
    let mut values: Vec<(Arc<SSet>, String)> = Vec::new();
    let mut value_name = |x: &Arc<SSet>, out: &mut Vec<Block>| -> String {
        if let Some((_, n)) = values.iter().find(|(v, _)| v == x) {
            return n.clone();
        }
        let n = format!("{prefix}.v{}", values.len());
        out.push(sset_block(&n, x, None));
        values.push((x.clone(), n.clone()));
        n
    };
    let c = &f.domain.cat;
    let names: Vec<String> = (0..c.object_count()).map(|x| value_name(f.value(x), &mut out)).collect();

    let mut maps: Vec<(String, String, LevelMap, String)> = Vec::new();
    let mut map_name = |s: usize, t: usize, lm: &LevelMap, fresh: String, out: &mut Vec<Block>| -> String {
        if names[s] == names[t] && *lm == LevelMap::identity(f.value(s)) {
            return "id".into();
        }
        if let Some((_, _, _, n)) = maps.iter().find(|(a, b, m, _)| *a == names[s] && *b == names[t] && m == lm) {
            return n.clone();
        }
        out.push(level_map_block(&fresh, &names[s], &names[t], lm));
        maps.push((names[s].clone(), names[t].clone(), lm.clone(), fresh.clone()));
        fresh
    };

    let mut fb = Block::new(Kind::Functor, prefix).attr("domain", gaction);
    if contra {
        fb = fb.attr("variance", "contra");
    }
    for (x, n) in names.iter().enumerate() {
        fb.push("value", [x.to_string(), n.clone()]);
    }
    for m in 0..c.morphism_count() {
        if c.is_identity(m) {
            continue;
        }
        let n = map_name(c.src(m), c.tgt(m), f.map(m), format!("{prefix}.m{m}"), &mut out);
        fb.push("map", [m.to_string(), n]);
    }
    let group = f.domain.group();
    let mut eb = Block::new(Kind::Eta, format!("{prefix}.eta")).attr("functor", prefix);
    for g in group.elements().skip(1) {
        for x in 0..c.object_count() {
            let gx = f.domain.action.obj(g, x);
            let n = map_name(x, gx, f.eta(g, x), format!("{prefix}.e{g}.{x}"), &mut out);
            eb.push("entry", [g.to_string(), x.to_string(), n]);
        }
    }
    out.push(fb);
    if group.order() > 1 {
        out.push(eb);
    }
    out
}
