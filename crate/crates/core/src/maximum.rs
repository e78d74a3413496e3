// SPDX-License-Identifier: Apache-2.0

//! Branch and bound search for the largest (k,r)-core.

use std::fmt;
use std::str::FromStr;

use crate::enumeration::early_termination;
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::ordering::{Chooser, OrderStrategy, DEFAULT_LAMBDA};
use crate::search::{
    preprocess, Component, KrCore, NodeBudget, Query, Refinement, SearchState, SearchStats,
    DEFAULT_NODE_BUDGET,
};

/// Upper bound on the size of any core inside `M ∪ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `|M| + |C|`.
    Naive,
    /// Colours used by a greedy colouring of the similarity graph.
    Color,
    /// Degeneracy of the similarity graph plus one.
    KCore,
    /// Largest k' such that a set with structural minimum degree `k` and
    /// similarity minimum degree k' exists, plus one.
    KKCore,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [BoundKind::Naive, BoundKind::Color, BoundKind::KCore, BoundKind::KKCore];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Naive => "naive",
            BoundKind::Color => "color",
            BoundKind::KCore => "kcore",
            BoundKind::KKCore => "kkcore",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown bound {s:?}")))
    }
}

pub fn ub_naive(s: &SearchState) -> usize {
    s.m().len() + s.c().len()
}

/// Greedy colouring of the similarity graph over `M ∪ C`, highest degree
/// first, lowest id on ties.
pub fn ub_color(comp: &Component, s: &SearchState) -> usize {
    let span = s.span();
    let j = comp.index().similarity_graph(&span);
    let mut order = span.to_vec();
    order.sort_by_key(|&u| (std::cmp::Reverse(j.degree(u)), u));
    let mut color = vec![usize::MAX; comp.len()];
    let mut used = 0;
    let mut taken = Vec::new();
    for u in order {
        taken.clear();
        taken.resize(used + 1, false);
        for &v in j.neighbors(u) {
            let c = color[v as usize];
            if c < taken.len() {
                taken[c] = true;
            }
        }
        let c = taken.iter().position(|&t| !t).unwrap_or(used);
        color[u as usize] = c;
        used = used.max(c + 1);
    }
    used
}

/// Degeneracy of the similarity graph over `M ∪ C`, plus one.
pub fn ub_kcore(comp: &Component, s: &SearchState) -> usize {
    let span = s.span();
    if span.is_empty() {
        return 0;
    }
    let j = comp.index().similarity_graph(&span);
    j.core_numbers(&span).into_iter().max().unwrap_or(0) + 1
}

/// Peels `M ∪ C` by similarity degree while keeping the structural degree
/// constraint: every removal also removes, recursively, vertices whose
/// structural degree falls below `k`. Similarity degrees are never lowered
/// below the current level. Returns the largest level reached, plus one.
pub fn ub_kkcore(comp: &Component, s: &SearchState) -> usize {
    let span = s.span();
    if span.is_empty() {
        return 0;
    }
    let k = comp.k();
    let g = comp.graph();
    let j = comp.index().similarity_graph(&span);
    let n = comp.len();
    let mut sim_deg = vec![0usize; n];
    let mut deg = vec![0usize; n];
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); span.len()];
    for u in span.iter().collect::<Vec<_>>().into_iter().rev() {
        sim_deg[u as usize] = j.degree(u);
        deg[u as usize] = s.deg_mc(u);
        buckets[sim_deg[u as usize]].push(u);
    }
    let mut alive = span;
    let mut level = 0;
    let mut best: Option<usize> = None;
    let mut cascade = Vec::new();
    while !alive.is_empty() {
        let Some(u) = buckets[level].pop() else {
            level += 1;
            continue;
        };
        if !alive.contains(u) || sim_deg[u as usize] != level {
            continue;
        }
        best = Some(level);
        cascade.push(u);
        while let Some(x) = cascade.pop() {
            if !alive.contains(x) {
                continue;
            }
            alive.remove(x);
            for &v in j.neighbors(x) {
                if alive.contains(v) && sim_deg[v as usize] > level {
                    sim_deg[v as usize] -= 1;
                    buckets[sim_deg[v as usize]].push(v);
                }
            }
            for &v in g.neighbors(x) {
                if alive.contains(v) {
                    deg[v as usize] -= 1;
                    if deg[v as usize] < k {
                        cascade.push(v);
                    }
                }
            }
        }
    }
    best.map_or(0, |b| b + 1)
}

pub fn upper_bound(kind: BoundKind, comp: &Component, s: &SearchState) -> usize {
    match kind {
        BoundKind::Naive => ub_naive(s),
        BoundKind::Color => ub_color(comp, s),
        BoundKind::KCore => ub_kcore(comp, s),
        BoundKind::KKCore => ub_kkcore(comp, s),
    }
}

#[derive(Clone, Debug)]
pub struct MaxConfig {
    pub bound: BoundKind,
    pub order: OrderStrategy,
    pub node_budget: u64,
}

impl Default for MaxConfig {
    fn default() -> Self {
        MaxConfig {
            bound: BoundKind::KKCore,
            order: OrderStrategy::LambdaScore(DEFAULT_LAMBDA),
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct MaxResult {
    pub best: Option<KrCore>,
    pub stats: SearchStats,
}

impl MaxResult {
    pub fn size(&self) -> usize {
        self.best.as_ref().map_or(0, KrCore::len)
    }
}

/// Largest (k,r)-core. Components are searched one after another, starting
/// with the one holding the vertex of highest degree, and share the current
/// best size for pruning.
pub fn find_maximum(g: &AttributedGraph, query: &Query, cfg: &MaxConfig) -> Result<MaxResult> {
    cfg.order.validate()?;
    let mut comps = preprocess(g, query)?;
    let top = |c: &Component| {
        (0..c.len() as u32)
            .map(|u| g.graph().degree(c.global(u)))
            .max()
            .unwrap_or(0)
    };
    // highest-degree component first, the rest in their natural order
    if let Some(first) = (0..comps.len()).max_by_key(|&i| (top(&comps[i]), std::cmp::Reverse(i))) {
        let c = comps.remove(first);
        comps.insert(0, c);
    }
    let budget = NodeBudget::new(cfg.node_budget);
    let mut result = MaxResult::default();
    for (i, comp) in comps.iter().enumerate() {
        let mut chooser = Chooser::with_stream(cfg.order, i as u64);
        search_component(comp, cfg.bound, &mut chooser, &budget, &mut result)?;
    }
    Ok(result)
}

fn search_component(
    comp: &Component,
    bound: BoundKind,
    chooser: &mut Chooser,
    budget: &NodeBudget,
    result: &mut MaxResult,
) -> Result<()> {
    let stats = &mut result.stats;
    let best = &mut result.best;
    let mut stack = vec![comp.root_state()];
    while let Some(mut s) = stack.pop() {
        budget.charge()?;
        stats.nodes_visited += 1;
        if early_termination(comp, &s) {
            stats.early_terminations += 1;
            continue;
        }
        stats.promotions += s.promote_validated(comp) as u64;
        let best_size = best.as_ref().map_or(0, KrCore::len);
        if upper_bound(bound, comp, &s) <= best_size {
            stats.bound_cutoffs += 1;
            continue;
        }
        if s.is_similarity_free() {
            stats.leaves += 1;
            for piece in comp.graph().connected_components(&s.span()) {
                offer(best, comp.core(&piece)?);
            }
            continue;
        }
        let (u, first) = chooser.pick_max(comp, &s)?;
        for b in [first.other(), first] {
            match s.refine(comp, u, b, stats)? {
                Refinement::Alive(child) => stack.push(child),
                Refinement::Dead(_) => stats.trivial_terminations += 1,
            }
        }
    }
    Ok(())
}

fn offer(best: &mut Option<KrCore>, core: KrCore) {
    let better = match best {
        None => true,
        Some(b) => core.len() > b.len() || (core.len() == b.len() && core < *b),
    };
    if better {
        *best = Some(core);
    }
}

/// The bounds of a component's root state, handy for reporting.
pub fn root_bounds(comp: &Component) -> [(BoundKind, usize); 4] {
    let s = comp.root_state();
    BoundKind::ALL.map(|b| (b, upper_bound(b, comp, &s)))
}
