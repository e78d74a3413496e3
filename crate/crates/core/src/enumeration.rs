// SPDX-License-Identifier: Apache-2.0

//! Enumeration of all maximal (k,r)-cores.
//!
//! [`naive_enum`] is the reference search (optionally with candidate
//! pruning), [`advanced_enum`] adds early termination, promotion of
//! similarity-free candidates and the maximality check on top of it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, VertexId, VertexSubset};
use crate::ordering::{choose_vertex_checkmax, Chooser, OrderStrategy};
use crate::search::{
    preprocess, Branch, Component, KrCore, NodeBudget, Query, Refinement, SearchState, SearchStats,
    DEFAULT_NODE_BUDGET,
};

pub const DEFAULT_NAIVE_CAP: usize = 20;

#[derive(Clone, Debug)]
pub struct EnumConfig {
    pub order: OrderStrategy,
    pub node_budget: u64,
    /// Recount the node invariants at every node and tally violations.
    pub verify_invariants: bool,
    /// Worker threads for the per-component fan-out; `None` uses rayon's
    /// global pool.
    pub threads: Option<usize>,
    /// Largest component the naive search accepts.
    pub naive_cap: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            order: OrderStrategy::D1ThenD2,
            node_budget: DEFAULT_NODE_BUDGET,
            verify_invariants: false,
            threads: None,
            naive_cap: DEFAULT_NAIVE_CAP,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumResult {
    /// Largest first, then lexicographic.
    pub cores: Vec<KrCore>,
    pub stats: SearchStats,
}

impl EnumResult {
    pub fn max_size(&self) -> usize {
        self.cores.iter().map(KrCore::len).max().unwrap_or(0)
    }

    pub fn avg_size(&self) -> f64 {
        if self.cores.is_empty() {
            return 0.0;
        }
        self.cores.iter().map(KrCore::len).sum::<usize>() as f64 / self.cores.len() as f64
    }
}

/// Sorts by size descending, then by vertex list, and drops duplicates.
pub fn canonical_order(cores: &mut Vec<KrCore>) {
    cores.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    cores.dedup();
}

/// Keeps only cores not contained in another one.
pub fn remove_contained(mut cores: Vec<KrCore>) -> Vec<KrCore> {
    canonical_order(&mut cores);
    let mut kept: Vec<KrCore> = Vec::with_capacity(cores.len());
    for c in cores {
        if !kept.iter().any(|k| c.is_subset_of(k)) {
            kept.push(c);
        }
    }
    kept
}

/// Runs `search` on every component, in parallel, and merges the results.
pub(crate) fn for_each_component<F>(
    comps: &[Component],
    threads: Option<usize>,
    search: F,
) -> Result<(Vec<KrCore>, SearchStats)>
where
    F: Fn(usize, &Component, &mut SearchStats) -> Result<Vec<KrCore>> + Sync,
{
    let job = || {
        comps
            .par_iter()
            .enumerate()
            .map(|(i, comp)| {
                let mut stats = SearchStats::default();
                search(i, comp, &mut stats).map(|cores| (cores, stats))
            })
            .collect::<Result<Vec<_>>>()
    };
    let parts = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(job)?,
        None => job()?,
    };
    let mut cores = Vec::new();
    let mut stats = SearchStats::default();
    for (c, s) in parts {
        cores.extend(c);
        stats += &s;
    }
    Ok((cores, stats))
}

/// Reference search. Without pruning it visits the full binary tree of each
/// component and validates only at the leaves; with pruning it applies the
/// candidate pruning rules and nothing else.
pub fn naive_enum(g: &AttributedGraph, query: &Query, pruning_enabled: bool, cfg: &EnumConfig) -> Result<EnumResult> {
    cfg.order.validate()?;
    let comps = preprocess(g, query)?;
    if let Some(big) = comps.iter().find(|c| c.len() > cfg.naive_cap) {
        return Err(Error::NaiveCap {
            size: big.len(),
            cap: cfg.naive_cap,
        });
    }
    let budget = NodeBudget::new(cfg.node_budget);
    let (cores, stats) = for_each_component(&comps, cfg.threads, |i, comp, stats| {
        let mut chooser = Chooser::with_stream(cfg.order, i as u64);
        naive_component(comp, pruning_enabled, &mut chooser, &budget, stats)
    })?;
    Ok(EnumResult {
        cores: remove_contained(cores),
        stats,
    })
}

/// Naive search on one component. Cores may still contain each other.
pub fn naive_component(
    comp: &Component,
    pruning_enabled: bool,
    chooser: &mut Chooser,
    budget: &NodeBudget,
    stats: &mut SearchStats,
) -> Result<Vec<KrCore>> {
    if pruning_enabled {
        basic_search(comp, chooser, budget, stats)
    } else {
        exhaustive_search(comp, budget, stats)
    }
}

fn exhaustive_search(comp: &Component, budget: &NodeBudget, stats: &mut SearchStats) -> Result<Vec<KrCore>> {
    let n = comp.len();
    let g = comp.graph();
    let mut found = Vec::new();
    let mut stack = vec![(VertexSubset::empty(n), VertexSubset::full(n))];
    while let Some((m, c)) = stack.pop() {
        budget.charge()?;
        stats.nodes_visited += 1;
        let Some(u) = c.first() else {
            stats.leaves += 1;
            if !m.is_empty() && g.min_degree_in(&m).unwrap_or(0) >= comp.k() && comp.index().dp_total(&m) == 0 {
                for piece in g.connected_components(&m) {
                    found.push(comp.core(&piece)?);
                }
            }
            continue;
        };
        let mut rest = c;
        rest.remove(u);
        let mut with = m.clone();
        with.insert(u);
        stack.push((m, rest.clone()));
        stack.push((with, rest));
    }
    Ok(found)
}

fn basic_search(
    comp: &Component,
    chooser: &mut Chooser,
    budget: &NodeBudget,
    stats: &mut SearchStats,
) -> Result<Vec<KrCore>> {
    let mut found = Vec::new();
    let mut stack = vec![comp.root_state()];
    while let Some(s) = stack.pop() {
        budget.charge()?;
        stats.nodes_visited += 1;
        let Some(first) = s.c().first() else {
            stats.leaves += 1;
            if !s.m().is_empty() {
                for piece in comp.graph().connected_components(s.m()) {
                    found.push(comp.core(&piece)?);
                }
            }
            continue;
        };
        let u = if s.is_similarity_free() {
            first
        } else {
            chooser.pick_enum(comp, &s)?
        };
        push_children(comp, &s, u, Branch::Expand, &mut stack, stats)?;
    }
    Ok(found)
}

/// Pushes both children of `s` on `u` so that `first` is explored first.
fn push_children(
    comp: &Component,
    s: &SearchState,
    u: VertexId,
    first: Branch,
    stack: &mut Vec<SearchState>,
    stats: &mut SearchStats,
) -> Result<()> {
    for b in [first.other(), first] {
        match s.refine(comp, u, b, stats)? {
            Refinement::Alive(child) => stack.push(child),
            Refinement::Dead(_) => stats.trivial_terminations += 1,
        }
    }
    Ok(())
}

/// Production search.
pub fn advanced_enum(g: &AttributedGraph, query: &Query, cfg: &EnumConfig) -> Result<EnumResult> {
    cfg.order.validate()?;
    let comps = preprocess(g, query)?;
    let budget = NodeBudget::new(cfg.node_budget);
    let (mut cores, stats) = for_each_component(&comps, cfg.threads, |i, comp, stats| {
        let mut chooser = Chooser::with_stream(cfg.order, i as u64);
        advanced_component(comp, &mut chooser, &budget, cfg.verify_invariants, stats)
    })?;
    canonical_order(&mut cores);
    Ok(EnumResult { cores, stats })
}

/// Advanced search on one component.
pub fn advanced_component(
    comp: &Component,
    chooser: &mut Chooser,
    budget: &NodeBudget,
    verify_invariants: bool,
    stats: &mut SearchStats,
) -> Result<Vec<KrCore>> {
    let mut found = Vec::new();
    let mut stack = vec![comp.root_state()];
    while let Some(mut s) = stack.pop() {
        budget.charge()?;
        stats.nodes_visited += 1;
        if verify_invariants && s.check_invariants(comp).is_err() {
            stats.invariant_violations += 1;
        }
        if early_termination(comp, &s) {
            stats.early_terminations += 1;
            continue;
        }
        stats.promotions += s.promote_validated(comp) as u64;
        if !s.is_similarity_free() {
            let u = chooser.pick_enum(comp, &s)?;
            push_children(comp, &s, u, Branch::Expand, &mut stack, stats)?;
            continue;
        }
        stats.leaves += 1;
        let span = s.span();
        let pieces = comp.graph().connected_components(&span);
        for piece in &pieces {
            let mut pool = s.e().clone();
            pool.union_with(&span.difference(piece));
            stats.maximal_checks += 1;
            if check_maximal(comp, piece, &pool, budget, stats)? {
                found.push(comp.core(piece)?);
            }
        }
    }
    Ok(found)
}

/// True when every core below `s` can be extended by excluded vertices, so
/// the subtree holds no maximal core.
///
/// Fires if some excluded vertex with no dissimilar candidate has `k`
/// neighbours in `M`, or if peeling `M` plus the excluded vertices similar to
/// all of `C ∪ E` (never removing `M`) leaves excluded survivors attached to
/// `M`.
pub fn early_termination(comp: &Component, s: &SearchState) -> bool {
    let k = comp.k();
    if s.m().is_empty() || s.e().is_empty() {
        return false;
    }
    let idx = comp.index();
    if s.e().iter().any(|u| s.dp_c(u) == 0 && s.deg_m(u) >= k) {
        return true;
    }
    let free: Vec<VertexId> = s
        .e()
        .iter()
        .filter(|&u| s.dp_c(u) == 0 && idx.dissimilar(u).all(|w| !s.e().contains(w)))
        .collect();
    if free.is_empty() {
        return false;
    }
    let g = comp.graph();
    let mut alive = s.m().clone();
    for &u in &free {
        alive.insert(u);
    }
    let mut queue: Vec<VertexId> = free.iter().copied().filter(|&u| g.count_in(u, &alive) < k).collect();
    while let Some(u) = queue.pop() {
        if !alive.contains(u) {
            continue;
        }
        alive.remove(u);
        for &w in g.neighbors(u) {
            if alive.contains(w) && !s.m().contains(w) && g.count_in(w, &alive) < k {
                queue.push(w);
            }
        }
    }
    let reach = g.reachable_within(s.m(), &alive);
    free.iter().any(|&u| reach.contains(u))
}

/// True when no non-empty `U ⊆ pool` makes `core ∪ U` a (k,r)-core.
///
/// Runs a secondary expand/shrink search seeded with `M = core`, `C = pool`
/// that stops at the first strictly larger core. Branches on the candidate
/// of highest degree, expand first.
pub fn check_maximal(
    comp: &Component,
    core: &VertexSubset,
    pool: &VertexSubset,
    budget: &NodeBudget,
    stats: &mut SearchStats,
) -> Result<bool> {
    if pool.is_empty() {
        return Ok(true);
    }
    let base = core.len();
    let mut scratch = SearchStats::default();
    let root = match SearchState::seeded(comp, core.clone(), pool.difference(core), &mut scratch) {
        Refinement::Alive(s) => s,
        Refinement::Dead(_) => return Ok(true),
    };
    let mut stack = vec![root];
    while let Some(s) = stack.pop() {
        budget.charge()?;
        stats.maximal_check_nodes += 1;
        if s.is_similarity_free() {
            if s.m().len() + s.c().len() > base {
                return Ok(false);
            }
            continue;
        }
        let (u, b) = choose_vertex_checkmax(&s, &s.branch_candidates())?;
        push_children(comp, &s, u, b, &mut stack, &mut scratch)?;
    }
    Ok(true)
}
