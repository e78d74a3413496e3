// SPDX-License-Identifier: Apache-2.0

//! Backtracking state shared by every search in the crate.
//!
//! A node of the binary search tree is a triple `(M, C, E)`: the chosen
//! vertices, the remaining candidates and the relevant excluded vertices.
//! [`SearchState::refine`] moves one candidate into `M` (expand) or out of
//! `C` (shrink) and then restores the two node invariants:
//!
//! * every vertex of `M` is similar to every other vertex of `M ∪ C`;
//! * the graph induced by `M ∪ C` has minimum degree at least `k`.
//!
//! Vertices dropped from `C` are kept in `E` as long as they stay similar to
//! all of `M`, which is what early termination and the maximality check rely
//! on. All sets and counters are on the component-local ids of a
//! [`Component`].

use std::ops::AddAssign;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, Graph, VertexId, VertexSubset};
use crate::similarity::{Similarity, SimilarityIndex};

/// Problem parameters: the degree threshold `k` and the similarity threshold.
#[derive(Clone, Copy, Debug)]
pub struct Query {
    pub k: usize,
    pub similarity: Similarity,
}

impl Query {
    pub fn new(k: usize, similarity: Similarity) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        Ok(Query { k, similarity })
    }
}

/// A connected vertex set (global ids, ascending) satisfying both the degree
/// and the similarity constraint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KrCore {
    vertices: Vec<VertexId>,
}

impl KrCore {
    /// Checks every constraint directly against the input graph.
    pub fn validated(g: &AttributedGraph, query: &Query, mut vertices: Vec<VertexId>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let set = VertexSubset::from_vertices(g.vertex_count(), vertices.iter().copied());
        if !g.graph().is_connected(&set) {
            return Err(Error::Domain(format!("{vertices:?} is not connected")));
        }
        for &u in &vertices {
            let d = g.graph().count_in(u, &set);
            if d < query.k {
                return Err(Error::Domain(format!(
                    "vertex {u} has degree {d} < {} in {vertices:?}",
                    query.k
                )));
            }
            for &v in &vertices {
                if u < v && !query.similarity.is_similar(g, u, v)? {
                    return Err(Error::Domain(format!("vertices {u} and {v} are dissimilar")));
                }
            }
        }
        Ok(KrCore { vertices })
    }

    /// Wraps an ascending vertex list without checking anything.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        KrCore { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &KrCore) -> bool {
        self.vertices.iter().all(|&v| other.contains(v))
    }
}

/// One connected piece of the preprocessed graph: dissimilar edges removed,
/// peeled to its k-core, relabelled to local ids `0..len`.
#[derive(Clone, Debug)]
pub struct Component {
    graph: Graph,
    index: SimilarityIndex,
    k: usize,
}

impl Component {
    /// `graph` and `index` must share the same local ids.
    pub fn new(graph: Graph, index: SimilarityIndex, k: usize) -> Self {
        assert_eq!(graph.vertex_count(), index.len());
        Component { graph, index, k }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn index(&self) -> &SimilarityIndex {
        &self.index
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn global(&self, u: VertexId) -> VertexId {
        self.index.global(u)
    }

    pub fn to_global(&self, s: &VertexSubset) -> Vec<VertexId> {
        s.iter().map(|u| self.global(u)).collect()
    }

    /// Wraps a local vertex set as a result, checking the core constraints
    /// against the component.
    pub fn core(&self, s: &VertexSubset) -> Result<KrCore> {
        if !self.graph.is_connected(s) {
            return Err(Error::Domain("core candidate is not connected".into()));
        }
        if self.graph.min_degree_in(s).unwrap_or(0) < self.k {
            return Err(Error::Domain("core candidate violates the degree constraint".into()));
        }
        if self.index.dp_total(s) != 0 {
            return Err(Error::Domain("core candidate contains a dissimilar pair".into()));
        }
        Ok(KrCore {
            vertices: self.to_global(s),
        })
    }

    /// Search root: `M = ∅`, `C` = every vertex, `E = ∅`.
    pub fn root_state(&self) -> SearchState {
        SearchState::from_sets(self, VertexSubset::empty(self.len()), VertexSubset::full(self.len()))
    }
}

/// Deletes dissimilar edges, peels the k-core and splits it into connected
/// components, each with its own similarity index. The search root of each
/// component is [`Component::root_state`].
pub fn preprocess(g: &AttributedGraph, query: &Query) -> Result<Vec<Component>> {
    let sim = &query.similarity;
    let mut kept = Vec::with_capacity(g.edge_count());
    for (u, v) in g.graph().edges() {
        if sim.is_similar(g, u, v)? {
            kept.push((u, v));
        }
    }
    let (filtered, _) = Graph::from_edges(g.vertex_count(), kept)?;
    let core = filtered.k_core(&g.all_vertices(), query.k);
    filtered
        .connected_components(&core)
        .into_iter()
        .map(|piece| {
            let members = piece.to_vec();
            let local = filtered.induced(&members);
            let index = SimilarityIndex::build(g, &members, sim)?;
            Ok(Component::new(local, index, query.k))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Expand,
    Shrink,
}

impl Branch {
    pub fn other(self) -> Branch {
        match self {
            Branch::Expand => Branch::Shrink,
            Branch::Shrink => Branch::Expand,
        }
    }
}

/// Why a refined child has no (k,r)-core below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// A chosen vertex lost its degree support.
    ChosenVertexPeeled,
    /// The chosen vertices no longer lie in one connected piece of `M ∪ C`.
    Disconnected,
}

#[derive(Clone, Debug)]
pub enum Refinement {
    Alive(SearchState),
    Dead(Termination),
}

impl Refinement {
    pub fn alive(self) -> Option<SearchState> {
        match self {
            Refinement::Alive(s) => Some(s),
            Refinement::Dead(_) => None,
        }
    }
}

/// Counters reported by the searches.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_visited: u64,
    pub leaves: u64,
    pub similarity_prunes: u64,
    pub structure_prunes: u64,
    pub connectivity_prunes: u64,
    pub trivial_terminations: u64,
    pub promotions: u64,
    pub early_terminations: u64,
    pub maximal_checks: u64,
    pub maximal_check_nodes: u64,
    pub bound_cutoffs: u64,
    pub invariant_violations: u64,
}

impl AddAssign<&SearchStats> for SearchStats {
    fn add_assign(&mut self, o: &SearchStats) {
        self.nodes_visited += o.nodes_visited;
        self.leaves += o.leaves;
        self.similarity_prunes += o.similarity_prunes;
        self.structure_prunes += o.structure_prunes;
        self.connectivity_prunes += o.connectivity_prunes;
        self.trivial_terminations += o.trivial_terminations;
        self.promotions += o.promotions;
        self.early_terminations += o.early_terminations;
        self.maximal_checks += o.maximal_checks;
        self.maximal_check_nodes += o.maximal_check_nodes;
        self.bound_cutoffs += o.bound_cutoffs;
        self.invariant_violations += o.invariant_violations;
    }
}

/// Shared cap on the number of search nodes across all components of a run.
#[derive(Debug)]
pub struct NodeBudget {
    limit: u64,
    used: AtomicU64,
}

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

impl NodeBudget {
    pub fn new(limit: u64) -> Self {
        NodeBudget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn charge(&self) -> Result<()> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExceeded(self.limit));
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }
}

impl Default for NodeBudget {
    fn default() -> Self {
        NodeBudget::new(DEFAULT_NODE_BUDGET)
    }
}

/// A node of the search tree with incrementally maintained counters. The
/// counters are kept for every vertex of the component, members or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchState {
    m: VertexSubset,
    c: VertexSubset,
    e: VertexSubset,
    /// deg(v, M ∪ C)
    deg_mc: Vec<u32>,
    /// deg(v, M)
    deg_m: Vec<u32>,
    /// DP(v, C)
    dp_c: Vec<u32>,
    /// DP(v, M)
    dp_m: Vec<u32>,
    /// DP(C)
    dp_total_c: usize,
}

impl SearchState {
    /// Counters computed from scratch for arbitrary disjoint `m` and `c`,
    /// with `E = ∅`. No pruning is applied.
    pub fn from_sets(comp: &Component, m: VertexSubset, c: VertexSubset) -> Self {
        let n = comp.len();
        assert!(m.is_disjoint(&c), "M and C must be disjoint");
        let mc = m.union(&c);
        let g = comp.graph();
        let idx = comp.index();
        let count = |u: VertexId, s: &VertexSubset| g.count_in(u, s) as u32;
        let deg_mc = (0..n as VertexId).map(|u| count(u, &mc)).collect();
        let deg_m = (0..n as VertexId).map(|u| count(u, &m)).collect();
        let dp_c = (0..n as VertexId).map(|u| idx.dp(u, &c) as u32).collect();
        let dp_m = (0..n as VertexId).map(|u| idx.dp(u, &m) as u32).collect();
        let dp_total_c = idx.dp_total(&c);
        SearchState {
            e: VertexSubset::empty(n),
            m,
            c,
            deg_mc,
            deg_m,
            dp_c,
            dp_m,
            dp_total_c,
        }
    }

    /// Builds a state from `m` and `c` and applies the full candidate
    /// pruning: candidates dissimilar to `m` are dropped, `M ∪ C` is peeled to
    /// its k-core and candidates outside the piece holding `m` are dropped.
    pub fn seeded(
        comp: &Component,
        m: VertexSubset,
        c: VertexSubset,
        stats: &mut SearchStats,
    ) -> Refinement {
        let mut s = Self::from_sets(comp, m, c);
        let dissimilar: Vec<VertexId> = s.c.iter().filter(|&v| s.dp_m[v as usize] > 0).collect();
        for &v in &dissimilar {
            s.discard(comp, v);
            stats.similarity_prunes += 1;
        }
        let k = comp.k() as u32;
        let low: Vec<VertexId> = s
            .m
            .union(&s.c)
            .iter()
            .filter(|&v| s.deg_mc[v as usize] < k)
            .collect();
        if low.iter().any(|&v| s.m.contains(v)) {
            return Refinement::Dead(Termination::ChosenVertexPeeled);
        }
        s.finish(comp, low, stats)
    }

    pub fn m(&self) -> &VertexSubset {
        &self.m
    }

    pub fn c(&self) -> &VertexSubset {
        &self.c
    }

    pub fn e(&self) -> &VertexSubset {
        &self.e
    }

    /// `M ∪ C`.
    pub fn span(&self) -> VertexSubset {
        self.m.union(&self.c)
    }

    pub fn deg_mc(&self, v: VertexId) -> usize {
        self.deg_mc[v as usize] as usize
    }

    pub fn deg_m(&self, v: VertexId) -> usize {
        self.deg_m[v as usize] as usize
    }

    pub fn dp_c(&self, v: VertexId) -> usize {
        self.dp_c[v as usize] as usize
    }

    pub fn dp_m(&self, v: VertexId) -> usize {
        self.dp_m[v as usize] as usize
    }

    /// DP(C), the number of dissimilar pairs among the candidates.
    pub fn dp_total_c(&self) -> usize {
        self.dp_total_c
    }

    /// `C = SF(C)`: no dissimilar pair is left among the candidates, so
    /// `M ∪ C` satisfies both constraints.
    pub fn is_similarity_free(&self) -> bool {
        self.dp_total_c == 0
    }

    /// SF(C): candidates similar to every other candidate.
    pub fn sf_set(&self) -> VertexSubset {
        let mut sf = self.c.clone();
        for v in self.c.iter() {
            if self.dp_c[v as usize] > 0 {
                sf.remove(v);
            }
        }
        sf
    }

    /// `C \ SF(C)`, the only vertices worth branching on, ascending.
    pub fn branch_candidates(&self) -> Vec<VertexId> {
        self.c.iter().filter(|&v| self.dp_c[v as usize] > 0).collect()
    }

    /// Moves every similarity-free candidate with at least `k` neighbours in
    /// `M` straight into `M`, to a fixpoint. Returns how many moved.
    pub fn promote_validated(&mut self, comp: &Component) -> usize {
        let k = comp.k() as u32;
        let mut moved = 0;
        loop {
            let ready: Vec<VertexId> = self
                .c
                .iter()
                .filter(|&v| self.dp_c[v as usize] == 0 && self.deg_m[v as usize] >= k)
                .collect();
            if ready.is_empty() {
                return moved;
            }
            for v in ready {
                self.join(comp, v);
                moved += 1;
            }
        }
    }

    /// Applies one branch to candidate `moved` and restores the invariants.
    pub fn refine(
        &self,
        comp: &Component,
        moved: VertexId,
        branch: Branch,
        stats: &mut SearchStats,
    ) -> Result<Refinement> {
        if !self.c.contains(moved) {
            return Err(Error::Domain(format!("vertex {moved} is not a candidate")));
        }
        let k = comp.k() as u32;
        let mut s = self.clone();
        let mut queue = Vec::new();
        match branch {
            Branch::Expand => {
                s.join(comp, moved);
                let dissimilar: Vec<VertexId> = comp
                    .index()
                    .dissimilar(moved)
                    .filter(|&v| s.c.contains(v))
                    .collect();
                for v in dissimilar {
                    s.discard(comp, v);
                    stats.similarity_prunes += 1;
                    if !s.collect_weak(comp, v, k, &mut queue) {
                        return Ok(Refinement::Dead(Termination::ChosenVertexPeeled));
                    }
                }
            }
            Branch::Shrink => {
                s.discard(comp, moved);
                if !s.collect_weak(comp, moved, k, &mut queue) {
                    return Ok(Refinement::Dead(Termination::ChosenVertexPeeled));
                }
            }
        }
        Ok(s.finish(comp, queue, stats))
    }

    /// Peels the queued candidates, cascading, then enforces connectivity.
    fn finish(mut self, comp: &Component, mut queue: Vec<VertexId>, stats: &mut SearchStats) -> Refinement {
        let k = comp.k() as u32;
        while let Some(v) = queue.pop() {
            if !self.c.contains(v) {
                continue;
            }
            self.discard(comp, v);
            stats.structure_prunes += 1;
            if !self.collect_weak(comp, v, k, &mut queue) {
                return Refinement::Dead(Termination::ChosenVertexPeeled);
            }
        }
        if let Some(first) = self.m.first() {
            let span = self.span();
            let start = VertexSubset::from_vertices(comp.len(), [first]);
            let reach = comp.graph().reachable_within(&start, &span);
            if !self.m.is_subset(&reach) {
                return Refinement::Dead(Termination::Disconnected);
            }
            let stranded = self.c.difference(&reach);
            for v in stranded.iter() {
                self.discard(comp, v);
                stats.connectivity_prunes += 1;
            }
        }
        Refinement::Alive(self)
    }

    /// After `removed` left `M ∪ C`, queues neighbours that fell below `k`.
    /// Returns false if a vertex of `M` fell below `k`.
    fn collect_weak(&self, comp: &Component, removed: VertexId, k: u32, queue: &mut Vec<VertexId>) -> bool {
        for &y in comp.graph().neighbors(removed) {
            if self.deg_mc[y as usize] < k {
                if self.m.contains(y) {
                    return false;
                }
                if self.c.contains(y) {
                    queue.push(y);
                }
            }
        }
        true
    }

    /// Removes candidate `v` from `M ∪ C`, keeping it in `E` if it is still
    /// similar to all of `M`.
    fn discard(&mut self, comp: &Component, v: VertexId) {
        debug_assert!(self.c.contains(v));
        self.c.remove(v);
        self.dp_total_c -= self.dp_c[v as usize] as usize;
        for &y in comp.graph().neighbors(v) {
            self.deg_mc[y as usize] -= 1;
        }
        for w in comp.index().dissimilar(v) {
            self.dp_c[w as usize] -= 1;
        }
        if self.dp_m[v as usize] == 0 {
            self.e.insert(v);
        }
    }

    /// Moves candidate `v` into `M`; excluded vertices dissimilar to it leave
    /// `E` for good.
    fn join(&mut self, comp: &Component, v: VertexId) {
        debug_assert!(self.c.contains(v));
        self.c.remove(v);
        self.m.insert(v);
        self.dp_total_c -= self.dp_c[v as usize] as usize;
        for &y in comp.graph().neighbors(v) {
            self.deg_m[y as usize] += 1;
        }
        for w in comp.index().dissimilar(v) {
            self.dp_c[w as usize] -= 1;
            self.dp_m[w as usize] += 1;
            self.e.remove(w);
        }
    }

    /// Recomputes everything from scratch and reports the first broken
    /// invariant.
    pub fn check_invariants(&self, comp: &Component) -> std::result::Result<(), String> {
        if !self.m.is_disjoint(&self.c) || !self.e.is_disjoint(&self.span()) {
            return Err("M, C and E are not pairwise disjoint".into());
        }
        let g = comp.graph();
        let idx = comp.index();
        let span = self.span();
        for u in self.m.iter() {
            if idx.dp(u, &span) != 0 {
                return Err(format!("chosen vertex {u} has a dissimilar vertex in M ∪ C"));
            }
        }
        for u in span.iter() {
            if g.count_in(u, &span) < comp.k() {
                return Err(format!("vertex {u} has degree below k in M ∪ C"));
            }
        }
        for v in self.e.iter() {
            if idx.dp(v, &self.m) != 0 {
                return Err(format!("excluded vertex {v} is dissimilar to M"));
            }
        }
        let fresh = Self::from_sets(comp, self.m.clone(), self.c.clone());
        if fresh.deg_mc != self.deg_mc
            || fresh.deg_m != self.deg_m
            || fresh.dp_c != self.dp_c
            || fresh.dp_m != self.dp_m
            || fresh.dp_total_c != self.dp_total_c
        {
            return Err("maintained counters differ from a recount".into());
        }
        Ok(())
    }
}
