// SPDX-License-Identifier: Apache-2.0

//! Vertex and branch selection.
//!
//! Each candidate is scored by simulating both of its branches: `delta1` is
//! the fraction of dissimilar candidate pairs the branch eliminates and
//! `delta2` the fraction of induced edges of `M ∪ C` it costs. The
//! simulation only follows the peeling cascade inside the two-hop
//! neighbourhood of the vertices the branch removes first, so it is cheap and
//! approximate.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::search::{Branch, Component, SearchState};

/// Default trade-off between the two measurements when looking for the
/// maximum core.
pub const DEFAULT_LAMBDA: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OrderStrategy {
    /// Largest summed `delta1`, then smallest summed `delta2`.
    D1ThenD2,
    /// Largest `lambda * delta1 - delta2` over both branches; that branch
    /// goes first.
    LambdaScore(f64),
    /// Highest degree in `M ∪ C`, expand first.
    DegreeGreedy,
    /// Uniformly random candidate and branch order from a seeded stream.
    Random(u64),
}

impl OrderStrategy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            OrderStrategy::LambdaScore(l) if !(l >= 0.0 && l.is_finite()) => Err(Error::Config(
                format!("lambda must be finite and non-negative, got {l}"),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchScore {
    pub delta1: f64,
    pub delta2: f64,
}

impl BranchScore {
    /// Relative drops of dissimilar pairs and induced edges.
    pub fn from_counts(pairs_before: usize, pairs_after: usize, edges_before: usize, edges_after: usize) -> Self {
        let frac = |before: usize, after: usize| {
            if before == 0 {
                0.0
            } else {
                before.saturating_sub(after) as f64 / before as f64
            }
        };
        BranchScore {
            delta1: frac(pairs_before, pairs_after),
            delta2: frac(edges_before, edges_after),
        }
    }

    pub fn lambda_score(&self, lambda: f64) -> f64 {
        lambda * self.delta1 - self.delta2
    }
}

/// Scores of the expand and the shrink branch of candidate `u`.
pub fn branch_scores(comp: &Component, s: &SearchState, u: VertexId) -> Result<(BranchScore, BranchScore)> {
    if s.dp_total_c() == 0 {
        return Err(Error::Domain(
            "branch scores need at least one dissimilar candidate pair".into(),
        ));
    }
    if !s.c().contains(u) || s.dp_c(u) == 0 {
        return Err(Error::Domain(format!(
            "vertex {u} is not a candidate with a dissimilar partner"
        )));
    }
    Ok((
        simulate(comp, s, u, Branch::Expand),
        simulate(comp, s, u, Branch::Shrink),
    ))
}

fn simulate(comp: &Component, s: &SearchState, u: VertexId, branch: Branch) -> BranchScore {
    let g = comp.graph();
    let idx = comp.index();
    let k = comp.k();
    let in_span = |v: VertexId| s.m().contains(v) || s.c().contains(v);

    let seeds: Vec<VertexId> = match branch {
        Branch::Expand => idx.dissimilar(u).filter(|&v| s.c().contains(v)).collect(),
        Branch::Shrink => vec![u],
    };

    let mut window: HashSet<VertexId> = HashSet::new();
    let mut frontier: Vec<VertexId> = seeds.clone();
    frontier.push(u);
    window.extend(frontier.iter().copied());
    for _ in 0..2 {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in g.neighbors(x) {
                if in_span(y) && window.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }

    let mut deg: HashMap<VertexId, usize> = HashMap::new();
    let mut removed: HashSet<VertexId> = HashSet::new();
    let mut removed_order: Vec<VertexId> = Vec::new();
    let mut queue = seeds;
    while let Some(x) = queue.pop() {
        if !removed.insert(x) {
            continue;
        }
        removed_order.push(x);
        for &y in g.neighbors(x) {
            if !window.contains(&y) || removed.contains(&y) || !in_span(y) {
                continue;
            }
            let d = deg.entry(y).or_insert_with(|| s.deg_mc(y));
            *d -= 1;
            if *d < k {
                queue.push(y);
            }
        }
    }

    // candidates leaving C: everything removed that was a candidate, plus u
    let mut left_c: HashSet<VertexId> = removed.iter().copied().filter(|&v| s.c().contains(v)).collect();
    left_c.insert(u);
    let mut pairs_lost = 0usize;
    let mut inner_pairs = 0usize;
    for &x in &left_c {
        pairs_lost += s.dp_c(x);
        inner_pairs += idx.dissimilar(x).filter(|w| left_c.contains(w)).count();
    }
    pairs_lost -= inner_pairs / 2;

    let mut edges_lost = 0usize;
    let mut inner_edges = 0usize;
    for &x in &removed_order {
        edges_lost += s.deg_mc(x);
        inner_edges += g.neighbors(x).iter().filter(|w| removed.contains(w)).count();
    }
    edges_lost -= inner_edges / 2;

    let pairs = s.dp_total_c();
    let edges = g.induced_edge_count(&s.span());
    BranchScore::from_counts(
        pairs,
        pairs.saturating_sub(pairs_lost),
        edges,
        edges.saturating_sub(edges_lost),
    )
}

/// Delta1-then-delta2 selection for enumeration: branch order does not
/// matter there, so both branches' scores are summed.
pub fn choose_vertex_enum(comp: &Component, s: &SearchState) -> Result<VertexId> {
    let mut best: Option<(f64, f64, VertexId)> = None;
    for u in s.branch_candidates() {
        let (e, sh) = branch_scores(comp, s, u)?;
        let d1 = e.delta1 + sh.delta1;
        let d2 = e.delta2 + sh.delta2;
        let better = match best {
            None => true,
            Some((b1, b2, _)) => d1 > b1 || (d1 == b1 && d2 < b2),
        };
        if better {
            best = Some((d1, d2, u));
        }
    }
    best.map(|(_, _, u)| u).ok_or_else(no_candidates)
}

/// `lambda * delta1 - delta2` selection for the maximum search. Returns the
/// vertex with the best single-branch score and that branch.
pub fn choose_vertex_max(comp: &Component, s: &SearchState, lambda: f64) -> Result<(VertexId, Branch)> {
    let mut best: Option<(f64, VertexId, Branch)> = None;
    for u in s.branch_candidates() {
        let (e, sh) = branch_scores(comp, s, u)?;
        let (se, ss) = (e.lambda_score(lambda), sh.lambda_score(lambda));
        let (score, branch) = if se >= ss {
            (se, Branch::Expand)
        } else {
            (ss, Branch::Shrink)
        };
        if best.is_none_or(|(b, _, _)| score > b) {
            best = Some((score, u, branch));
        }
    }
    best.map(|(_, u, b)| (u, b)).ok_or_else(no_candidates)
}

/// Highest degree in `M ∪ C` among `candidates`, lowest id on ties, always
/// expand first.
pub fn choose_vertex_checkmax(s: &SearchState, candidates: &[VertexId]) -> Result<(VertexId, Branch)> {
    let mut heap: BinaryHeap<(usize, Reverse<VertexId>)> =
        candidates.iter().map(|&u| (s.deg_mc(u), Reverse(u))).collect();
    heap.pop()
        .map(|(_, Reverse(u))| (u, Branch::Expand))
        .ok_or_else(no_candidates)
}

fn no_candidates() -> Error {
    Error::Domain("no candidate to branch on".into())
}

/// Stateful front end over the strategies; owns the random stream.
#[derive(Clone, Debug)]
pub struct Chooser {
    strategy: OrderStrategy,
    rng: ChaCha8Rng,
}

impl Chooser {
    pub fn new(strategy: OrderStrategy) -> Self {
        Self::with_stream(strategy, 0)
    }

    /// Separate random streams for independent searches (e.g. per component).
    pub fn with_stream(strategy: OrderStrategy, stream: u64) -> Self {
        let seed = match strategy {
            OrderStrategy::Random(seed) => seed,
            _ => 0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Chooser { strategy, rng }
    }

    pub fn strategy(&self) -> OrderStrategy {
        self.strategy
    }

    /// Vertex to branch on during enumeration. Requires `C != SF(C)`.
    pub fn pick_enum(&mut self, comp: &Component, s: &SearchState) -> Result<VertexId> {
        Ok(match self.strategy {
            OrderStrategy::D1ThenD2 => choose_vertex_enum(comp, s)?,
            OrderStrategy::LambdaScore(l) => choose_vertex_max(comp, s, l)?.0,
            OrderStrategy::DegreeGreedy => choose_vertex_checkmax(s, &s.branch_candidates())?.0,
            OrderStrategy::Random(_) => self.random_candidate(s)?,
        })
    }

    /// Vertex and preferred branch for the maximum search. Requires
    /// `C != SF(C)`.
    pub fn pick_max(&mut self, comp: &Component, s: &SearchState) -> Result<(VertexId, Branch)> {
        match self.strategy {
            OrderStrategy::D1ThenD2 => Ok((choose_vertex_enum(comp, s)?, Branch::Expand)),
            OrderStrategy::LambdaScore(l) => choose_vertex_max(comp, s, l),
            OrderStrategy::DegreeGreedy => choose_vertex_checkmax(s, &s.branch_candidates()),
            OrderStrategy::Random(_) => {
                let u = self.random_candidate(s)?;
                let b = if self.rng.random_bool(0.5) {
                    Branch::Expand
                } else {
                    Branch::Shrink
                };
                Ok((u, b))
            }
        }
    }

    fn random_candidate(&mut self, s: &SearchState) -> Result<VertexId> {
        let c = s.branch_candidates();
        if c.is_empty() {
            return Err(no_candidates());
        }
        Ok(c[self.rng.random_range(0..c.len())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{AttributedGraph, VertexAttribute, VertexSubset};
    use crate::search::{preprocess, Query, SearchStats};

    fn component(g: &AttributedGraph, sim: crate::similarity::Similarity, k: usize) -> Component {
        preprocess(g, &Query::new(k, sim).unwrap()).unwrap().remove(0)
    }

    /// Exact scores from a full refine, as an independent check of the
    /// windowed simulation on graphs small enough for the window to cover.
    fn exact(comp: &Component, s: &SearchState, u: VertexId, b: Branch) -> BranchScore {
        let mut stats = SearchStats::default();
        let edges = comp.graph().induced_edge_count(&s.span());
        let child = s.refine(comp, u, b, &mut stats).unwrap();
        match child.alive() {
            Some(c) => BranchScore::from_counts(
                s.dp_total_c(),
                c.dp_total_c(),
                edges,
                comp.graph().induced_edge_count(&c.span()),
            ),
            None => panic!("fixture branch should survive"),
        }
    }

    #[test]
    fn fixture_expand_clears_every_pair() {
        let (g, sim) = fixtures::k6_minus_pair();
        let comp = component(&g, sim, 2);
        let root = comp.root_state();
        let (e, sh) = branch_scores(&comp, &root, 0).unwrap();
        assert_eq!(e.delta1, 1.0);
        assert_eq!(e, exact(&comp, &root, 0, Branch::Expand));
        assert_eq!(sh, exact(&comp, &root, 0, Branch::Shrink));
        // losing 5 costs its 4 edges out of 14
        assert!((e.delta2 - 4.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn arithmetic() {
        assert_eq!(BranchScore::from_counts(4, 1, 10, 10).delta1, 0.75);
        assert!((BranchScore::from_counts(4, 4, 10, 8).delta2 - 0.2).abs() < 1e-12);
        let s = BranchScore { delta1: 0.75, delta2: 0.2 };
        assert!((s.lambda_score(5.0) - 3.55).abs() < 1e-12);
        assert_eq!(DEFAULT_LAMBDA, 5.0);
    }

    #[test]
    fn scores_need_dissimilar_candidates() {
        let (g, sim) = fixtures::k5();
        let comp = component(&g, sim, 2);
        assert!(branch_scores(&comp, &comp.root_state(), 0).is_err());
        let (g, sim) = fixtures::k6_minus_pair();
        let comp = component(&g, sim, 2);
        assert!(branch_scores(&comp, &comp.root_state(), 2).is_err());
    }

    #[test]
    fn windowed_scores_match_exact_refine_on_small_graphs() {
        for seed in 0..40 {
            let (g, sim) = crate::generate::random_instance(seed, 10, 0.6, 0.15);
            let q = Query::new(2, sim).unwrap();
            for comp in preprocess(&g, &q).unwrap() {
                let root = comp.root_state();
                // diameter-2 components: the window covers everything
                let span = root.span();
                let diameter_two = span.iter().all(|u| {
                    let near: HashSet<_> = comp
                        .graph()
                        .neighbors(u)
                        .iter()
                        .flat_map(|&v| comp.graph().neighbors(v).iter().copied().chain([v]))
                        .collect();
                    span.iter().all(|v| v == u || near.contains(&v))
                });
                if root.dp_total_c() == 0 || !diameter_two {
                    continue;
                }
                for u in root.branch_candidates() {
                    let (e, sh) = branch_scores(&comp, &root, u).unwrap();
                    for (got, b) in [(e, Branch::Expand), (sh, Branch::Shrink)] {
                        let mut stats = SearchStats::default();
                        if root.refine(&comp, u, b, &mut stats).unwrap().alive().is_some() {
                            let want = exact(&comp, &root, u, b);
                            assert!((got.delta1 - want.delta1).abs() < 1e-12, "seed {seed} u {u} {b:?}");
                            assert!((got.delta2 - want.delta2).abs() < 1e-12, "seed {seed} u {u} {b:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn scoring_does_not_mutate_state() {
        let (g, sim) = crate::generate::random_instance(3, 14, 0.5, 0.15);
        let q = Query::new(3, sim).unwrap();
        for comp in preprocess(&g, &q).unwrap() {
            let root = comp.root_state();
            let before = root.clone();
            for u in root.branch_candidates() {
                let (e, sh) = branch_scores(&comp, &root, u).unwrap();
                for sc in [e, sh] {
                    assert!((0.0..=1.0).contains(&sc.delta1));
                    assert!((0.0..=1.0).contains(&sc.delta2));
                }
            }
            assert_eq!(root, before);
        }
    }

    #[test]
    fn checkmax_prefers_degree_then_low_id() {
        // star-ish graph where vertex 3 has the largest degree
        let attrs = vec![VertexAttribute::point(0.0, 0.0); 8];
        let edges = [(3, 0), (3, 1), (3, 2), (3, 4), (3, 5), (7, 0), (7, 1), (0, 1)];
        let g = AttributedGraph::new(edges, attrs).unwrap();
        let comp = Component::new(
            g.graph().clone(),
            crate::similarity::SimilarityIndex::build(&g, &(0..8).collect::<Vec<_>>(), &fixtures::similarity()).unwrap(),
            1,
        );
        let s = SearchState::from_sets(&comp, VertexSubset::empty(8), VertexSubset::full(8));
        assert_eq!(choose_vertex_checkmax(&s, &[3, 7]).unwrap(), (3, Branch::Expand));
        assert_eq!(choose_vertex_checkmax(&s, &[0, 1]).unwrap(), (0, Branch::Expand));
        assert_eq!(choose_vertex_checkmax(&s, &[7]).unwrap(), (7, Branch::Expand));
        assert!(choose_vertex_checkmax(&s, &[]).is_err());
    }

    #[test]
    fn selection_is_deterministic() {
        let (g, sim) = crate::generate::random_instance(11, 14, 0.5, 0.15);
        let q = Query::new(2, sim).unwrap();
        for comp in preprocess(&g, &q).unwrap() {
            let root = comp.root_state();
            if root.is_similarity_free() {
                continue;
            }
            let a = choose_vertex_enum(&comp, &root).unwrap();
            assert_eq!(a, choose_vertex_enum(&comp, &root).unwrap());
            let b = choose_vertex_max(&comp, &root, 5.0).unwrap();
            assert_eq!(b, choose_vertex_max(&comp, &root, 5.0).unwrap());
            let mut r1 = Chooser::new(OrderStrategy::Random(9));
            let mut r2 = Chooser::new(OrderStrategy::Random(9));
            assert_eq!(r1.pick_max(&comp, &root).unwrap(), r2.pick_max(&comp, &root).unwrap());
        }
    }

    #[test]
    fn lambda_must_be_non_negative() {
        assert!(OrderStrategy::LambdaScore(-1.0).validate().is_err());
        assert!(OrderStrategy::LambdaScore(0.0).validate().is_ok());
    }
}
