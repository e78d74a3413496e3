// SPDX-License-Identifier: Apache-2.0

//! Attributed graph model, vertex subsets and the structural primitives the
//! searches are built from: induced degrees, k-core peeling, core numbers and
//! connected components.

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Dense vertex index, `0..n` within the graph that owns it.
pub type VertexId = u32;

/// Attribute attached to every vertex.
#[derive(Clone, Debug, PartialEq)]
pub enum VertexAttribute {
    /// Weighted keyword multiset, token to positive weight.
    Keywords(BTreeMap<String, f64>),
    /// A 2D location. For the haversine metric `x` is latitude and `y` is
    /// longitude, both in degrees.
    Point { x: f64, y: f64 },
}

impl VertexAttribute {
    pub fn point(x: f64, y: f64) -> Self {
        VertexAttribute::Point { x, y }
    }

    pub fn keywords<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (token, weight) in items {
            *map.entry(token.into()).or_insert(0.0) += weight;
        }
        VertexAttribute::Keywords(map)
    }
}

/// A set of vertices drawn from a parent graph with a fixed vertex count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    bits: FixedBitSet,
}

impl VertexSubset {
    pub fn empty(n: usize) -> Self {
        VertexSubset {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSubset { bits }
    }

    pub fn from_vertices<I: IntoIterator<Item = VertexId>>(n: usize, vertices: I) -> Self {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Size of the parent vertex universe.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.contains(v as usize)
    }

    /// Panics if `v` is outside the parent universe.
    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        self.bits.insert(v as usize);
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) {
        self.bits.set(v as usize, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn clear(&mut self) {
        self.bits.clear();
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.ones().map(|i| i as VertexId)
    }

    pub fn first(&self) -> Option<VertexId> {
        self.bits.minimum().map(|i| i as VertexId)
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSubset) -> VertexSubset {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSubset { bits }
    }

    pub fn union_with(&mut self, other: &VertexSubset) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference(&self, other: &VertexSubset) -> VertexSubset {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSubset { bits }
    }

    pub fn intersection(&self, other: &VertexSubset) -> VertexSubset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSubset { bits }
    }

    pub fn is_subset(&self, other: &VertexSubset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSubset) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

/// Undirected simple graph stored as sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edges: usize,
}

/// Counts of input edges that were discarded while building a simple graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Dropped {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a simple graph on `n` vertices. Self-loops and repeated edges
    /// (in either direction) are dropped and counted.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Graph, Dropped)>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n > VertexId::MAX as usize {
            return Err(Error::IdOverflow(n));
        }
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut dropped = Dropped::default();
        let mut total = 0usize;
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                dropped.self_loops += 1;
                continue;
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            total += 1;
        }
        let mut edges = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            edges += list.len();
            // each duplicate shows up once in each endpoint's list
            dropped.duplicates += before - list.len();
        }
        dropped.duplicates /= 2;
        debug_assert_eq!(total - dropped.duplicates, edges / 2);
        Ok((Graph { adj, edges: edges / 2 }, dropped))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.adj[u as usize]
    }

    pub fn degree(&self, u: VertexId) -> usize {
        self.adj[u as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as VertexId;
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// Number of neighbours of `u` inside `s`.
    pub fn degree_in(&self, u: VertexId, s: &VertexSubset) -> Result<usize> {
        if !s.contains(u) {
            return Err(Error::Domain(format!("vertex {u} is not in the subset")));
        }
        Ok(self.count_in(u, s))
    }

    #[inline]
    pub(crate) fn count_in(&self, u: VertexId, s: &VertexSubset) -> usize {
        self.neighbors(u).iter().filter(|&&v| s.contains(v)).count()
    }

    /// The maximal subset of `s` whose induced subgraph has minimum degree at
    /// least `k`. Queue-based peeling, linear in the induced edges.
    pub fn k_core(&self, s: &VertexSubset, k: usize) -> VertexSubset {
        let mut alive = s.clone();
        let mut deg = vec![0usize; self.vertex_count()];
        let mut queue = Vec::new();
        for u in s.iter() {
            deg[u as usize] = self.count_in(u, s);
            if deg[u as usize] < k {
                queue.push(u);
                alive.remove(u);
            }
        }
        while let Some(u) = queue.pop() {
            for &v in self.neighbors(u) {
                if alive.contains(v) {
                    deg[v as usize] -= 1;
                    if deg[v as usize] < k {
                        alive.remove(v);
                        queue.push(v);
                    }
                }
            }
        }
        alive
    }

    /// Core number of every member of `s` within the induced subgraph, by
    /// bucket-ordered peeling. Entries for non-members are zero.
    pub fn core_numbers(&self, s: &VertexSubset) -> Vec<usize> {
        let n = self.vertex_count();
        let mut deg = vec![0usize; n];
        let mut max_deg = 0;
        for u in s.iter() {
            let d = self.count_in(u, s);
            deg[u as usize] = d;
            max_deg = max_deg.max(d);
        }
        let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); max_deg + 1];
        // push in descending id order so the lowest id pops first
        let members = s.to_vec();
        for &u in members.iter().rev() {
            buckets[deg[u as usize]].push(u);
        }
        let mut core = vec![0usize; n];
        let mut removed = VertexSubset::empty(n);
        let mut level = 0;
        let mut remaining = members.len();
        while remaining > 0 {
            let Some(u) = buckets[level].pop() else {
                level += 1;
                continue;
            };
            // stale entry left behind by a degree decrement
            if removed.contains(u) || deg[u as usize] != level {
                continue;
            }
            removed.insert(u);
            remaining -= 1;
            core[u as usize] = level;
            for &v in self.neighbors(u) {
                if s.contains(v) && !removed.contains(v) && deg[v as usize] > level {
                    deg[v as usize] -= 1;
                    buckets[deg[v as usize]].push(v);
                }
            }
        }
        core
    }

    /// Partition of `s` into connected pieces of the induced subgraph, ordered
    /// by ascending minimum vertex.
    pub fn connected_components(&self, s: &VertexSubset) -> Vec<VertexSubset> {
        let n = self.vertex_count();
        let mut seen = VertexSubset::empty(n);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for root in s.iter() {
            if seen.contains(root) {
                continue;
            }
            let mut comp = VertexSubset::empty(n);
            seen.insert(root);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &v in self.neighbors(u) {
                    if s.contains(v) && !seen.contains(v) {
                        seen.insert(v);
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Vertices of `s` reachable from any vertex of `sources` through `s`.
    pub(crate) fn reachable_within(
        &self,
        sources: &VertexSubset,
        s: &VertexSubset,
    ) -> VertexSubset {
        let mut seen = sources.intersection(s);
        let mut stack: Vec<VertexId> = seen.to_vec();
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if s.contains(v) && !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self, s: &VertexSubset) -> bool {
        match s.first() {
            None => false,
            Some(root) => {
                let start = VertexSubset::from_vertices(s.universe(), [root]);
                self.reachable_within(&start, s).len() == s.len()
            }
        }
    }

    pub fn induced_edge_count(&self, s: &VertexSubset) -> usize {
        s.iter()
            .map(|u| {
                self.neighbors(u)
                    .iter()
                    .filter(|&&v| u < v && s.contains(v))
                    .count()
            })
            .sum()
    }

    /// Minimum induced degree over `s`, `None` for an empty set.
    pub fn min_degree_in(&self, s: &VertexSubset) -> Option<usize> {
        s.iter().map(|u| self.count_in(u, s)).min()
    }

    /// Subgraph induced by `members`, relabelled so that `members[i]` becomes
    /// vertex `i`. `members` must be sorted.
    pub fn induced(&self, members: &[VertexId]) -> Graph {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let mut edges = 0;
        let adj: Vec<Vec<VertexId>> = members
            .iter()
            .map(|&u| {
                let list: Vec<VertexId> = self
                    .neighbors(u)
                    .iter()
                    .filter_map(|v| members.binary_search(v).ok().map(|i| i as VertexId))
                    .collect();
                edges += list.len();
                list
            })
            .collect();
        Graph {
            adj,
            edges: edges / 2,
        }
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<VertexId>>) -> Graph {
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edges }
    }
}

/// An undirected simple graph with one attribute per vertex and the external
/// label each dense id was mapped from.
#[derive(Clone, Debug)]
pub struct AttributedGraph {
    graph: Graph,
    attributes: Vec<VertexAttribute>,
    labels: Vec<String>,
    dropped: Dropped,
}

impl AttributedGraph {
    /// Vertices are labelled with their dense ids.
    pub fn new<I>(edges: I, attributes: Vec<VertexAttribute>) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let labels = (0..attributes.len()).map(|i| i.to_string()).collect();
        Self::with_labels(edges, attributes, labels)
    }

    pub fn with_labels<I>(
        edges: I,
        attributes: Vec<VertexAttribute>,
        labels: Vec<String>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if labels.len() != attributes.len() {
            return Err(Error::Config(format!(
                "{} labels for {} attributed vertices",
                labels.len(),
                attributes.len()
            )));
        }
        let (graph, dropped) = Graph::from_edges(attributes.len(), edges)?;
        Ok(AttributedGraph {
            graph,
            attributes,
            labels,
            dropped,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn attribute(&self, u: VertexId) -> &VertexAttribute {
        &self.attributes[u as usize]
    }

    pub fn attributes(&self) -> &[VertexAttribute] {
        &self.attributes
    }

    pub fn label(&self, u: VertexId) -> &str {
        &self.labels[u as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Self-loops and duplicate edges discarded at construction.
    pub fn dropped(&self) -> Dropped {
        self.dropped
    }

    pub fn all_vertices(&self) -> VertexSubset {
        VertexSubset::full(self.vertex_count())
    }
}
