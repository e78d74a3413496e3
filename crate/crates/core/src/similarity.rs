// SPDX-License-Identifier: Apache-2.0

//! Attribute similarity: metrics, the thresholded similar/dissimilar
//! predicate, and a per-component index of dissimilar pairs.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, Graph, VertexAttribute, VertexId, VertexSubset};

const EARTH_RADIUS_KM: f64 = 6371.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimilarityMetric {
    /// Sum of per-token minimum weights over sum of per-token maximum weights.
    WeightedJaccard,
    /// Planar L2 distance between points.
    Euclidean,
    /// Great-circle distance in kilometres; points are (latitude, longitude)
    /// in degrees.
    Haversine,
}

/// Whether a larger score means "more alike" or "further apart".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Similarity,
    Distance,
}

impl SimilarityMetric {
    pub fn polarity(self) -> Polarity {
        match self {
            SimilarityMetric::WeightedJaccard => Polarity::Similarity,
            SimilarityMetric::Euclidean | SimilarityMetric::Haversine => Polarity::Distance,
        }
    }
}

pub fn similarity_score(
    a: &VertexAttribute,
    b: &VertexAttribute,
    metric: SimilarityMetric,
) -> Result<f64> {
    use VertexAttribute::*;
    match (metric, a, b) {
        (SimilarityMetric::WeightedJaccard, Keywords(wa), Keywords(wb)) => {
            if wa.is_empty() && wb.is_empty() {
                return Err(Error::Config(
                    "weighted Jaccard is undefined for two empty keyword sets".into(),
                ));
            }
            let (mut lo, mut hi) = (0.0, 0.0);
            for (token, &x) in wa {
                let y = wb.get(token).copied().unwrap_or(0.0);
                lo += x.min(y);
                hi += x.max(y);
            }
            hi += wb
                .iter()
                .filter(|(token, _)| !wa.contains_key(*token))
                .map(|(_, &y)| y)
                .sum::<f64>();
            Ok(lo / hi)
        }
        (SimilarityMetric::Euclidean, Point { x: x1, y: y1 }, Point { x: x2, y: y2 }) => {
            Ok((x1 - x2).hypot(y1 - y2))
        }
        (SimilarityMetric::Haversine, Point { x: lat1, y: lon1 }, Point { x: lat2, y: lon2 }) => {
            let (p1, p2) = (lat1.to_radians(), lat2.to_radians());
            let dp = (lat2 - lat1).to_radians();
            let dl = (lon2 - lon1).to_radians();
            let h = (dp / 2.0).sin().powi(2) + p1.cos() * p2.cos() * (dl / 2.0).sin().powi(2);
            Ok(2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin())
        }
        (m, a, b) => Err(Error::Config(format!(
            "metric {m:?} does not apply to attributes {} / {}",
            variant_name(a),
            variant_name(b)
        ))),
    }
}

fn variant_name(a: &VertexAttribute) -> &'static str {
    match a {
        VertexAttribute::Keywords(_) => "keywords",
        VertexAttribute::Point { .. } => "point",
    }
}

/// A metric together with its threshold `r`. Scores exactly at `r` count as
/// similar for both polarities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Similarity {
    metric: SimilarityMetric,
    r: f64,
}

impl Similarity {
    pub fn new(metric: SimilarityMetric, r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::Config(format!("threshold r must be finite, got {r}")));
        }
        Ok(Similarity { metric, r })
    }

    pub fn metric(&self) -> SimilarityMetric {
        self.metric
    }

    pub fn threshold(&self) -> f64 {
        self.r
    }

    pub fn polarity(&self) -> Polarity {
        self.metric.polarity()
    }

    pub fn accepts(&self, score: f64) -> bool {
        match self.polarity() {
            Polarity::Similarity => score >= self.r,
            Polarity::Distance => score <= self.r,
        }
    }

    pub fn attributes_similar(&self, a: &VertexAttribute, b: &VertexAttribute) -> Result<bool> {
        Ok(self.accepts(similarity_score(a, b, self.metric)?))
    }

    pub fn is_similar(&self, g: &AttributedGraph, u: VertexId, v: VertexId) -> Result<bool> {
        if u == v {
            return Err(Error::Domain(format!(
                "similarity is defined between distinct vertices, got ({u}, {u})"
            )));
        }
        self.attributes_similar(g.attribute(u), g.attribute(v))
    }
}

#[derive(Clone, Debug)]
enum PairStore {
    Sparse(Vec<Vec<VertexId>>),
    Dense(Vec<FixedBitSet>),
}

/// Dissimilar pairs among the members of one component, on local ids
/// `0..members.len()`. Only the boolean outcome of thresholding is stored.
#[derive(Clone, Debug)]
pub struct SimilarityIndex {
    members: Vec<VertexId>,
    store: PairStore,
    pairs: usize,
}

/// Share of all pairs above which the index switches to a dense bit matrix.
const DENSE_SHARE: f64 = 0.25;

impl SimilarityIndex {
    /// All-pairs thresholding over `members` (global ids, sorted). Local id
    /// `i` refers to `members[i]`.
    pub fn build(g: &AttributedGraph, members: &[VertexId], sim: &Similarity) -> Result<Self> {
        let attrs: Vec<&VertexAttribute> = members.iter().map(|&u| g.attribute(u)).collect();
        Self::from_predicate(members.to_vec(), |i, j| {
            sim.attributes_similar(attrs[i as usize], attrs[j as usize])
                .map(|s| !s)
        })
    }

    /// Builds an index from an explicit dissimilarity predicate on local ids,
    /// queried once per unordered pair with `i < j`.
    pub fn from_predicate<F>(members: Vec<VertexId>, mut dissimilar: F) -> Result<Self>
    where
        F: FnMut(VertexId, VertexId) -> Result<bool>,
    {
        let n = members.len();
        let mut lists: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut pairs = 0;
        for i in 0..n as VertexId {
            for j in i + 1..n as VertexId {
                if dissimilar(i, j)? {
                    lists[i as usize].push(j);
                    lists[j as usize].push(i);
                    pairs += 1;
                }
            }
        }
        let all_pairs = n * n.saturating_sub(1) / 2;
        let store = if all_pairs > 0 && pairs as f64 > DENSE_SHARE * all_pairs as f64 {
            let rows = lists
                .iter()
                .map(|list| {
                    let mut row = FixedBitSet::with_capacity(n);
                    for &v in list {
                        row.insert(v as usize);
                    }
                    row
                })
                .collect();
            PairStore::Dense(rows)
        } else {
            for list in lists.iter_mut() {
                list.sort_unstable();
            }
            PairStore::Sparse(lists)
        };
        Ok(SimilarityIndex {
            members,
            store,
            pairs,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Global id of local vertex `u`.
    pub fn global(&self, u: VertexId) -> VertexId {
        self.members[u as usize]
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    /// Number of dissimilar pairs in the whole component.
    pub fn pair_count(&self) -> usize {
        self.pairs
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.store, PairStore::Dense(_))
    }

    pub fn is_dissimilar(&self, u: VertexId, v: VertexId) -> bool {
        match &self.store {
            PairStore::Sparse(lists) => lists[u as usize].binary_search(&v).is_ok(),
            PairStore::Dense(rows) => rows[u as usize].contains(v as usize),
        }
    }

    /// Local ids dissimilar to `u`, ascending.
    pub fn dissimilar(&self, u: VertexId) -> Dissimilar<'_> {
        match &self.store {
            PairStore::Sparse(lists) => Dissimilar::Sparse(lists[u as usize].iter()),
            PairStore::Dense(rows) => Dissimilar::Dense(rows[u as usize].ones()),
        }
    }

    pub fn dissimilar_degree(&self, u: VertexId) -> usize {
        match &self.store {
            PairStore::Sparse(lists) => lists[u as usize].len(),
            PairStore::Dense(rows) => rows[u as usize].count_ones(..),
        }
    }

    /// DP(u, S): members of `s` dissimilar to `u`.
    pub fn dp(&self, u: VertexId, s: &VertexSubset) -> usize {
        self.dissimilar(u).filter(|&v| s.contains(v)).count()
    }

    /// DP(S): dissimilar pairs with both ends in `s`.
    pub fn dp_total(&self, s: &VertexSubset) -> usize {
        s.iter().map(|u| self.dp(u, s)).sum::<usize>() / 2
    }

    /// SP(u, S): other members of `s` similar to `u`.
    pub fn sp(&self, u: VertexId, s: &VertexSubset) -> usize {
        let others = s.len() - usize::from(s.contains(u));
        others - self.dp(u, s)
    }

    /// The similarity graph restricted to `s`, on the index's local ids:
    /// `(u, v)` is an edge iff both are in `s` and they are similar.
    pub fn similarity_graph(&self, s: &VertexSubset) -> Graph {
        let n = self.len();
        let members = s.to_vec();
        let adj = (0..n as VertexId)
            .map(|u| {
                if !s.contains(u) {
                    return Vec::new();
                }
                members
                    .iter()
                    .copied()
                    .filter(|&v| v != u && !self.is_dissimilar(u, v))
                    .collect()
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }
}

pub enum Dissimilar<'a> {
    Sparse(std::slice::Iter<'a, VertexId>),
    Dense(fixedbitset::Ones<'a>),
}

impl Iterator for Dissimilar<'_> {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        match self {
            Dissimilar::Sparse(it) => it.next().copied(),
            Dissimilar::Dense(it) => it.next().map(|i| i as VertexId),
        }
    }
}
