// SPDX-License-Identifier: Apache-2.0

//! Seeded synthetic instances: small random graphs for exhaustive
//! cross-checks and planted-community graphs for scale runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{AttributedGraph, VertexAttribute, VertexId};
use crate::similarity::{Similarity, SimilarityMetric};

/// G(n, p) with uniform points in the unit square. The Euclidean threshold is
/// chosen so that exactly `round(dissimilar_share * n(n-1)/2)` pairs are
/// dissimilar.
pub fn random_instance(
    seed: u64,
    n: usize,
    edge_probability: f64,
    dissimilar_share: f64,
) -> (AttributedGraph, Similarity) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.random_bool(edge_probability) {
                edges.push((u, v));
            }
        }
    }
    let mut dists: Vec<f64> = Vec::with_capacity(n * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (points[i], points[j]);
            dists.push((a.0 - b.0).hypot(a.1 - b.1));
        }
    }
    dists.sort_by(f64::total_cmp);
    let dissimilar = (dissimilar_share * dists.len() as f64).round() as usize;
    let r = if dists.is_empty() {
        1.0
    } else if dissimilar >= dists.len() {
        -1.0
    } else {
        dists[dists.len() - dissimilar - 1]
    };
    let attrs = points
        .into_iter()
        .map(|(x, y)| VertexAttribute::point(x, y))
        .collect();
    let g = AttributedGraph::new(edges, attrs).expect("generated ids are in range");
    (g, Similarity::new(SimilarityMetric::Euclidean, r).expect("finite threshold"))
}

/// Parameters of [`planted_communities`].
#[derive(Clone, Copy, Debug)]
pub struct PlantedConfig {
    pub vertices: usize,
    pub community_size: usize,
    pub average_degree: f64,
    /// Share of the average degree spent on edges between communities.
    pub cross_share: f64,
    /// Expected share of dissimilar pairs inside a community.
    pub dissimilar_share: f64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            vertices: 50_000,
            community_size: 50,
            average_degree: 8.0,
            cross_share: 0.05,
            dissimilar_share: 0.01,
        }
    }
}

/// Communities laid out on a line, ten units apart. Members sit uniformly on
/// a unit segment at their community's offset, and the Euclidean threshold is
/// `1 - sqrt(dissimilar_share)`, so about that share of in-community pairs is
/// dissimilar while every cross-community pair is.
pub fn planted_communities(seed: u64, cfg: &PlantedConfig) -> (AttributedGraph, Similarity) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.vertices;
    let size = cfg.community_size.max(2);
    let mut attrs = Vec::with_capacity(n);
    for u in 0..n {
        let base = (u / size) as f64 * 10.0;
        attrs.push(VertexAttribute::point(base + rng.random::<f64>(), 0.0));
    }
    let inner_degree = cfg.average_degree * (1.0 - cfg.cross_share);
    let mut edges = Vec::new();
    for start in (0..n).step_by(size) {
        let end = (start + size).min(n);
        let p = (inner_degree / (end - start - 1).max(1) as f64).min(1.0);
        for u in start..end {
            for v in u + 1..end {
                if rng.random_bool(p) {
                    edges.push((u as VertexId, v as VertexId));
                }
            }
        }
    }
    let cross = (n as f64 * cfg.average_degree * cfg.cross_share / 2.0).round() as usize;
    for _ in 0..cross {
        let u = rng.random_range(0..n) as VertexId;
        let v = rng.random_range(0..n) as VertexId;
        edges.push((u, v));
    }
    let g = AttributedGraph::new(edges, attrs).expect("generated ids are in range");
    let r = 1.0 - cfg.dissimilar_share.clamp(0.0, 1.0).sqrt();
    (g, Similarity::new(SimilarityMetric::Euclidean, r).expect("finite threshold"))
}
