// SPDX-License-Identifier: Apache-2.0

//! Small named graphs used throughout the tests and examples. Every fixture
//! uses point attributes with the Euclidean metric and `r = 0.9`.

use crate::graph::{AttributedGraph, VertexAttribute, VertexId};
use crate::similarity::{Similarity, SimilarityMetric};

pub const RADIUS: f64 = 0.9;

pub fn similarity() -> Similarity {
    Similarity::new(SimilarityMetric::Euclidean, RADIUS).expect("finite radius")
}

fn complete_edges(n: u32) -> Vec<(VertexId, VertexId)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn colocated(n: usize) -> Vec<VertexAttribute> {
    vec![VertexAttribute::point(0.0, 0.0); n]
}

/// Complete graph on 0..=4, every pair similar.
pub fn k5() -> (AttributedGraph, Similarity) {
    let g = AttributedGraph::new(complete_edges(5), colocated(5)).expect("valid fixture");
    (g, similarity())
}

/// Path 0-1-2, every pair similar.
pub fn path3() -> (AttributedGraph, Similarity) {
    let g = AttributedGraph::new([(0, 1), (1, 2)], colocated(3)).expect("valid fixture");
    (g, similarity())
}

/// Complete graph on 0..=5 where only the pair (0, 5) is dissimilar.
pub fn k6_minus_pair() -> (AttributedGraph, Similarity) {
    let mut attrs = vec![VertexAttribute::point(0.5, 0.0); 6];
    attrs[0] = VertexAttribute::point(0.0, 0.0);
    attrs[5] = VertexAttribute::point(1.0, 0.0);
    let g = AttributedGraph::new(complete_edges(6), attrs).expect("valid fixture");
    (g, similarity())
}

/// 6-cycle 0-1-2-3-4-5-0, every pair similar.
pub fn cycle6() -> (AttributedGraph, Similarity) {
    let edges = (0..6).map(|u| (u, (u + 1) % 6));
    let g = AttributedGraph::new(edges, colocated(6)).expect("valid fixture");
    (g, similarity())
}

/// Six vertices on a line with `r = 3` and `k = 3` in mind: the similarity
/// graph contains a 4-core (so the plain core bound is 5), but the largest
/// set that is both a structural 3-core and a k'-core of the similarity graph
/// has k' = 3, and the maximum (3, r)-core has four vertices.
pub fn bound_gap() -> (AttributedGraph, Similarity) {
    let xs = [4.0, 1.0, 6.0, 3.0, 2.0, 4.0];
    let attrs = xs.iter().map(|&x| VertexAttribute::point(x, 0.0)).collect();
    let edges = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 5),
        (3, 4),
        (3, 5),
    ];
    let g = AttributedGraph::new(edges, attrs).expect("valid fixture");
    let sim = Similarity::new(SimilarityMetric::Euclidean, 3.0).expect("finite radius");
    (g, sim)
}
