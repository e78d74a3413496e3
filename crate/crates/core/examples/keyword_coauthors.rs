// SPDX-License-Identifier: Apache-2.0

// Co-authors with weighted research keywords, compared by weighted Jaccard.

use krcore::{advanced_enum, AttributedGraph, EnumConfig, Query, Similarity, SimilarityMetric, VertexAttribute};

fn main() -> krcore::Result<()> {
    let authors = [
        vec![("graphs", 3.0), ("databases", 1.0)],
        vec![("graphs", 2.0), ("databases", 1.0)],
        vec![("graphs", 3.0), ("mining", 1.0)],
        vec![("graphs", 2.0), ("databases", 2.0)],
        vec![("vision", 3.0), ("graphs", 1.0)],
    ];
    let attrs = authors.into_iter().map(VertexAttribute::keywords).collect();
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];
    let g = AttributedGraph::new(edges, attrs)?;

    for r in [0.3, 0.5, 0.7] {
        let query = Query::new(2, Similarity::new(SimilarityMetric::WeightedJaccard, r)?)?;
        let res = advanced_enum(&g, &query, &EnumConfig::default())?;
        let cores: Vec<&[u32]> = res.cores.iter().map(|c| c.vertices()).collect();
        println!("r = {r}: {cores:?}");
    }
    Ok(())
}
