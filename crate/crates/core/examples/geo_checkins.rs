// SPDX-License-Identifier: Apache-2.0

//! Friends with home locations: a core must be well connected and every
//! member must live within 50 km of every other.

use krcore::{advanced_enum, AttributedGraph, EnumConfig, Query, Similarity, SimilarityMetric, VertexAttribute};

fn main() -> krcore::Result<()> {
    let people = [
        ("ana", 48.85, 2.35),   // Paris
        ("ben", 48.80, 2.13),   // Versailles
        ("cai", 48.90, 2.25),   // Neuilly
        ("dee", 48.95, 2.38),   // Saint-Denis
        ("eli", 51.51, -0.13),  // London
        ("fay", 51.45, -0.30),  // Richmond
        ("gus", 51.55, -0.05),  // Hackney
    ];
    let labels: Vec<String> = people.iter().map(|p| p.0.to_string()).collect();
    let attrs = people.iter().map(|&(_, lat, lon)| VertexAttribute::point(lat, lon)).collect();
    let edges = [
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
        (3, 4), // a friendship across the Channel
        (4, 5), (4, 6), (5, 6),
    ];
    let g = AttributedGraph::with_labels(edges, attrs, labels)?;
    let query = Query::new(2, Similarity::new(SimilarityMetric::Haversine, 50.0)?)?;

    for core in advanced_enum(&g, &query, &EnumConfig::default())?.cores {
        let names: Vec<&str> = core.vertices().iter().map(|&u| g.label(u)).collect();
        println!("{}", names.join(" "));
    }
    Ok(())
}
