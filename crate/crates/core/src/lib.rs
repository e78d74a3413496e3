// SPDX-License-Identifier: Apache-2.0

//! Mining maximal and maximum (k,r)-cores of attributed graphs.
//!
//! A (k,r)-core is a connected set of vertices in which every vertex has at
//! least `k` neighbours inside the set and every pair of vertices is similar
//! under a threshold `r` on their attributes.
//!
//! ```
//! use krcore::{advanced_enum, fixtures, EnumConfig, Query};
//!
//! let (graph, similarity) = fixtures::k6_minus_pair();
//! let query = Query::new(2, similarity).unwrap();
//! let result = advanced_enum(&graph, &query, &EnumConfig::default()).unwrap();
//! assert_eq!(result.cores.len(), 2);
//! ```

pub mod cli;
pub mod clique;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod io;
pub mod maximum;
pub mod oracle;
pub mod ordering;
pub mod search;
pub mod similarity;

pub use clique::{clique_based_enum, maximal_cliques, CliqueConfig};
pub use enumeration::{advanced_enum, check_maximal, early_termination, naive_enum, EnumConfig, EnumResult};
pub use error::{Error, Result};
pub use graph::{AttributedGraph, Graph, VertexAttribute, VertexId, VertexSubset};
pub use maximum::{find_maximum, BoundKind, MaxConfig, MaxResult};
pub use oracle::{brute_force_maximum, brute_force_mkrc};
pub use ordering::{BranchScore, OrderStrategy};
pub use search::{preprocess, Branch, Component, KrCore, Query, SearchState, SearchStats};
pub use similarity::{Similarity, SimilarityIndex, SimilarityMetric};
