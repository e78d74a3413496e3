// SPDX-License-Identifier: Apache-2.0

//! Clique-based baseline: every (k,r)-core lies inside a maximal clique of
//! the similarity graph, so enumerate those cliques and take the k-core of
//! each.

use crate::enumeration::{for_each_component, remove_contained, EnumResult};
use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, Graph, VertexId, VertexSubset};
use crate::search::{preprocess, Query, SearchStats};

pub const DEFAULT_CLIQUE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct CliqueConfig {
    /// Largest number of maximal cliques enumerated per component.
    pub clique_budget: u64,
    pub threads: Option<usize>,
}

impl Default for CliqueConfig {
    fn default() -> Self {
        CliqueConfig {
            clique_budget: DEFAULT_CLIQUE_BUDGET,
            threads: None,
        }
    }
}

/// All maximal cliques of `j` restricted to `s`, each ascending, in
/// lexicographic order. Bron–Kerbosch with a pivot maximising `|P ∩ N(u)|`.
pub fn maximal_cliques(j: &Graph, s: &VertexSubset, budget: u64) -> Result<Vec<Vec<VertexId>>> {
    let n = j.vertex_count();
    let nbr: Vec<VertexSubset> = (0..n as VertexId)
        .map(|u| VertexSubset::from_vertices(n, j.neighbors(u).iter().copied()))
        .collect();
    let mut out = Vec::new();
    let mut r = Vec::new();
    expand(&nbr, &mut r, s.clone(), VertexSubset::empty(n), &mut out, budget)?;
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn expand(
    nbr: &[VertexSubset],
    r: &mut Vec<VertexId>,
    mut p: VertexSubset,
    mut x: VertexSubset,
    out: &mut Vec<Vec<VertexId>>,
    budget: u64,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            if out.len() as u64 >= budget {
                return Err(Error::CliqueBudgetExceeded(budget));
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection(&nbr[u as usize]).len(), std::cmp::Reverse(u)))
        .expect("p is not empty");
    for v in p.difference(&nbr[pivot as usize]).to_vec() {
        let nv = &nbr[v as usize];
        r.push(v);
        expand(nbr, r, p.intersection(nv), x.intersection(nv), out, budget)?;
        r.pop();
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// Maximal (k,r)-cores via maximal cliques of each component's similarity
/// graph.
pub fn clique_based_enum(g: &AttributedGraph, query: &Query, cfg: &CliqueConfig) -> Result<EnumResult> {
    let comps = preprocess(g, query)?;
    let (cores, stats) = for_each_component(&comps, cfg.threads, |_, comp, stats: &mut SearchStats| {
        let all = VertexSubset::full(comp.len());
        let j = comp.index().similarity_graph(&all);
        let cliques = maximal_cliques(&j, &all, cfg.clique_budget)?;
        stats.leaves += cliques.len() as u64;
        let mut found = Vec::new();
        for clique in cliques {
            let set = VertexSubset::from_vertices(comp.len(), clique);
            let core = comp.graph().k_core(&set, comp.k());
            for piece in comp.graph().connected_components(&core) {
                found.push(comp.core(&piece)?);
            }
        }
        Ok(found)
    })?;
    Ok(EnumResult {
        cores: remove_contained(cores),
        stats,
    })
}
