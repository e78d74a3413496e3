// SPDX-License-Identifier: Apache-2.0

//! Exhaustive ground truth for small graphs.
//!
//! Nothing here touches the search code: connectivity, peeling and
//! constraint checks are redone from scratch on bitmasks, and every subset of
//! every component is tested.

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, VertexId};
use crate::search::{KrCore, Query};

/// Largest component (after dropping dissimilar edges and peeling to the
/// k-core) the oracle accepts. Subsets are encoded in 32-bit masks.
pub const MAX_ORACLE_CAP: usize = 24;

/// Every maximal (k,r)-core, largest first, then lexicographic.
pub fn brute_force_mkrc(g: &AttributedGraph, query: &Query, cap: usize) -> Result<Vec<KrCore>> {
    let cap = cap.min(MAX_ORACLE_CAP);
    let mut out = Vec::new();
    for members in candidate_components(g, query)? {
        if members.len() > cap {
            return Err(Error::NaiveCap {
                size: members.len(),
                cap,
            });
        }
        out.extend(maximal_in(g, query, &members)?);
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// A largest (k,r)-core; the lexicographically smallest among equals.
pub fn brute_force_maximum(g: &AttributedGraph, query: &Query, cap: usize) -> Result<Option<KrCore>> {
    Ok(brute_force_mkrc(g, query, cap)?.into_iter().next())
}

/// Size of the largest (k,r)-core inside `within` (global ids), which may be
/// any vertex set of at most [`MAX_ORACLE_CAP`] vertices.
pub fn max_core_size_within(g: &AttributedGraph, query: &Query, within: &[VertexId]) -> Result<usize> {
    if within.len() > MAX_ORACLE_CAP {
        return Err(Error::NaiveCap {
            size: within.len(),
            cap: MAX_ORACLE_CAP,
        });
    }
    let t = Table::new(g, query, within)?;
    Ok((1..1u32 << within.len())
        .filter(|&m| t.is_core(m))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Connected pieces of the k-core of the graph without dissimilar edges,
/// each sorted. Repeated deletion and a union-find.
fn candidate_components(g: &AttributedGraph, query: &Query) -> Result<Vec<Vec<VertexId>>> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for (u, v) in g.graph().edges() {
        if query.similarity.is_similar(g, u, v)? {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
    }
    let mut alive = vec![true; n];
    loop {
        let low: Vec<usize> = (0..n)
            .filter(|&u| alive[u] && adj[u].iter().filter(|&&v| alive[v as usize]).count() < query.k)
            .collect();
        if low.is_empty() {
            break;
        }
        for u in low {
            alive[u] = false;
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for u in 0..n {
        for &v in &adj[u] {
            if alive[u] && alive[v as usize] {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v as usize));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<VertexId>> = Default::default();
    for u in (0..n).filter(|&u| alive[u]) {
        let root = find(&mut parent, u);
        groups.entry(root).or_default().push(u as VertexId);
    }
    Ok(groups.into_values().collect())
}

/// Adjacency and similarity of a small vertex list as bitmasks over its
/// positions.
struct Table {
    k: usize,
    adj: Vec<u32>,
    /// Positions similar to each position, itself included.
    similar: Vec<u32>,
}

impl Table {
    fn new(g: &AttributedGraph, query: &Query, members: &[VertexId]) -> Result<Self> {
        let n = members.len();
        let mut adj = vec![0u32; n];
        let mut similar = vec![0u32; n];
        for i in 0..n {
            similar[i] |= 1 << i;
            for j in i + 1..n {
                let (u, v) = (members[i], members[j]);
                if g.graph().has_edge(u, v) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
                if query.similarity.is_similar(g, u, v)? {
                    similar[i] |= 1 << j;
                    similar[j] |= 1 << i;
                }
            }
        }
        Ok(Table {
            k: query.k,
            adj,
            similar,
        })
    }

    fn is_core(&self, mask: u32) -> bool {
        if mask == 0 {
            return false;
        }
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.similar[i] & mask != mask || ((self.adj[i] & mask).count_ones() as usize) < self.k {
                return false;
            }
        }
        // flood fill from the lowest member
        let mut seen = mask & mask.wrapping_neg();
        loop {
            let mut next = seen;
            let mut rest = seen;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.adj[i] & mask;
            }
            if next == seen {
                return seen == mask;
            }
            seen = next;
        }
    }
}

fn maximal_in(g: &AttributedGraph, query: &Query, members: &[VertexId]) -> Result<Vec<KrCore>> {
    let n = members.len();
    let t = Table::new(g, query, members)?;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let mut is_core = vec![false; size];
    // some strict superset of the mask is a core
    let mut dominated = vec![false; size];
    let mut out = Vec::new();
    for mask in (1..=full).rev() {
        is_core[mask as usize] = t.is_core(mask);
        let mut missing = full & !mask;
        while missing != 0 {
            let up = (mask | (missing & missing.wrapping_neg())) as usize;
            missing &= missing - 1;
            if is_core[up] || dominated[up] {
                dominated[mask as usize] = true;
                break;
            }
        }
        if is_core[mask as usize] && !dominated[mask as usize] {
            let vertices = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]).collect();
            out.push(KrCore::from_sorted_unchecked(vertices));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn run(fixture: fn() -> (AttributedGraph, crate::similarity::Similarity), k: usize) -> Vec<Vec<VertexId>> {
        let (g, sim) = fixture();
        brute_force_mkrc(&g, &Query::new(k, sim).unwrap(), 20)
            .unwrap()
            .into_iter()
            .map(|c| c.vertices().to_vec())
            .collect()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(run(fixtures::k6_minus_pair, 2), vec![vec![0, 1, 2, 3, 4], vec![1, 2, 3, 4, 5]]);
        assert!(run(fixtures::k5, 5).is_empty());
        assert_eq!(run(fixtures::cycle6, 2), vec![vec![0, 1, 2, 3, 4, 5]]);
        let (g, sim) = fixtures::path3();
        assert!(brute_force_maximum(&g, &Query::new(2, sim).unwrap(), 20).unwrap().is_none());
        let (g, sim) = fixtures::k5();
        assert_eq!(brute_force_maximum(&g, &Query::new(2, sim).unwrap(), 20).unwrap().unwrap().len(), 5);
    }

    #[test]
    fn oracle_cores_pass_direct_validation() {
        let (g, sim) = fixtures::k6_minus_pair();
        let q = Query::new(2, sim).unwrap();
        for c in brute_force_mkrc(&g, &q, 20).unwrap() {
            KrCore::validated(&g, &q, c.vertices().to_vec()).unwrap();
        }
    }

    #[test]
    fn max_within_a_subset() {
        let (g, sim) = fixtures::bound_gap();
        let q = Query::new(3, sim).unwrap();
        assert_eq!(max_core_size_within(&g, &q, &[0, 1, 2, 3, 4, 5]).unwrap(), 4);
        assert_eq!(max_core_size_within(&g, &q, &[0, 1, 2]).unwrap(), 0);
    }

    #[test]
    fn oracle_refuses_large_components() {
        let (g, sim) = fixtures::k6_minus_pair();
        assert!(matches!(
            brute_force_mkrc(&g, &Query::new(2, sim).unwrap(), 5),
            Err(Error::NaiveCap { size: 6, cap: 5 })
        ));
    }
}
