//! Permutation subgraphs: given an ordering sigma of the vertices, each
//! vertex keeps a bounded selection of its back-neighbours (those earlier in
//! the order). On a d-closed graph the result can never exceed
//! d·n - C(d+1, 2) edges, which makes the construction a cheap audit of the
//! closure computation.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{choose2, Graph};
use crate::rank::d_closure;
use crate::rng::{derive_seed, rng_from_seed};

/// Which selection rule fired for a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GSigmaRule {
    /// Back-degree at most d: keep every back-neighbour.
    All,
    /// Back-neighbourhood is a clique: keep the d earliest back-neighbours.
    FirstD,
    /// Otherwise: keep d + 1 back-neighbours that do not form a clique.
    NonCliqueDPlus1,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GSigmaVertexRecord {
    pub vertex: usize,
    pub back_neighborhood: BTreeSet<usize>,
    pub back_degree: usize,
    pub rule: GSigmaRule,
    pub chosen: BTreeSet<usize>,
}

#[derive(Debug, Clone)]
pub struct GSigmaTrace {
    /// Position of each vertex in the order: `sigma[v]` is v's rank.
    pub sigma: Vec<usize>,
    /// Per-vertex records in processing (rank) order.
    pub records: Vec<GSigmaVertexRecord>,
    pub graph: Graph,
    pub edge_total: usize,
}

/// Builds the permutation subgraph for `sigma[v] = rank of v`.
///
/// "First d" means the d back-neighbours of smallest rank. For the
/// non-clique rule a witness non-adjacent pair of smallest rank is chosen
/// and padded with the earliest remaining back-neighbours; the chosen set
/// then cannot be a clique.
pub fn build_g_sigma(g: &Graph, sigma: &[usize], d: usize) -> Result<GSigmaTrace> {
    let n = g.n();
    if sigma.len() != n {
        return Err(Error::Parameter(format!(
            "permutation has length {}, graph has {n} vertices",
            sigma.len()
        )));
    }
    let mut by_rank = vec![usize::MAX; n];
    for (v, &r) in sigma.iter().enumerate() {
        if r >= n || by_rank[r] != usize::MAX {
            return Err(Error::Parameter("sigma is not a permutation".into()));
        }
        by_rank[r] = v;
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut records = Vec::with_capacity(n);
    for &v in &by_rank {
        let back: Vec<usize> = {
            let mut b: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| sigma[u] < sigma[v])
                .collect();
            b.sort_by_key(|&u| sigma[u]);
            b
        };
        let back_set: BTreeSet<usize> = back.iter().copied().collect();
        let (rule, chosen) = if back.len() <= d {
            (GSigmaRule::All, back_set.clone())
        } else if g.is_clique(&back_set) {
            (GSigmaRule::FirstD, back[..d].iter().copied().collect())
        } else {
            if d == 0 {
                return Err(Error::Parameter(
                    "non-clique selection needs d >= 1 (a single vertex is always a clique)".into(),
                ));
            }
            let (a, b) = earliest_non_adjacent_pair(g, &back)
                .expect("non-clique back-neighbourhood has a non-adjacent pair");
            let mut chosen: BTreeSet<usize> = [a, b].into();
            for &u in &back {
                if chosen.len() > d {
                    break;
                }
                chosen.insert(u);
            }
            debug_assert_eq!(chosen.len(), d + 1);
            debug_assert!(!g.is_clique(&chosen));
            (GSigmaRule::NonCliqueDPlus1, chosen)
        };
        for &u in &chosen {
            edges.push((u.min(v), u.max(v)));
        }
        records.push(GSigmaVertexRecord {
            vertex: v,
            back_neighborhood: back_set,
            back_degree: back.len(),
            rule,
            chosen,
        });
    }
    let graph = Graph::from_edges(n, edges)?;
    let edge_total = graph.edge_count();
    Ok(GSigmaTrace {
        sigma: sigma.to_vec(),
        records,
        graph,
        edge_total,
    })
}

/// First (by rank) non-adjacent pair within `back` (rank-sorted).
fn earliest_non_adjacent_pair(g: &Graph, back: &[usize]) -> Option<(usize, usize)> {
    for i in 0..back.len() {
        for j in (i + 1)..back.len() {
            if !g.has_edge(back[i], back[j]) {
                return Some((back[i], back[j]));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GSigmaAuditRow {
    pub sigma_index: usize,
    pub edge_total: usize,
    pub bound: usize,
    pub violated: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GSigmaAuditReport {
    pub d: usize,
    pub n: usize,
    pub closure_edge_count: usize,
    pub closure_error_bound: f64,
    pub bound: usize,
    pub rows: Vec<GSigmaAuditRow>,
    pub max_edge_total: usize,
    pub violations: usize,
}

/// Computes the d-closure, then builds the permutation subgraph for
/// `num_perms` random orders over it, recording each edge total against the
/// bound d·n - C(d+1, 2). A violation indicts the closure computation.
pub fn audit_gsigma_bound(
    g: &Graph,
    d: usize,
    num_perms: usize,
    seed: u64,
    closure_trials: usize,
    prime: u64,
) -> Result<GSigmaAuditReport> {
    let closure = d_closure(g, d, closure_trials, prime, derive_seed(seed, &[0x6373]))?;
    let closed = &closure.graph;
    let n = closed.n();
    let bound = (d * n).saturating_sub(choose2(d + 1));
    let mut rows = Vec::with_capacity(num_perms);
    let mut max_edge_total = 0;
    let mut violations = 0;
    for index in 0..num_perms {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng_from_seed(derive_seed(seed, &[index as u64])));
        let mut sigma = vec![0usize; n];
        for (rank, &v) in order.iter().enumerate() {
            sigma[v] = rank;
        }
        let trace = build_g_sigma(closed, &sigma, d)?;
        let violated = trace.edge_total > bound;
        max_edge_total = max_edge_total.max(trace.edge_total);
        violations += violated as usize;
        rows.push(GSigmaAuditRow {
            sigma_index: index,
            edge_total: trace.edge_total,
            bound,
            violated,
        });
    }
    Ok(GSigmaAuditReport {
        d,
        n,
        closure_edge_count: closed.edge_count(),
        closure_error_bound: closure.error_bound,
        bound,
        rows,
        max_edge_total,
        violations,
    })
}
