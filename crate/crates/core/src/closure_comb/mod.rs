//! Combinatorics of d-closed graphs: simplicial vertices, permutation
//! subgraph audits, clique absorption, and the closure-based rigidity
//! pipeline for the minimum-degree regime.

mod dpuz;
mod gsigma;

pub use dpuz::{check_neighborhood_cliques, DpuzReport, DpuzVertexReport, DEFAULT_CLIQUE_CAP};
pub use gsigma::{
    audit_gsigma_bound, build_g_sigma, GSigmaAuditReport, GSigmaAuditRow, GSigmaRule, GSigmaTrace,
    GSigmaVertexRecord,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rank::d_closure;

/// A vertex whose neighbourhood induces a clique, scanning in ascending
/// degree (ties by id); None when the graph has no simplicial vertex.
///
/// Every d-closed graph with minimum degree at least d(d+1) has one.
pub fn find_simplicial_vertex(g: &Graph) -> Option<usize> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order.into_iter().find(|&v| g.is_clique(g.neighbors(v)))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbsorptionOutcome {
    pub final_set: BTreeSet<usize>,
    /// Vertices in absorption order.
    pub absorbed: Vec<usize>,
    /// Whether the clique grew to the whole vertex set.
    pub complete: bool,
}

/// Grows a clique of a d-closed graph: any outside vertex with at least `d`
/// neighbours in the clique must be adjacent to all of it (clique-extension
/// property of closures), so it joins as a full member. A vertex that has
/// the neighbours but misses part of the clique indicts the input and
/// raises [`Error::ClosureViolation`].
pub fn absorb_clique(
    g_closed: &Graph,
    d: usize,
    clique: &BTreeSet<usize>,
) -> Result<AbsorptionOutcome> {
    for &v in clique {
        if v >= g_closed.n() {
            return Err(Error::VertexRange {
                vertex: v,
                n: g_closed.n(),
            });
        }
    }
    if !g_closed.is_clique(clique) {
        return Err(Error::Parameter(
            "absorption must start from a clique".into(),
        ));
    }
    let mut set = clique.clone();
    let mut absorbed = Vec::new();
    loop {
        let candidate = g_closed
            .vertices()
            .filter(|v| !set.contains(v))
            .find(|&v| g_closed.degree_into(v, &set) >= d);
        match candidate {
            None => break,
            Some(v) => {
                if let Some(&missing) = set.iter().find(|&&u| !g_closed.has_edge(u, v)) {
                    return Err(Error::ClosureViolation {
                        vertex: v,
                        deg_into: g_closed.degree_into(v, &set),
                        missing,
                    });
                }
                set.insert(v);
                absorbed.push(v);
            }
        }
    }
    let complete = set.len() == g_closed.n();
    Ok(AbsorptionOutcome {
        final_set: set,
        absorbed,
        complete,
    })
}

/// Largest `d` for which the closure pipeline's guarantee applies at `n`
/// vertices: the biggest integer with (4d + 1)^2 <= 8n - 15.
pub fn exact_max_d(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let bound = 8 * n - 15;
    let mut d = 0usize;
    while (4 * (d + 1) + 1).pow(2) <= bound {
        d += 1;
    }
    d
}

/// Integer form of the pipeline's hypotheses:
/// 2 * delta >= n + d - 2 and (4d + 1)^2 <= 8n - 15.
pub fn exact_hypotheses_hold(n: usize, d: usize, min_degree: usize) -> bool {
    n >= 2 && 2 * min_degree + 2 >= n + d && (4 * d + 1).pow(2) <= 8 * n - 15
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactPipelineTrace {
    pub d: usize,
    pub n: usize,
    pub min_degree: usize,
    pub closure_edge_count: usize,
    pub closure_added_edges: usize,
    pub closure_error_bound: f64,
    pub simplicial_vertex: Option<usize>,
    pub initial_clique: BTreeSet<usize>,
    pub absorption_order: Vec<usize>,
    /// True when the absorbed clique reached the whole vertex set; the graph
    /// is then d-rigid.
    pub complete: bool,
    /// Whether the degree and dimension hypotheses of the guarantee hold.
    pub hypotheses_hold: bool,
    /// A non-complete run under valid hypotheses: either an implementation
    /// bug or a counterexample; never expected.
    pub flagged: bool,
}

/// The closure pipeline: compute the d-closure, find a simplicial vertex
/// there, take its closed neighbourhood as the starting clique, and absorb.
/// Reaching the full vertex set proves the input d-rigid.
pub fn run_exact_pipeline(
    g: &Graph,
    d: usize,
    trials: usize,
    prime: u64,
    seed: u64,
) -> Result<ExactPipelineTrace> {
    if g.n() <= d {
        return Err(Error::Dimension { n: g.n(), d });
    }
    let closure = d_closure(g, d, trials, prime, seed)?;
    let closed = &closure.graph;
    let simplicial = find_simplicial_vertex(closed);
    let (initial_clique, outcome) = match simplicial {
        Some(v) => {
            let mut s: BTreeSet<usize> = closed.neighbors(v).clone();
            s.insert(v);
            let outcome = absorb_clique(closed, d, &s)?;
            (s, Some(outcome))
        }
        None => (BTreeSet::new(), None),
    };
    let complete = outcome.as_ref().is_some_and(|o| o.complete);
    let hypotheses_hold = exact_hypotheses_hold(g.n(), d, g.min_degree());
    Ok(ExactPipelineTrace {
        d,
        n: g.n(),
        min_degree: g.min_degree(),
        closure_edge_count: closed.edge_count(),
        closure_added_edges: closure.added.len(),
        closure_error_bound: closure.error_bound,
        simplicial_vertex: simplicial,
        initial_clique,
        absorption_order: outcome.map(|o| o.absorbed).unwrap_or_default(),
        complete,
        hypotheses_hold,
        flagged: hypotheses_hold && !complete,
    })
}
