//! The d-closure: G plus every non-edge whose row vector already lies in the
//! row space of the rigidity matrix.

use super::{build_rigidity_matrix, edge_row, sample_embedding, RowBasis};
use crate::error::{Error, Result};
use crate::graph::{choose2, Graph};
use crate::rng::derive_seed;

/// Trials used by closure computations unless the caller asks otherwise.
pub const DEFAULT_CLOSURE_TRIALS: usize = 2;

#[derive(Debug, Clone)]
pub struct Closure {
    pub graph: Graph,
    /// Non-edges of the input that the closure picked up, sorted.
    pub added: Vec<(usize, usize)>,
    /// Upper bound on the probability that `graph` differs from the true
    /// d-closure in either direction.
    pub error_bound: f64,
    pub trials: usize,
}

/// Computes the d-closure at `trials` independent random embeddings.
///
/// A candidate edge joins the closure only when its row lies in the row
/// space of R(G, p) for every trial: a spurious edge must fool all trials,
/// while a missed edge requires a rank drop in some trial. Both directions
/// are covered by the reported bound.
pub fn d_closure(g: &Graph, d: usize, trials: usize, prime: u64, seed: u64) -> Result<Closure> {
    if g.n() <= d {
        return Err(Error::Dimension { n: g.n(), d });
    }
    if trials == 0 {
        return Err(Error::Parameter("trials must be >= 1".into()));
    }
    if d == 0 {
        // The rigidity matrix has no columns, so every candidate row is in
        // its span: the 0-closure is the complete graph.
        let complete = Graph::complete(g.n());
        let added = complete
            .edges()
            .into_iter()
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        return Ok(Closure {
            graph: complete,
            added,
            error_bound: 0.0,
            trials,
        });
    }

    let mut survivors: Option<Vec<(usize, usize)>> = None;
    for t in 0..trials {
        let emb = sample_embedding(g, d, prime, derive_seed(seed, &[0x636c, t as u64]))?;
        let m = build_rigidity_matrix(g, &emb)?;
        let mut basis = RowBasis::new(m.num_cols(), prime);
        for i in 0..m.num_rows() {
            basis.insert(m.row(i).to_vec());
        }
        let in_span = |u: usize, v: usize| basis.contains(&edge_row(&emb, u, v));
        survivors = Some(match survivors {
            None => {
                let mut fresh = Vec::new();
                for u in 0..g.n() {
                    for v in (u + 1)..g.n() {
                        if !g.has_edge(u, v) && in_span(u, v) {
                            fresh.push((u, v));
                        }
                    }
                }
                fresh
            }
            Some(prev) => prev.into_iter().filter(|&(u, v)| in_span(u, v)).collect(),
        });
        if survivors.as_ref().is_some_and(Vec::is_empty) {
            break;
        }
    }

    let added = survivors.unwrap_or_default();
    let graph = g.with_edges(added.iter().copied())?;
    let degree = (g.edge_count() + 1).min(d * g.n()) as f64;
    let error_bound = (choose2(g.n()) as f64 * trials as f64 * degree / prime as f64).min(1.0);
    Ok(Closure {
        graph,
        added,
        error_bound,
        trials,
    })
}

pub fn is_d_closed(g: &Graph, d: usize, trials: usize, prime: u64, seed: u64) -> Result<bool> {
    Ok(d_closure(g, d, trials, prime, seed)?.added.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::DEFAULT_PRIME;
    use crate::rank::{generic_rank, DEFAULT_RIGIDITY_TRIALS};

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn one_closure_of_connected_graph_is_complete() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let c = d_closure(&p3, 1, 2, DEFAULT_PRIME, 4).unwrap();
        assert_eq!(c.graph, Graph::complete(3));
        assert_eq!(c.added, vec![(0, 2)]);
    }

    #[test]
    fn four_cycle_is_two_closed() {
        // The exact rational oracle shows each chord raises the rank 4 -> 5,
        // so no chord may be added.
        let c = d_closure(&c4(), 2, 2, DEFAULT_PRIME, 9).unwrap();
        assert!(c.added.is_empty());
        assert!(is_d_closed(&c4(), 2, 2, DEFAULT_PRIME, 9).unwrap());
        assert!(!is_d_closed(
            &Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap(),
            1,
            2,
            DEFAULT_PRIME,
            9
        )
        .unwrap());
    }

    #[test]
    fn complete_graphs_are_closed() {
        assert!(is_d_closed(&Graph::complete(5), 3, 2, DEFAULT_PRIME, 0).unwrap());
        assert!(is_d_closed(&Graph::complete(6), 2, 2, DEFAULT_PRIME, 0).unwrap());
    }

    #[test]
    fn zero_dimensional_closure_is_complete() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let c = d_closure(&g, 0, 1, DEFAULT_PRIME, 0).unwrap();
        assert_eq!(c.graph, Graph::complete(4));
        assert_eq!(c.error_bound, 0.0);
    }

    #[test]
    fn closure_is_idempotent_and_preserves_rank() {
        for seed in 0..25 {
            let n = 6 + (seed as usize % 10);
            let g = crate::graph::families::min_degree_random(n, 2, 0.35, seed).unwrap();
            for d in 1..=3usize {
                if g.n() <= d {
                    continue;
                }
                let c = d_closure(&g, d, 2, DEFAULT_PRIME, seed).unwrap();
                let again = d_closure(&c.graph, d, 2, DEFAULT_PRIME, seed + 1).unwrap();
                assert!(
                    again.added.is_empty(),
                    "closure not idempotent: n={n} d={d} seed={seed}"
                );
                let (r0, _) =
                    generic_rank(&g, d, DEFAULT_RIGIDITY_TRIALS, DEFAULT_PRIME, seed).unwrap();
                let (r1, _) = generic_rank(
                    &c.graph,
                    d,
                    DEFAULT_RIGIDITY_TRIALS,
                    DEFAULT_PRIME,
                    seed + 2,
                )
                .unwrap();
                assert_eq!(r0, r1, "closure changed rank: n={n} d={d} seed={seed}");
            }
        }
    }

    #[test]
    fn closed_graphs_honor_the_clique_extension_rule() {
        // In a d-closed graph, two vertices adjacent to all of a d-clique
        // must themselves be adjacent. Exhaustive over small closures.
        use std::collections::BTreeSet;
        for seed in 0..20 {
            let n = 5 + (seed as usize % 6);
            let g = crate::graph::families::min_degree_random(n, 2, 0.4, seed).unwrap();
            for d in 1..=3usize {
                if g.n() <= d {
                    continue;
                }
                let closed = d_closure(&g, d, 2, DEFAULT_PRIME, seed).unwrap().graph;
                for clique in subsets_of_size(closed.n(), d) {
                    let set: BTreeSet<usize> = clique.iter().copied().collect();
                    if !closed.is_clique(&set) {
                        continue;
                    }
                    let commons: Vec<usize> = closed
                        .vertices()
                        .filter(|v| !set.contains(v))
                        .filter(|&v| set.iter().all(|&u| closed.has_edge(u, v)))
                        .collect();
                    for (i, &v) in commons.iter().enumerate() {
                        for &w in &commons[i + 1..] {
                            assert!(
                                closed.has_edge(v, w),
                                "extension edge missing: n={n} d={d} seed={seed}"
                            );
                        }
                    }
                }
            }
        }
    }

    fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(v + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut current, &mut out);
        out
    }
}
