//! Named graph families used throughout the experiments.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};

/// A generator description; `generate` is deterministic given the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Union of an m-clique and an n-clique sharing exactly `d` vertices.
    OkGlued {
        m: usize,
        n: usize,
        d: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    /// Three sides of equal size; each cross pair is an edge with probability `p`.
    TripartiteRandom {
        side: usize,
        p: f64,
        seed: u64,
    },
    /// G(n, p) repaired until the minimum degree reaches `min_degree`.
    MinDegreeRandom {
        n: usize,
        min_degree: usize,
        p: f64,
        seed: u64,
    },
    /// Complete multipartite graph with `parts` parts of size 2.
    Hyperoctahedral {
        parts: usize,
    },
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::OkGlued { m, n, d } => ok_glued(m, n, d),
        FamilySpec::CompleteBipartite { a, b } => Ok(complete_bipartite(a, b)),
        FamilySpec::Complete { n } => Ok(Graph::complete(n)),
        FamilySpec::Cycle { n } => cycle(n),
        FamilySpec::Path { n } => Ok(path(n)),
        FamilySpec::TripartiteRandom { side, p, seed } => tripartite_random(side, p, seed),
        FamilySpec::MinDegreeRandom {
            n,
            min_degree,
            p,
            seed,
        } => min_degree_random(n, min_degree, p, seed),
        FamilySpec::Hyperoctahedral { parts } => Ok(hyperoctahedral(parts)),
    }
}

/// OK_{m,n,d}: vertices `0..m` form a clique, vertices `m-d..m+n-d` form a
/// clique, and the two share the `d` vertices `m-d..m`.
pub fn ok_glued(m: usize, n: usize, d: usize) -> Result<Graph> {
    if d > m.min(n) {
        return Err(Error::Parameter(format!(
            "ok_glued needs d <= min(m, n); got m={m}, n={n}, d={d}"
        )));
    }
    let total = m + n - d;
    let mut g = Graph::empty(total);
    for u in 0..m {
        for v in (u + 1)..m {
            g.insert_edge(u, v);
        }
    }
    for u in (m - d)..total {
        for v in (u + 1)..total {
            g.insert_edge(u, v);
        }
    }
    Ok(g)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..(a + b) {
            g.insert_edge(u, v);
        }
    }
    g
}

fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter(format!("cycle needs n >= 3; got {n}")));
    }
    let mut g = Graph::empty(n);
    for v in 0..n {
        g.insert_edge(v, (v + 1) % n);
    }
    Ok(g)
}

fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.insert_edge(v - 1, v);
    }
    g
}

fn tripartite_random(side: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = rng_from_seed(derive_seed(seed, &[0x7472]));
    let n = 3 * side;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if u / side != v / side && rng.gen::<f64>() < p {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Samples G(n, p), then repeatedly connects a minimum-degree vertex to a
/// uniformly random non-neighbour until the minimum degree reaches
/// `min_degree`. Terminates because every repair raises one degree and
/// lowers none.
pub fn min_degree_random(n: usize, min_degree: usize, p: f64, seed: u64) -> Result<Graph> {
    if min_degree >= n && !(n == 0 && min_degree == 0) {
        return Err(Error::Parameter(format!(
            "min degree {min_degree} is infeasible on {n} vertices"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = rng_from_seed(derive_seed(seed, &[0x6d64]));
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                g.insert_edge(u, v);
            }
        }
    }
    while let Some(v) = (0..n)
        .filter(|&v| g.degree(v) < min_degree)
        .min_by_key(|&v| (g.degree(v), v))
    {
        let non_neighbors: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(v, u)).collect();
        debug_assert!(!non_neighbors.is_empty());
        let w = non_neighbors[rng.gen_range(0..non_neighbors.len())];
        g.insert_edge(v, w);
    }
    Ok(g)
}

fn hyperoctahedral(parts: usize) -> Graph {
    let n = 2 * parts;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if u / 2 != v / 2 {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

/// Ring lattice: vertex `i` is adjacent to `i ± 1, ..., i ± width` mod n.
/// Exactly `2 * width`-regular for `n > 2 * width`; used as a bounded-degree
/// instance for the expansion experiment.
pub fn ring_lattice(n: usize, width: usize) -> Result<Graph> {
    if n <= 2 * width {
        return Err(Error::Parameter(format!(
            "ring lattice needs n > 2 * width; got n={n}, width={width}"
        )));
    }
    let mut g = Graph::empty(n);
    for v in 0..n {
        for k in 1..=width {
            g.insert_edge(v, (v + k) % n);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::choose2;

    #[test]
    fn ok_glued_counts() {
        // 4+4 cliques sharing 2 vertices: 6 vertices, 6 + 6 - 1 = 11 edges.
        let g = ok_glued(4, 4, 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 11));
        g.debug_validate();
    }

    #[test]
    fn ok_glued_edge_count_exhaustive() {
        for m in 0..=8 {
            for n in 0..=8 {
                for d in 0..=m.min(n) {
                    let g = ok_glued(m, n, d).unwrap();
                    assert_eq!(g.n(), m + n - d);
                    assert_eq!(g.edge_count(), choose2(m) + choose2(n) - choose2(d));
                    g.debug_validate();
                }
            }
        }
    }

    #[test]
    fn ok_glued_min_degree_matches_gluing() {
        // Equal cliques of size (n + d) / 2 give minimum degree (n + d)/2 - 1.
        let g = ok_glued(6, 6, 3).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.min_degree(), 5); // (9 + 3) / 2 - 1
    }

    #[test]
    fn complete_bipartite_2_2_is_a_4_cycle() {
        let g = complete_bipartite(2, 2);
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn min_degree_random_honors_floor() {
        for seed in 0..20 {
            let g = min_degree_random(40, 11, 0.1, seed).unwrap();
            assert!(g.min_degree() >= 11);
            g.debug_validate();
        }
        assert!(min_degree_random(5, 5, 0.5, 0).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let spec = FamilySpec::MinDegreeRandom {
            n: 30,
            min_degree: 7,
            p: 0.15,
            seed: 99,
        };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = FamilySpec::MinDegreeRandom {
            n: 30,
            min_degree: 7,
            p: 0.15,
            seed: 100,
        };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn hyperoctahedral_is_2k_minus_2_regular() {
        let g = hyperoctahedral(4);
        assert_eq!(g.n(), 8);
        assert!((0..8).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn ring_lattice_regular() {
        let g = ring_lattice(50, 2).unwrap();
        assert_eq!(g.min_degree(), 4);
        assert_eq!(g.max_degree(), 4);
    }
}
