//! Local-search max-cut heuristic. Supplies the bipartition consumed by the
//! near-bipartite partition pipeline; exact far-from-bipartite testing is
//! out of scope.

use std::collections::BTreeSet;

use rand::Rng;

use super::Graph;
use crate::rng::{derive_seed, rng_from_seed};

/// Greedy placement in ascending vertex order (ties broken by the seeded
/// RNG), then single-vertex moves until no move increases the cut.
///
/// The returned partition is a local-search fixpoint.
pub fn heuristic_max_cut(g: &Graph, seed: u64) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = g.n();
    let mut rng = rng_from_seed(derive_seed(seed, &[0x6d63]));
    // side[v]: false = A, true = B
    let mut side = vec![false; n];
    for v in 0..n {
        let mut in_a = 0isize;
        let mut in_b = 0isize;
        for &u in g.neighbors(v) {
            if u < v {
                if side[u] {
                    in_b += 1;
                } else {
                    in_a += 1;
                }
            }
        }
        side[v] = match in_a.cmp(&in_b) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => rng.gen::<bool>(),
        };
    }

    loop {
        let mut improved = false;
        for v in 0..n {
            let mut same = 0isize;
            let mut cross = 0isize;
            for &u in g.neighbors(v) {
                if side[u] == side[v] {
                    same += 1;
                } else {
                    cross += 1;
                }
            }
            if same > cross {
                side[v] = !side[v];
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }

    let a = (0..n).filter(|&v| !side[v]).collect();
    let b = (0..n).filter(|&v| side[v]).collect();
    (a, b)
}

/// Cut value of a bipartition.
pub fn cut_size(g: &Graph, a: &BTreeSet<usize>) -> usize {
    g.edges()
        .iter()
        .filter(|(u, v)| a.contains(u) != a.contains(v))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete_bipartite;

    fn is_local_fixpoint(g: &Graph, a: &BTreeSet<usize>) -> bool {
        let base = cut_size(g, a);
        for v in g.vertices() {
            let mut moved = a.clone();
            if !moved.remove(&v) {
                moved.insert(v);
            }
            if cut_size(g, &moved) > base {
                return false;
            }
        }
        true
    }

    #[test]
    fn bipartite_graph_reaches_its_sides() {
        let g = complete_bipartite(3, 3);
        let (a, b) = heuristic_max_cut(&g, 1);
        assert_eq!(cut_size(&g, &a), 9);
        assert_eq!(a.len() + b.len(), 6);
        assert!(is_local_fixpoint(&g, &a));
    }

    #[test]
    fn triangle_cut_is_two() {
        let g = Graph::complete(3);
        let (a, _) = heuristic_max_cut(&g, 0);
        assert_eq!(cut_size(&g, &a), 2);
    }

    #[test]
    fn four_cycle_reaches_antipodal_pairs() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let (a, _) = heuristic_max_cut(&g, 0);
        assert_eq!(cut_size(&g, &a), 4);
        assert!(a == [0, 2].into() || a == [1, 3].into());
    }

    #[test]
    fn output_is_always_a_fixpoint_partition() {
        for seed in 0..10 {
            let g = super::super::families::min_degree_random(24, 3, 0.2, seed).unwrap();
            let (a, b) = heuristic_max_cut(&g, seed);
            assert!(a.is_disjoint(&b));
            assert_eq!(a.len() + b.len(), g.n());
            assert!(is_local_fixpoint(&g, &a));
        }
    }
}
