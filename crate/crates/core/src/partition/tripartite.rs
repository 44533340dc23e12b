//! Tripartite partition pipeline: a uniform random d-coloring of a graph
//! whose three sides form dense cross pairs is, with high probability, a
//! strong d-rigid partition. Sampled and verified; first success wins.

use std::collections::BTreeSet;

use rand::Rng;

use super::{verify_strong_partition, Coloring, StrongPartitionCertificate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed};

/// Uniform d-colorings over a tripartite vertex split, retried until one
/// verifies. `sides` must partition the vertex set and be nonempty.
pub fn tripartite_partition(
    g: &Graph,
    sides: &[BTreeSet<usize>; 3],
    d: usize,
    seed: u64,
    retries: usize,
) -> Result<Option<StrongPartitionCertificate>> {
    if d == 0 {
        return Err(Error::Parameter(
            "partition dimension d must be >= 1".into(),
        ));
    }
    for (i, side) in sides.iter().enumerate() {
        if side.is_empty() {
            return Err(Error::Parameter(format!("side {i} is empty")));
        }
        for &v in side {
            if v >= g.n() {
                return Err(Error::VertexRange {
                    vertex: v,
                    n: g.n(),
                });
            }
        }
    }
    let total: usize = sides.iter().map(BTreeSet::len).sum();
    let disjoint = sides[0].is_disjoint(&sides[1])
        && sides[0].is_disjoint(&sides[2])
        && sides[1].is_disjoint(&sides[2]);
    if !disjoint || total != g.n() {
        return Err(Error::Parameter(
            "sides must partition the vertex set".into(),
        ));
    }

    for retry in 0..retries {
        let mut rng = rng_from_seed(derive_seed(seed, &[0x7472, retry as u64]));
        let assignment: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(0..d)).collect();
        let coloring = Coloring::new(d, assignment)?;
        let cert = verify_strong_partition(g, &coloring);
        if cert.overall {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// The contiguous equal thirds of `0..n`; the natural sides for generated
/// tripartite graphs.
pub fn contiguous_thirds(n: usize) -> Result<[BTreeSet<usize>; 3]> {
    if !n.is_multiple_of(3) || n == 0 {
        return Err(Error::Parameter(format!(
            "cannot split {n} vertices into three equal sides"
        )));
    }
    let side = n / 3;
    Ok([
        (0..side).collect(),
        (side..2 * side).collect(),
        (2 * side..n).collect(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{generate, FamilySpec};

    fn complete_tripartite(side: usize) -> Graph {
        let n = 3 * side;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if u / side != v / side {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn complete_tripartite_certifies_quickly() {
        let g = complete_tripartite(20);
        let sides = contiguous_thirds(60).unwrap();
        for d in 1..=3 {
            let cert = tripartite_partition(&g, &sides, d, 5, 32)
                .unwrap()
                .unwrap_or_else(|| panic!("no certificate at d = {d}"));
            assert!(cert.overall);
        }
    }

    #[test]
    fn random_tripartite_certifies() {
        let g = generate(&FamilySpec::TripartiteRandom {
            side: 60,
            p: 0.5,
            seed: 3,
        })
        .unwrap();
        let sides = contiguous_thirds(180).unwrap();
        let cert = tripartite_partition(&g, &sides, 4, 9, 32).unwrap();
        assert!(cert.is_some_and(|c| c.overall));
    }

    #[test]
    fn d1_certificate_is_connectivity() {
        let g = complete_tripartite(2);
        let sides = contiguous_thirds(6).unwrap();
        let cert = tripartite_partition(&g, &sides, 1, 0, 4).unwrap().unwrap();
        assert!(cert.overall);
        assert_eq!(cert.d, 1);

        let disconnected = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let out = tripartite_partition(&disconnected, &sides, 1, 0, 4).unwrap();
        assert!(out.is_none());
    }

    #[test]
    fn empty_side_is_rejected() {
        let g = complete_tripartite(2);
        let sides: [BTreeSet<usize>; 3] = [(0..3).collect(), (3..6).collect(), BTreeSet::new()];
        assert!(matches!(
            tripartite_partition(&g, &sides, 2, 0, 4),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn overlapping_sides_are_rejected() {
        let g = complete_tripartite(2);
        let sides: [BTreeSet<usize>; 3] = [(0..3).collect(), (2..5).collect(), (4..6).collect()];
        assert!(tripartite_partition(&g, &sides, 2, 0, 4).is_err());
    }
}
