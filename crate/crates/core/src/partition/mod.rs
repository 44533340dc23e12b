//! Colorings, partitions, and their certificates.
//!
//! A coloring assigns every vertex a class in `0..k`; it is a partition when
//! every class is nonempty. A strong d-rigid partition has G[V_i, V_j]
//! connected for every pair i <= j, which is sufficient for d-rigidity.

mod bipartite;
mod expansion;
mod randomcol;
mod tripartite;

pub use bipartite::{
    close_bipartite_partition, refine_bipartition, BetaFamily, BipartiteRefinementState, Side,
    DEFAULT_BETA, DEFAULT_PARTITION_RETRIES,
};
pub use expansion::{expansion_trial, ExpansionStats};
pub use randomcol::{
    brute_force_pseudoachromatic, build_coloring_distribution, pseudoachromatic_lower_bound,
    sample_random_coloring, ColoringDistribution, RandomColoringSample, DEFAULT_PSEUDO_RETRIES,
    PSEUDO_BRUTE_FORCE_MAX,
};
pub use tripartite::{contiguous_thirds, tripartite_partition};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph};

/// Total assignment of vertices to classes `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    k: usize,
    assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = assignment.iter().find(|&&c| c >= k) {
            return Err(Error::Parameter(format!(
                "class {bad} out of range for {k} classes"
            )));
        }
        Ok(Coloring { k, assignment })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// The classes as vertex sets (possibly empty).
    pub fn classes(&self) -> Vec<BTreeSet<usize>> {
        let mut out = vec![BTreeSet::new(); self.k];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].insert(v);
        }
        out
    }

    /// A coloring is a partition when every class is nonempty.
    pub fn is_partition(&self) -> bool {
        self.classes().iter().all(|c| !c.is_empty())
    }

    /// Two-column CSV export (`vertex,class`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("vertex,class\n");
        for (v, c) in self.assignment.iter().enumerate() {
            out.push_str(&format!("{v},{c}\n"));
        }
        out
    }
}

/// True iff every pair of classes is joined by at least one edge; the second
/// component lists the missing pairs. Fewer than two classes is vacuously
/// pseudocomplete.
pub fn verify_pseudocomplete(g: &Graph, c: &Coloring) -> (bool, Vec<(usize, usize)>) {
    assert_eq!(c.n(), g.n(), "coloring must cover the graph");
    let k = c.k();
    if k < 2 {
        return (true, Vec::new());
    }
    let mut joined = vec![false; k * k];
    for (u, v) in g.edges() {
        let (cu, cv) = (c.class_of(u), c.class_of(v));
        if cu != cv {
            joined[cu.min(cv) * k + cu.max(cv)] = true;
        }
    }
    let mut missing = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if !joined[i * k + j] {
                missing.push((i, j));
            }
        }
    }
    (missing.is_empty(), missing)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairConnectivity {
    pub i: usize,
    pub j: usize,
    pub connected: bool,
}

/// Evidence that a coloring is (or is not) a strong d-rigid partition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrongPartitionCertificate {
    pub d: usize,
    pub coloring: Coloring,
    /// Connectivity verdict of G[V_i, V_j] for each i <= j.
    pub pairs: Vec<PairConnectivity>,
    pub overall: bool,
    /// Set when the coloring is not a partition (some class empty).
    pub diagnostic: Option<String>,
}

/// Checks G[V_i, V_j] connectivity for all 1 <= i <= j <= d. A coloring with
/// an empty class is not a partition; the certificate then fails with a
/// diagnostic instead of an error.
pub fn verify_strong_partition(g: &Graph, coloring: &Coloring) -> StrongPartitionCertificate {
    assert_eq!(coloring.n(), g.n(), "coloring must cover the graph");
    let d = coloring.k();
    let classes = coloring.classes();
    if let Some(i) = classes.iter().position(BTreeSet::is_empty) {
        return StrongPartitionCertificate {
            d,
            coloring: coloring.clone(),
            pairs: Vec::new(),
            overall: false,
            diagnostic: Some(format!("class {i} is empty: a colouring, not a partition")),
        };
    }
    let mut pairs = Vec::with_capacity(d * (d + 1) / 2);
    let mut overall = true;
    for i in 0..d {
        for j in i..d {
            let sub = g
                .subgraph_between(&classes[i], &classes[j])
                .expect("classes are in range");
            let connected = is_connected(&sub);
            overall &= connected;
            pairs.push(PairConnectivity { i, j, connected });
        }
    }
    StrongPartitionCertificate {
        d,
        coloring: coloring.clone(),
        pairs,
        overall,
        diagnostic: None,
    }
}
