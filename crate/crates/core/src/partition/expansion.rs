//! Expansion of uniform random vertex subsets: empirical check that a
//! K-subset U of a bounded-degree graph has |N(U)| >= d K / 3 at least as
//! often as the concentration bound 1 - 2 exp(-K / 288) predicts.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionStats {
    pub n: usize,
    pub k_subset: usize,
    pub d: usize,
    pub trials: usize,
    /// Trials where |N(U)| >= d K / 3.
    pub success_count: usize,
    pub empirical_rate: f64,
    /// 1 - 2 exp(-K / 288).
    pub concentration_bound: f64,
    /// d <= delta(G)?
    pub hypothesis_degree_ok: bool,
    /// Delta(G) <= n / (4K)?
    pub hypothesis_max_degree_ok: bool,
    /// F_v: the d lowest-id out-neighbours chosen per vertex (fewer when the
    /// degree hypothesis fails).
    pub out_edges: Vec<Vec<usize>>,
}

/// Samples `trials` uniform K-subsets and counts expansion successes.
/// Hypothesis violations are flagged, not fatal.
pub fn expansion_trial(
    g: &Graph,
    k_subset: usize,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<ExpansionStats> {
    let n = g.n();
    if k_subset > n {
        return Err(Error::Parameter(format!(
            "subset size {k_subset} exceeds {n} vertices"
        )));
    }
    if k_subset == 0 {
        return Err(Error::Parameter("subset size must be >= 1".into()));
    }
    let out_edges: Vec<Vec<usize>> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().copied().take(d).collect())
        .collect();

    let mut success_count = 0usize;
    let mut in_u = vec![false; n];
    for t in 0..trials {
        let mut rng = rng_from_seed(derive_seed(seed, &[0x6578, t as u64]));
        // partial Fisher-Yates: first k_subset entries become U
        let mut ids: Vec<usize> = (0..n).collect();
        for i in 0..k_subset {
            let j = rng.gen_range(i..n);
            ids.swap(i, j);
        }
        let u = &ids[..k_subset];
        for &v in u {
            in_u[v] = true;
        }
        let mut neighborhood = BTreeSet::new();
        for &v in u {
            for &w in g.neighbors(v) {
                if !in_u[w] {
                    neighborhood.insert(w);
                }
            }
        }
        for &v in u {
            in_u[v] = false;
        }
        if 3 * neighborhood.len() >= d * k_subset {
            success_count += 1;
        }
    }

    Ok(ExpansionStats {
        n,
        k_subset,
        d,
        trials,
        success_count,
        empirical_rate: if trials == 0 {
            0.0
        } else {
            success_count as f64 / trials as f64
        },
        concentration_bound: 1.0 - 2.0 * (-(k_subset as f64) / 288.0).exp(),
        hypothesis_degree_ok: d <= g.min_degree(),
        hypothesis_max_degree_ok: 4 * k_subset * g.max_degree() <= n,
        out_edges,
    })
}
