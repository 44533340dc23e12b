//! Experiment configuration, read from JSON.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use rigidity_core::fp::DEFAULT_PRIME;
use rigidity_core::partition::DEFAULT_PSEUDO_RETRIES;
use rigidity_core::rank::{DEFAULT_CLOSURE_TRIALS, DEFAULT_RIGIDITY_TRIALS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentName {
    /// Minimum degree (n + d)/2 - 1 in the small-d regime: rank certificate
    /// plus the closure pipeline on every sample.
    ThmExact,
    /// Minimum degree (n + 2d)/2 - 1: rank certificate on every sample.
    ThmApprox,
    /// K_{d, big}: pseudocomplete (d+1)-coloring found and confirmed exact.
    ThmPseudo,
    /// Expansion statistics on a near-regular ring lattice.
    Expansion,
}

impl ExperimentName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentName::ThmExact => "thm_exact",
            ExperimentName::ThmApprox => "thm_approx",
            ExperimentName::ThmPseudo => "thm_pseudo",
            ExperimentName::Expansion => "expansion",
        }
    }
}

impl std::str::FromStr for ExperimentName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "thm_exact" => Ok(ExperimentName::ThmExact),
            "thm_approx" => Ok(ExperimentName::ThmApprox),
            "thm_pseudo" => Ok(ExperimentName::ThmPseudo),
            "expansion" => Ok(ExperimentName::Expansion),
            other => Err(format!(
                "unknown experiment '{other}' (expected thm_exact, thm_approx, thm_pseudo, expansion)"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionInstance {
    /// Vertices of the ring lattice.
    pub n: usize,
    /// Half-bandwidth: the lattice is 2*width-regular.
    #[serde(default = "default_width")]
    pub width: usize,
    pub k_subset: usize,
    pub d: usize,
    pub trials: usize,
}

fn default_width() -> usize {
    2
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentName,
    #[serde(default)]
    pub n_values: Vec<usize>,
    /// Empty means: derive d from n where the experiment defines a natural
    /// choice (thm_exact uses the largest d its guarantee covers).
    #[serde(default)]
    pub d_values: Vec<usize>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_closure_trials")]
    pub closure_trials: usize,
    #[serde(default = "default_prime")]
    pub prime: u64,
    /// Base edge probability for the repaired random generator.
    #[serde(default = "default_p")]
    pub p: f64,
    /// Retries for the pseudocomplete search.
    #[serde(default = "default_retries")]
    pub retries: usize,
    /// Big side of K_{d, big} in the pseudo experiment.
    #[serde(default = "default_pseudo_big_side")]
    pub pseudo_big_side: usize,
    #[serde(default)]
    pub expansion: Option<ExpansionInstance>,
    /// Report destination; stdout summary only when absent.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn default_samples() -> usize {
    25
}

fn default_trials() -> usize {
    DEFAULT_RIGIDITY_TRIALS
}

fn default_closure_trials() -> usize {
    DEFAULT_CLOSURE_TRIALS
}

fn default_prime() -> u64 {
    DEFAULT_PRIME
}

fn default_p() -> f64 {
    0.5
}

fn default_retries() -> usize {
    DEFAULT_PSEUDO_RETRIES
}

fn default_pseudo_big_side() -> usize {
    8
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
