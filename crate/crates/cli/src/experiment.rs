//! Experiment orchestration: generate hypothesis-satisfying instances cell
//! by cell, run the designated checker on every sample, and aggregate into a
//! replayable report. Samples within a cell run in parallel; every sample's
//! RNG stream derives from (master seed, cell index, sample index), so
//! results do not depend on the schedule.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use rigidity_core::closure_comb::{exact_max_d, run_exact_pipeline};
use rigidity_core::graph::families::{complete_bipartite, min_degree_random, ring_lattice};
use rigidity_core::graph::{Graph, GraphJson};
use rigidity_core::partition::{
    brute_force_pseudoachromatic, expansion_trial, pseudoachromatic_lower_bound,
    verify_pseudocomplete, PSEUDO_BRUTE_FORCE_MAX,
};
use rigidity_core::rank::is_d_rigid;
use rigidity_core::rng::derive_seed;
use rigidity_core::Result;

use crate::config::{ExperimentConfig, ExperimentName};
use crate::report::{tool_version, CellResult, FailureRecord, JsonlSink, Report};

/// Ceiling of (n + d)/2 - 1 over the integers.
pub fn exact_delta_req(n: usize, d: usize) -> usize {
    (n + d - 1) / 2
}

/// Ceiling of (n + 2d)/2 - 1 over the integers.
pub fn approx_delta_req(n: usize, d: usize) -> usize {
    (n + 2 * d - 1) / 2
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    let started = Instant::now();
    if cfg.samples == 0 {
        return Err(rigidity_core::Error::Parameter(
            "experiment needs samples >= 1".into(),
        ));
    }
    let sink = JsonlSink::beside(cfg.output.as_deref());
    let cells_spec = enumerate_cells(cfg);
    if cells_spec.is_empty() {
        return Err(rigidity_core::Error::Parameter(
            "experiment config produced no cells (empty ranges?)".into(),
        ));
    }

    let mut cells = Vec::with_capacity(cells_spec.len());
    for (cell_index, &(n, d)) in cells_spec.iter().enumerate() {
        let cell = run_cell(cfg, cell_index, n, d);
        sink.append(&cell);
        cells.push(cell);
    }

    let total_pass = cells.iter().map(|c| c.passes).sum();
    let total_fail = cells.iter().map(|c| c.failures.len()).sum();
    let report = Report {
        experiment: cfg.experiment.as_str().to_string(),
        config: serde_json::to_value(cfg).expect("config serializes"),
        master_seed: cfg.seed,
        cells,
        total_pass,
        total_fail,
        wall_time_secs: started.elapsed().as_secs_f64(),
        version: tool_version(),
    };
    crate::report::write_report(&report, cfg.output.as_deref())
        .map_err(|e| rigidity_core::Error::Parameter(format!("cannot write report: {e}")))?;
    sink.finalize();
    Ok(report)
}

fn enumerate_cells(cfg: &ExperimentConfig) -> Vec<(usize, usize)> {
    match cfg.experiment {
        ExperimentName::ThmExact => cfg
            .n_values
            .iter()
            .flat_map(|&n| {
                if cfg.d_values.is_empty() {
                    vec![(n, exact_max_d(n))]
                } else {
                    cfg.d_values.iter().map(|&d| (n, d)).collect()
                }
            })
            .collect(),
        ExperimentName::ThmApprox => cfg
            .n_values
            .iter()
            .flat_map(|&n| cfg.d_values.iter().map(move |&d| (n, d)))
            .collect(),
        ExperimentName::ThmPseudo => cfg
            .d_values
            .iter()
            .map(|&d| (d + cfg.pseudo_big_side, d))
            .collect(),
        ExperimentName::Expansion => match &cfg.expansion {
            Some(inst) => vec![(inst.n, inst.d)],
            None => Vec::new(),
        },
    }
}

fn run_cell(cfg: &ExperimentConfig, cell_index: usize, n: usize, d: usize) -> CellResult {
    match cfg.experiment {
        ExperimentName::ThmExact => {
            rigidity_cell(cfg, cell_index, n, d, exact_delta_req(n, d), true)
        }
        ExperimentName::ThmApprox => {
            rigidity_cell(cfg, cell_index, n, d, approx_delta_req(n, d), false)
        }
        ExperimentName::ThmPseudo => pseudo_cell(cfg, cell_index, d),
        ExperimentName::Expansion => expansion_cell(cfg),
    }
}

fn skipped_cell(n: usize, d: usize, delta_req: usize, why: String) -> CellResult {
    CellResult {
        n,
        d,
        delta_req,
        samples: 0,
        passes: 0,
        failures: Vec::new(),
        skipped: Some(why),
    }
}

/// Minimum-degree rigidity cell; `with_pipeline` additionally demands that
/// the closure pipeline completes on every sample.
fn rigidity_cell(
    cfg: &ExperimentConfig,
    cell_index: usize,
    n: usize,
    d: usize,
    delta_req: usize,
    with_pipeline: bool,
) -> CellResult {
    if d >= n {
        return skipped_cell(n, d, delta_req, format!("infeasible: d = {d} >= n = {n}"));
    }
    if delta_req >= n {
        return skipped_cell(
            n,
            d,
            delta_req,
            format!("infeasible: required minimum degree {delta_req} >= n = {n}"),
        );
    }

    let outcomes: Vec<Option<FailureRecord>> = (0..cfg.samples)
        .into_par_iter()
        .map(|sample_index| {
            let seed = derive_seed(cfg.seed, &[cell_index as u64, sample_index as u64]);
            let g = match min_degree_random(n, delta_req, cfg.p, seed) {
                Ok(g) => g,
                Err(e) => {
                    return Some(FailureRecord {
                        sample_index,
                        seed,
                        graph: GraphJson { n, edges: vec![] },
                        detail: format!("generator error: {e}"),
                        outcome: json!(null),
                    })
                }
            };
            // hypothesis filter: the generated instance must meet the bound
            if g.min_degree() < delta_req {
                return Some(FailureRecord {
                    sample_index,
                    seed,
                    graph: GraphJson::from(&g),
                    detail: "hypothesis filter violated by generator".into(),
                    outcome: json!(null),
                });
            }
            check_rigidity_sample(cfg, &g, d, seed, sample_index, with_pipeline)
        })
        .collect();

    let failures: Vec<FailureRecord> = outcomes.into_iter().flatten().collect();
    CellResult {
        n,
        d,
        delta_req,
        samples: cfg.samples,
        passes: cfg.samples - failures.len(),
        failures,
        skipped: None,
    }
}

fn check_rigidity_sample(
    cfg: &ExperimentConfig,
    g: &Graph,
    d: usize,
    seed: u64,
    sample_index: usize,
    with_pipeline: bool,
) -> Option<FailureRecord> {
    let verdict = match is_d_rigid(g, d, cfg.trials, cfg.prime, seed) {
        Ok(v) => v,
        Err(e) => {
            return Some(FailureRecord {
                sample_index,
                seed,
                graph: GraphJson::from(g),
                detail: format!("checker error: {e}"),
                outcome: json!(null),
            })
        }
    };
    let pipeline = if with_pipeline {
        match run_exact_pipeline(g, d, cfg.closure_trials, cfg.prime, derive_seed(seed, &[1])) {
            Ok(t) => Some(t),
            Err(e) => {
                return Some(FailureRecord {
                    sample_index,
                    seed,
                    graph: GraphJson::from(g),
                    detail: format!("pipeline error: {e}"),
                    outcome: json!(null),
                })
            }
        }
    } else {
        None
    };

    let rigid = verdict.certified();
    let pipeline_ok = pipeline.as_ref().map(|t| t.complete).unwrap_or(true);
    if rigid && pipeline_ok {
        return None;
    }
    let detail = match (rigid, pipeline_ok) {
        (false, true) => format!("not certified: rank {} of {}", verdict.rank, verdict.target),
        (true, false) => "rank certified but closure pipeline stalled".into(),
        (false, false) => format!(
            "not certified (rank {} of {}) and closure pipeline stalled",
            verdict.rank, verdict.target
        ),
        (true, true) => unreachable!(),
    };
    Some(FailureRecord {
        sample_index,
        seed,
        graph: GraphJson::from(g),
        detail,
        outcome: json!({
            "verdict": verdict,
            "pipeline": pipeline,
        }),
    })
}

/// Replays a rigidity failure record: re-runs the certificate check on the
/// serialized graph with its logged seed and returns the outcome JSON, which
/// must match the recorded one bit for bit.
pub fn replay_rigidity_outcome(
    record: &FailureRecord,
    d: usize,
    trials: usize,
    closure_trials: usize,
    prime: u64,
    with_pipeline: bool,
) -> Result<serde_json::Value> {
    let g = Graph::try_from(record.graph.clone())?;
    let verdict = is_d_rigid(&g, d, trials, prime, record.seed)?;
    let pipeline = if with_pipeline {
        Some(run_exact_pipeline(
            &g,
            d,
            closure_trials,
            prime,
            derive_seed(record.seed, &[1]),
        )?)
    } else {
        None
    };
    Ok(json!({
        "verdict": verdict,
        "pipeline": pipeline,
    }))
}

fn pseudo_cell(cfg: &ExperimentConfig, cell_index: usize, d: usize) -> CellResult {
    let big = cfg.pseudo_big_side;
    let n = d + big;
    if d == 0 || big < d {
        return skipped_cell(
            n,
            d,
            d,
            format!("infeasible: K_{{{d},{big}}} needs 1 <= d <= big"),
        );
    }
    let g = complete_bipartite(d, big);
    let exact = if n <= PSEUDO_BRUTE_FORCE_MAX {
        brute_force_pseudoachromatic(&g).ok()
    } else {
        None
    };

    let outcomes: Vec<Option<FailureRecord>> = (0..cfg.samples)
        .into_par_iter()
        .map(|sample_index| {
            let seed = derive_seed(cfg.seed, &[cell_index as u64, sample_index as u64]);
            let found = match pseudoachromatic_lower_bound(&g, d, cfg.retries, seed) {
                Ok(c) => c,
                Err(e) => {
                    return Some(FailureRecord {
                        sample_index,
                        seed,
                        graph: GraphJson::from(&g),
                        detail: format!("sampler error: {e}"),
                        outcome: json!(null),
                    })
                }
            };
            let coloring_ok = found
                .as_ref()
                .is_some_and(|c| c.k() == d + 1 && verify_pseudocomplete(&g, c).0);
            let exact_ok = exact.is_none_or(|v| v == d + 1);
            if coloring_ok && exact_ok {
                return None;
            }
            let detail = if !coloring_ok {
                format!(
                    "no pseudocomplete ({} + 1)-coloring within {} retries",
                    d, cfg.retries
                )
            } else {
                format!("exact pseudoachromatic {:?} != {}", exact, d + 1)
            };
            Some(FailureRecord {
                sample_index,
                seed,
                graph: GraphJson::from(&g),
                detail,
                outcome: json!({
                    "found": found,
                    "exact": exact,
                }),
            })
        })
        .collect();

    let failures: Vec<FailureRecord> = outcomes.into_iter().flatten().collect();
    CellResult {
        n,
        d,
        delta_req: d,
        samples: cfg.samples,
        passes: cfg.samples - failures.len(),
        failures,
        skipped: None,
    }
}

fn expansion_cell(cfg: &ExperimentConfig) -> CellResult {
    let Some(inst) = &cfg.expansion else {
        return skipped_cell(0, 0, 0, "expansion experiment needs an instance".into());
    };
    let g = match ring_lattice(inst.n, inst.width) {
        Ok(g) => g,
        Err(e) => return skipped_cell(inst.n, inst.d, 0, format!("bad instance: {e}")),
    };
    let stats = match expansion_trial(&g, inst.k_subset, inst.d, inst.trials, cfg.seed) {
        Ok(s) => s,
        Err(e) => return skipped_cell(inst.n, inst.d, 0, format!("trial error: {e}")),
    };
    // pass: hypotheses hold and the empirical rate stays within two binomial
    // standard deviations of the concentration bound (which is vacuous, even
    // negative, for small K)
    let pb = stats.concentration_bound.clamp(0.0, 1.0);
    let sigma = (pb * (1.0 - pb) / inst.trials as f64).sqrt();
    let ok = stats.hypothesis_degree_ok
        && stats.hypothesis_max_degree_ok
        && stats.empirical_rate >= stats.concentration_bound - 2.0 * sigma;
    let failures = if ok {
        Vec::new()
    } else {
        vec![FailureRecord {
            sample_index: 0,
            seed: cfg.seed,
            graph: GraphJson::from(&g),
            detail: format!(
                "expansion rate {:.4} below bound {:.4} - 2 sigma (or hypotheses violated)",
                stats.empirical_rate, stats.concentration_bound
            ),
            outcome: serde_json::to_value(&stats).expect("stats serialize"),
        }]
    };
    CellResult {
        n: inst.n,
        d: inst.d,
        delta_req: 0,
        samples: 1,
        passes: usize::from(failures.is_empty()),
        failures,
        skipped: None,
    }
}
