//! `rigidity`: command-line front end to the rigidity laboratory.
//!
//! Exit codes: 0 clean, 1 property failure (uncertified instance, failed
//! experiment cell, confirmed counterexample), 2 usage or input error.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rigidity_cli::{
    conjecture_curve, conjecture_scan, curve_to_csv, run_experiment, ExperimentConfig, ScanConfig,
};
use rigidity_core::closure_comb::{audit_gsigma_bound, run_exact_pipeline};
use rigidity_core::fp::DEFAULT_PRIME;
use rigidity_core::graph::{parse_graph, parse_graph_auto, Graph, GraphFormat};
use rigidity_core::partition::{
    close_bipartite_partition, expansion_trial, pseudoachromatic_lower_bound, tripartite_partition,
    verify_pseudocomplete, DEFAULT_BETA, DEFAULT_PARTITION_RETRIES, DEFAULT_PSEUDO_RETRIES,
};
use rigidity_core::rank::{is_d_rigid, DEFAULT_RIGIDITY_TRIALS};
use rigidity_core::regularity::{check_pair, CheckMode, PairCriterion};

#[derive(Parser)]
#[command(
    name = "rigidity",
    version,
    about = "combinatorial rigidity laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Auto,
    EdgeList,
    Json,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (edge list: "n m" then "u v" lines; or JSON
    /// {"n": .., "edges": [[u, v], ..]}).
    graphfile: PathBuf,
    /// Input format; auto sniffs JSON by a leading '{'.
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        let text = fs::read_to_string(&self.graphfile)
            .with_context(|| format!("cannot read {}", self.graphfile.display()))?;
        let g = match self.format {
            FormatArg::Auto => parse_graph_auto(&text),
            FormatArg::EdgeList => parse_graph(&text, GraphFormat::EdgeList),
            FormatArg::Json => parse_graph(&text, GraphFormat::Json),
        }?;
        Ok(g)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certify d-rigidity by the rank of the rigidity matrix at random
    /// prime-field embeddings.
    Check {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_RIGIDITY_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Audit the permutation-subgraph edge bound over the d-closure.
    Gsigma {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        perms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
    },
    /// Run the closure pipeline (closure, simplicial vertex, absorption).
    ExactPipeline {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a strong d-rigid partition.
    Partition {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        mode: PartitionMode,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PARTITION_RETRIES)]
        retries: usize,
        /// Bipartite mode: closeness parameter.
        #[arg(long, default_value_t = DEFAULT_BETA)]
        beta: f64,
        /// Tripartite mode: three ';'-separated sides, each a comma list of
        /// ids or "a-b" ranges. Defaults to contiguous equal thirds.
        #[arg(long)]
        sides: Option<String>,
        /// Also write the class assignment as two-column CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Search for a pseudocomplete (d+1)-coloring.
    Pseudo {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_PSEUDO_RETRIES)]
        retries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Expansion statistics of uniform random K-subsets.
    Expansion {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long = "K")]
        k_subset: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Density / regularity verdict for one bipartite pair.
    Regpair {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        criterion: CriterionArg,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
        /// Force sampled mode with this many witness candidates.
        #[arg(long)]
        samples: Option<usize>,
        /// Side A as a comma list of ids or "a-b" ranges.
        #[arg(long = "A")]
        a: String,
        /// Side B, same syntax.
        #[arg(long = "B")]
        b: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a named experiment from a JSON config.
    Experiment {
        /// thm_exact | thm_approx | thm_pseudo | expansion
        #[arg(long)]
        name: String,
        #[arg(long)]
        config: PathBuf,
    },
    /// Scan the conjectured minimum-degree bound for counterexamples.
    Scan {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        d_min: usize,
        #[arg(long)]
        d_max: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the bound curves (delta, d_conn, d_edge, d_star) as CSV.
    Curve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartitionMode {
    Bipartite,
    Tripartite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CriterionArg {
    Regular,
    Dense,
    Super,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("RIGIDLAB_THREADS") {
        match threads.parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
            _ => {
                eprintln!("error: RIGIDLAB_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match dispatch(cli.command) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Ok(true) = clean run, Ok(false) = property failure (exit 1).
fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Check {
            input,
            d,
            trials,
            prime,
            seed,
        } => {
            let g = input.load()?;
            let v = is_d_rigid(&g, d, trials, prime, seed)?;
            println!("{}", serde_json::to_string_pretty(&v)?);
            Ok(v.certified())
        }
        Command::Gsigma {
            input,
            d,
            perms,
            seed,
            trials,
            prime,
        } => {
            let g = input.load()?;
            let report = audit_gsigma_bound(&g, d, perms, seed, trials, prime)?;
            println!("{}", serde_json::to_string_pretty(&report.rows)?);
            Ok(report.violations == 0)
        }
        Command::ExactPipeline {
            input,
            d,
            trials,
            prime,
            seed,
        } => {
            let g = input.load()?;
            let trace = run_exact_pipeline(&g, d, trials, prime, seed)?;
            println!("{}", serde_json::to_string_pretty(&trace)?);
            Ok(!trace.flagged)
        }
        Command::Partition {
            input,
            mode,
            d,
            seed,
            retries,
            beta,
            sides,
            csv,
        } => {
            let g = input.load()?;
            let cert = match mode {
                PartitionMode::Bipartite => close_bipartite_partition(&g, d, beta, seed, retries)?,
                PartitionMode::Tripartite => {
                    let sides = match sides {
                        Some(spec) => parse_three_sides(&spec)?,
                        None => equal_thirds(g.n())?,
                    };
                    tripartite_partition(&g, &sides, d, seed, retries)?
                }
            };
            match cert {
                Some(cert) => {
                    if let Some(path) = csv {
                        fs::write(&path, cert.coloring.to_csv())?;
                    }
                    println!("{}", serde_json::to_string_pretty(&cert)?);
                    Ok(true)
                }
                None => {
                    println!("{}", serde_json::json!({ "found": false }));
                    Ok(false)
                }
            }
        }
        Command::Pseudo {
            input,
            d,
            retries,
            seed,
            csv,
        } => {
            let g = input.load()?;
            let found = pseudoachromatic_lower_bound(&g, d, retries, seed)?;
            match found {
                Some(coloring) => {
                    let (ok, _) = verify_pseudocomplete(&g, &coloring);
                    debug_assert!(ok);
                    if let Some(path) = csv {
                        fs::write(&path, coloring.to_csv())?;
                    }
                    println!(
                        "{}",
                        serde_json::json!({
                            "found": true,
                            "classes": coloring.k(),
                            "coloring": coloring,
                        })
                    );
                    Ok(true)
                }
                None => {
                    println!("{}", serde_json::json!({ "found": false }));
                    Ok(false)
                }
            }
        }
        Command::Expansion {
            input,
            k_subset,
            d,
            trials,
            seed,
        } => {
            let g = input.load()?;
            let stats = expansion_trial(&g, k_subset, d, trials, seed)?;
            println!("{}", serde_json::to_string_pretty(&stats)?);
            Ok(stats.empirical_rate >= stats.concentration_bound
                || !(stats.hypothesis_degree_ok && stats.hypothesis_max_degree_ok))
        }
        Command::Regpair {
            input,
            criterion,
            eps,
            delta,
            samples,
            a,
            b,
            seed,
        } => {
            let g = input.load()?;
            let a = parse_id_set(&a)?;
            let b = parse_id_set(&b)?;
            let criterion = match criterion {
                CriterionArg::Regular => PairCriterion::Regular,
                CriterionArg::Dense => PairCriterion::Dense,
                CriterionArg::Super => PairCriterion::SuperRegular,
            };
            let mode = match samples {
                Some(s) => CheckMode::Sampled(s),
                None => CheckMode::Auto,
            };
            let verdict = check_pair(&g, &a, &b, eps, delta, criterion, mode, seed)?;
            println!("{}", serde_json::to_string_pretty(&verdict)?);
            Ok(!verdict.failed())
        }
        Command::Experiment { name, config } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("cannot read {}", config.display()))?;
            let cfg = ExperimentConfig::from_json(&text)?;
            if cfg.experiment.as_str() != name {
                bail!(
                    "experiment name '{}' does not match config '{}'",
                    name,
                    cfg.experiment.as_str()
                );
            }
            let report = run_experiment(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(report.clean())
        }
        Command::Scan {
            n_min,
            n_max,
            d_min,
            d_max,
            samples,
            seed,
            p,
            out,
        } => {
            let cfg = ScanConfig {
                n_min,
                n_max,
                d_min,
                d_max,
                samples,
                seed,
                p,
                trials: DEFAULT_RIGIDITY_TRIALS,
                prime: DEFAULT_PRIME,
                output: out,
            };
            let report = conjecture_scan(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(report.confirmed_total == 0)
        }
        Command::Curve { n, out } => {
            let rows = conjecture_curve(n)?;
            let csv = curve_to_csv(n, &rows);
            match out {
                Some(path) => fs::write(&path, csv)?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
    }
}

/// "0,1,2" or "0-5" or a mix: "0-3,7,9".
fn parse_id_set(spec: &str) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| anyhow!("bad id '{part}'"))?;
                let hi: usize = hi.trim().parse().map_err(|_| anyhow!("bad id '{part}'"))?;
                if lo > hi {
                    bail!("empty range '{part}'");
                }
                out.extend(lo..=hi);
            }
            None => {
                out.insert(part.parse().map_err(|_| anyhow!("bad id '{part}'"))?);
            }
        }
    }
    if out.is_empty() {
        bail!("empty id set '{spec}'");
    }
    Ok(out)
}

fn parse_three_sides(spec: &str) -> Result<[BTreeSet<usize>; 3]> {
    let parts: Vec<&str> = spec.split(';').collect();
    if parts.len() != 3 {
        bail!("--sides needs exactly three ';'-separated groups");
    }
    Ok([
        parse_id_set(parts[0])?,
        parse_id_set(parts[1])?,
        parse_id_set(parts[2])?,
    ])
}

fn equal_thirds(n: usize) -> Result<[BTreeSet<usize>; 3]> {
    if !n.is_multiple_of(3) || n == 0 {
        bail!("graph on {n} vertices has no equal thirds; pass --sides");
    }
    let s = n / 3;
    Ok([(0..s).collect(), (s..2 * s).collect(), (2 * s..n).collect()])
}
