//! Experiment harness for the rigidity laboratory: named experiments over
//! graph families, the conjecture scanner, and bound-curve emission, all
//! reporting as replayable JSON.

pub mod config;
pub mod curve;
pub mod experiment;
pub mod report;
pub mod scan;

pub use config::{ExpansionInstance, ExperimentConfig, ExperimentName};
pub use curve::{conjecture_curve, curve_to_csv, CurveRow};
pub use experiment::{approx_delta_req, exact_delta_req, replay_rigidity_outcome, run_experiment};
pub use report::{CellResult, FailureRecord, Report};
pub use scan::{conjecture_delta_req, conjecture_scan, ScanConfig, ScanReport};
