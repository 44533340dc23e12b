//! Machine-readable experiment reports. During a run, finished cells are
//! appended as JSON lines next to the final destination so a crash loses at
//! most one cell; the finalized report is a single JSON document.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use rigidity_core::graph::GraphJson;

/// A failing sample with everything needed to replay it bit-for-bit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureRecord {
    pub sample_index: usize,
    /// The seed the checker ran under.
    pub seed: u64,
    pub graph: GraphJson,
    pub detail: String,
    /// Serialized checker outcome, compared verbatim on replay.
    pub outcome: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellResult {
    pub n: usize,
    pub d: usize,
    pub delta_req: usize,
    pub samples: usize,
    pub passes: usize,
    pub failures: Vec<FailureRecord>,
    /// Set when the cell was infeasible and skipped.
    pub skipped: Option<String>,
}

impl CellResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub config: serde_json::Value,
    pub master_seed: u64,
    pub cells: Vec<CellResult>,
    pub total_pass: usize,
    pub total_fail: usize,
    pub wall_time_secs: f64,
    pub version: String,
}

impl Report {
    pub fn clean(&self) -> bool {
        self.total_fail == 0
    }
}

pub fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Streams finished cells as JSON lines while a run is in flight, so a
/// crash loses at most one cell.
pub struct JsonlSink {
    path: Option<PathBuf>,
}

impl JsonlSink {
    /// `destination` is the final report path; the temporary stream lives
    /// beside it with a `.jsonl` suffix.
    pub fn beside(destination: Option<&Path>) -> Self {
        JsonlSink {
            path: destination.map(|p| {
                let mut s = p.as_os_str().to_owned();
                s.push(".jsonl");
                PathBuf::from(s)
            }),
        }
    }

    pub fn append<T: Serialize>(&self, cell: &T) {
        let Some(path) = &self.path else { return };
        let Ok(mut file) = fs::OpenOptions::new().create(true).append(true).open(path) else {
            return;
        };
        if let Ok(line) = serde_json::to_string(cell) {
            let _ = writeln!(file, "{line}");
        }
    }

    /// Removes the stream once the final document is safely written.
    pub fn finalize(&self) {
        if let Some(path) = &self.path {
            let _ = fs::remove_file(path);
        }
    }
}

pub fn write_report(report: &Report, destination: Option<&Path>) -> std::io::Result<()> {
    if let Some(path) = destination {
        fs::write(path, serde_json::to_string_pretty(report)?)?;
    }
    Ok(())
}
