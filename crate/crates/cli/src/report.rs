//! Machine-readable run reports.
//!
//! Every command that takes `--report` serializes one [`Report`] as pretty
//! JSON. The layout is versioned ([`SCHEMA_VERSION`], described by
//! `schemas/report.schema.json`), the configuration and seed are echoed
//! back, and for a fixed configuration the bytes are identical from run to
//! run except for the trailing `wall_time_ms` field. Files are written
//! atomically: a temp file in the target directory, then a rename.

use serde::Serialize;
use sfpsd::kernels::{MatrixSpec, Violation};
use sfpsd::oracle::CompareReport;
use sfpsd::psdlinalg::PsdVerdict;
use std::collections::BTreeMap;
use std::io;
use std::path::Path;
use std::time::Instant;

pub const SCHEMA_VERSION: &str = "1.0.0";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Echo of the invocation, embedded in every report. Fields that a command
/// does not use keep their defaults, so one shape serves all commands.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub spec_path: Option<String>,
    pub family: Option<String>,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol_rel: f64,
    pub report_path: Option<String>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            spec_path: None,
            family: None,
            n: 0,
            trials: 0,
            seed: 0,
            tol_rel: 0.0,
            report_path: None,
        }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build: Option<BuildRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<Vec<TrialRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<IdentityRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<Vec<Violation>>,
    /// Milliseconds. The one field that may differ between identical runs;
    /// it stays last so reports can be compared by dropping the final entry.
    pub wall_time_ms: f64,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            config,
            build: None,
            check: None,
            trials: None,
            identity: None,
            comparison: None,
            violations: None,
            wall_time_ms: 0.0,
        }
    }

    pub fn finish(&mut self, started: Instant) {
        self.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    }
}

/// The assembled matrix, entry by entry, row-major `[re, im]` pairs.
#[derive(Serialize)]
pub struct BuildRecord {
    pub label: String,
    pub dim: usize,
    pub frobenius_norm: f64,
    pub entries: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
pub struct CheckRecord {
    pub label: String,
    pub dim: usize,
    pub verdict: PsdVerdict,
    pub leading_minors: Vec<f64>,
}

/// One fuzz trial. `spec` is embedded verbatim exactly when the trial
/// fails, so the matrix can be replayed with `check --spec`.
#[derive(Serialize)]
pub struct TrialRecord {
    pub family: String,
    pub trial: usize,
    pub trial_seed: u64,
    pub label: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<PsdVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<CompareReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<MatrixSpec>,
}

#[derive(Serialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_dev: f64,
    pub tol: f64,
    pub within: bool,
}

/// Entrywise agreement between the kernel route and the measure route.
#[derive(Serialize)]
pub struct ComparisonRecord {
    pub label: String,
    pub families: Vec<String>,
    pub dim: usize,
    pub compare: CompareReport,
}

pub fn write_report(path: &Path, report: &Report) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    text.push('\n');
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "report path has no file name"))?;
    let mut tmp_name = name.to_os_string();
    tmp_name.push(format!(".tmp.{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, text.as_bytes())?;
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_is_atomic_and_overwrites() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let report = Report::new(RunConfig::new("check"));
        write_report(&path, &report).unwrap();
        write_report(&path, &report).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"schema_version\": \"1.0.0\""));
        // No temp file may survive the rename.
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn wall_time_is_the_last_field() {
        let mut report = Report::new(RunConfig::new("fuzz"));
        report.finish(Instant::now());
        let text = serde_json::to_string_pretty(&report).unwrap();
        let tail = &text[text.rfind("wall_time_ms").unwrap()..];
        assert!(!tail.contains(','), "nothing may follow wall_time_ms");
    }
}
