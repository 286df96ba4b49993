//! `build` and `check`: load a matrix description, assemble it, and (for
//! `check`) decide positive semidefiniteness.
//!
//! Input files carry either a kernel spec (`"factors": [...]`) or a raw
//! matrix (`"entries": [[[re, im], ...], ...]`). Raw input goes through the
//! same verdict pipeline, so handcrafted matrices can be checked directly;
//! a raw matrix that is not Hermitian is rejected as a spec error.

use crate::report::{BuildRecord, CheckRecord, Report, RunConfig, write_report};
use crate::{EXIT_NUMERIC, EXIT_OK, EXIT_SPEC, EXIT_VERIFY};
use num_complex::Complex64;
use serde::Deserialize;
use sfpsd::kernels::{build_matrix, validate_spec, MatrixSpec, SpecError, Violation};
use sfpsd::psdlinalg::{leading_minors, psd_verdict, HermitianMatrix};
use std::path::Path;
use std::time::Instant;

#[derive(Debug)]
pub enum CheckInput {
    Spec(MatrixSpec),
    Raw { label: String, rows: Vec<Vec<Complex64>> },
}

pub fn load_input(path: &Path) -> Result<CheckInput, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not valid JSON: {e}", path.display()))?;
    if value.get("factors").is_some() {
        let spec: MatrixSpec = serde_json::from_value(value)
            .map_err(|e| format!("{}: malformed kernel spec: {e}", path.display()))?;
        Ok(CheckInput::Spec(spec))
    } else if value.get("entries").is_some() {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            label: String,
            entries: Vec<Vec<[f64; 2]>>,
        }
        let raw: Raw = serde_json::from_value(value)
            .map_err(|e| format!("{}: malformed entries matrix: {e}", path.display()))?;
        let rows = raw
            .entries
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        Ok(CheckInput::Raw { label: raw.label, rows })
    } else {
        Err(format!(
            "{}: expected a \"factors\" kernel spec or an \"entries\" matrix",
            path.display()
        ))
    }
}

pub fn print_violations(violations: &[Violation]) {
    for v in violations {
        match v.point {
            Some(p) => eprintln!(
                "violation: factor {} point {}: {} (got {})",
                v.factor, p, v.constraint, v.detail
            ),
            None => eprintln!(
                "violation: factor {}: {} (got {})",
                v.factor, v.constraint, v.detail
            ),
        }
    }
}

/// Evaluator failures are numeric errors; structural failures mean the spec
/// itself is unusable.
fn spec_error_exit(e: &SpecError) -> i32 {
    match e {
        SpecError::Eval(_) | SpecError::ConjugateSymmetry { .. } => EXIT_NUMERIC,
        _ => EXIT_SPEC,
    }
}

/// Write the report if a path was given; report-write failures trump the
/// computed exit code.
fn emit(report: &mut Report, started: Instant, path: Option<&Path>, code: i32) -> i32 {
    report.finish(started);
    if let Some(p) = path {
        if let Err(e) = write_report(p, report) {
            eprintln!("error: cannot write report {}: {e}", p.display());
            return EXIT_NUMERIC;
        }
        println!("report written to {}", p.display());
    }
    code
}

fn config_for(command: &str, spec: &Path, tol: f64, report: Option<&Path>) -> RunConfig {
    let mut config = RunConfig::new(command);
    config.spec_path = Some(spec.display().to_string());
    config.tol_rel = tol;
    config.report_path = report.map(|p| p.display().to_string());
    config
}

pub fn cmd_check(spec_path: &Path, tol: f64, report_path: Option<&Path>) -> i32 {
    let started = Instant::now();
    if !(tol > 0.0) {
        eprintln!("error: --tol must be positive");
        return EXIT_SPEC;
    }
    let mut report = Report::new(config_for("check", spec_path, tol, report_path));
    let input = match load_input(spec_path) {
        Ok(i) => i,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_SPEC;
        }
    };
    let (label, matrix) = match input {
        CheckInput::Spec(spec) => {
            let validation = validate_spec(&spec);
            if !validation.is_valid() {
                print_violations(&validation.violations);
                report.violations = Some(validation.violations);
                return emit(&mut report, started, report_path, EXIT_SPEC);
            }
            match build_matrix(&spec) {
                Ok(m) => (spec.label.clone(), m),
                Err(e) => {
                    eprintln!("error: {e}");
                    return spec_error_exit(&e);
                }
            }
        }
        CheckInput::Raw { label, rows } => match HermitianMatrix::from_rows(rows) {
            Ok(m) => (label, m),
            Err(e) => {
                eprintln!("error: entries matrix rejected: {e}");
                return EXIT_SPEC;
            }
        },
    };
    let verdict = match psd_verdict(&matrix, tol) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERIC;
        }
    };
    println!(
        "check {}: is_psd = {}, min_eig = {:.6e}, cholesky_rank = {}/{}",
        if label.is_empty() { spec_path.display().to_string() } else { label.clone() },
        verdict.is_psd,
        verdict.min_eig,
        verdict.cholesky_rank,
        matrix.dim()
    );
    let code = if verdict.is_psd { EXIT_OK } else { EXIT_VERIFY };
    report.check = Some(CheckRecord {
        label,
        dim: matrix.dim(),
        verdict,
        leading_minors: leading_minors(&matrix),
    });
    emit(&mut report, started, report_path, code)
}

pub fn cmd_build(spec_path: &Path, report_path: Option<&Path>) -> i32 {
    let started = Instant::now();
    let mut report = Report::new(config_for("build", spec_path, 0.0, report_path));
    let spec = match load_input(spec_path) {
        Ok(CheckInput::Spec(spec)) => spec,
        Ok(CheckInput::Raw { .. }) => {
            eprintln!("error: build requires a kernel spec, not an entries matrix");
            return EXIT_SPEC;
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_SPEC;
        }
    };
    let validation = validate_spec(&spec);
    if !validation.is_valid() {
        print_violations(&validation.violations);
        report.violations = Some(validation.violations);
        return emit(&mut report, started, report_path, EXIT_SPEC);
    }
    let matrix = match build_matrix(&spec) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return spec_error_exit(&e);
        }
    };
    println!(
        "build {}: n = {}, frobenius_norm = {:.6e}",
        spec.label,
        matrix.dim(),
        matrix.frobenius_norm()
    );
    let entries = matrix
        .rows()
        .iter()
        .map(|row| row.iter().map(|v| [v.re, v.im]).collect())
        .collect();
    report.build = Some(BuildRecord {
        label: spec.label.clone(),
        dim: matrix.dim(),
        frobenius_norm: matrix.frobenius_norm(),
        entries,
    });
    emit(&mut report, started, report_path, EXIT_OK)
}
