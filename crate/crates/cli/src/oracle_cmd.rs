//! The `oracle` subcommand: evaluate a closed-form integral identity, or
//! rebuild a spec's matrix from its defining measure and compare entrywise.

use crate::check::{load_input, print_violations, CheckInput};
use crate::fuzz::oracle_rel_tol;
use crate::report::{ComparisonRecord, IdentityRecord, Report, RunConfig, write_report};
use crate::{EXIT_NUMERIC, EXIT_OK, EXIT_SPEC, EXIT_VERIFY};
use sfpsd::kernels::{build_matrix, validate_spec, KernelFamily};
use sfpsd::oracle::{entrywise_compare, oracle_matrix, verify_aw_integral, verify_mp_identity, IdentityCheck};
use sfpsd::quad::QuadControl;
use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

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

fn finish_identity(
    name: &str,
    params: BTreeMap<String, f64>,
    check: IdentityCheck,
    tol: f64,
    report_path: Option<&Path>,
    started: Instant,
) -> i32 {
    let rel_dev = check.rel_dev();
    let within = rel_dev <= tol;
    println!(
        "oracle {name}: lhs = {:.12e}, rhs = {:.12e}, rel_dev = {:.3e} ({} tol {:.1e})",
        check.lhs,
        check.rhs,
        rel_dev,
        if within { "within" } else { "beyond" },
        tol
    );
    let mut config = RunConfig::new(&format!("oracle {name}"));
    config.tol_rel = tol;
    config.report_path = report_path.map(|p| p.display().to_string());
    let mut report = Report::new(config);
    report.identity = Some(IdentityRecord {
        identity: name.to_string(),
        params,
        lhs: check.lhs,
        rhs: check.rhs,
        rel_dev,
        tol,
        within,
    });
    emit(&mut report, started, report_path, if within { EXIT_OK } else { EXIT_VERIFY })
}

pub fn cmd_mp(lambda: f64, phi: f64, tol: Option<f64>, eps: f64, report_path: Option<&Path>) -> i32 {
    let started = Instant::now();
    let tol = tol.unwrap_or(1e-6);
    match verify_mp_identity(lambda, phi, &QuadControl::with_target(eps)) {
        Ok(check) => {
            let params = BTreeMap::from([("lambda".to_string(), lambda), ("phi".to_string(), phi)]);
            finish_identity("mp", params, check, tol, report_path, started)
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_NUMERIC
        }
    }
}

pub fn cmd_aw(q: f64, alpha: &[f64], tol: Option<f64>, eps: f64, report_path: Option<&Path>) -> i32 {
    let started = Instant::now();
    let tol = tol.unwrap_or(1e-5);
    let alphas: [f64; 4] = match alpha.try_into() {
        Ok(a) => a,
        Err(_) => {
            eprintln!("error: --alpha takes exactly four comma-separated values, got {}", alpha.len());
            return EXIT_SPEC;
        }
    };
    match verify_aw_integral(q, alphas, &QuadControl::with_target(eps)) {
        Ok(check) => {
            let mut params = BTreeMap::from([("q".to_string(), q)]);
            for (i, a) in alphas.iter().enumerate() {
                params.insert(format!("alpha{}", i + 1), *a);
            }
            finish_identity("aw", params, check, tol, report_path, started)
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_NUMERIC
        }
    }
}

pub fn cmd_family(
    spec_path: &Path,
    family: Option<&str>,
    tol: Option<f64>,
    eps: f64,
    report_path: Option<&Path>,
) -> i32 {
    let started = Instant::now();
    let spec = match load_input(spec_path) {
        Ok(CheckInput::Spec(spec)) => spec,
        Ok(CheckInput::Raw { .. }) => {
            eprintln!("error: the family oracle requires a kernel spec, not an entries matrix");
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
        return EXIT_SPEC;
    }
    if let Some(tag) = family {
        let requested: KernelFamily = match tag.parse() {
            Ok(f) => f,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_SPEC;
            }
        };
        if let Some(other) = spec.factors.iter().find(|f| f.family() != requested) {
            eprintln!(
                "error: spec factor of family {} does not match --family {requested}",
                other.family()
            );
            return EXIT_SPEC;
        }
    }
    // The achievable agreement for a product is set by its loosest factor.
    let mut rel_tol: f64 = 0.0;
    for factor in &spec.factors {
        match oracle_rel_tol(factor.family()) {
            Some(t) => rel_tol = rel_tol.max(t),
            None => {
                eprintln!("error: no measure-side oracle for family {}", factor.family());
                return EXIT_SPEC;
            }
        }
    }
    let rel_tol = tol.unwrap_or(rel_tol);

    let matrix = match build_matrix(&spec) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERIC;
        }
    };
    let reconstructed = match oracle_matrix(&spec, &QuadControl::with_target(eps)) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERIC;
        }
    };
    let compare = match entrywise_compare(&matrix, &reconstructed, rel_tol) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERIC;
        }
    };
    println!(
        "oracle family {}: max_rel_dev = {:.3e} at ({}, {}) ({} tol {:.1e})",
        spec.label,
        compare.max_rel_dev,
        compare.worst.0,
        compare.worst.1,
        if compare.within { "within" } else { "beyond" },
        rel_tol
    );

    let mut config = RunConfig::new("oracle family");
    config.spec_path = Some(spec_path.display().to_string());
    config.family = family.map(|f| f.to_string());
    config.tol_rel = rel_tol;
    config.report_path = report_path.map(|p| p.display().to_string());
    let mut report = Report::new(config);
    let code = if compare.within { EXIT_OK } else { EXIT_VERIFY };
    report.comparison = Some(ComparisonRecord {
        label: spec.label.clone(),
        families: spec.factors.iter().map(|f| f.family().tag().to_string()).collect(),
        dim: matrix.dim(),
        compare,
    });
    emit(&mut report, started, report_path, code)
}
