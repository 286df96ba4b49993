//! Command-line driver for the kernel-matrix library: evaluate scalar
//! special functions, build matrices from spec files, check positive
//! semidefiniteness, run seeded fuzz campaigns, and cross-check the
//! measure-side oracles and integral identities.
//!
//! Reports are JSON (see `schemas/report.schema.json`), written atomically,
//! and byte-stable for a fixed configuration and seed apart from the
//! trailing wall-time field.
//!
//! Exit codes are a stable contract:
//! 0 success, 1 verification failure, 2 numeric or domain error,
//! 3 spec error (bad arguments, unparseable input, invalid spec).

mod check;
mod complexarg;
mod fuzz;
mod oracle_cmd;
mod registry;
mod report;

pub use complexarg::{format_complex, parse_complex};
pub use fuzz::{oracle_rel_tol, trial_seed};
pub use report::{Report, RunConfig, SCHEMA_VERSION, TOOL_VERSION};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use sfpsd::SeriesControl;
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_SPEC: i32 = 3;

#[derive(Parser)]
#[command(
    name = "sfpsd",
    version,
    about = "Special-function kernel matrices: build, verify, fuzz, cross-check"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a registered scalar function at complex arguments (a+bi).
    Eval {
        /// Function name; run with an unknown name to see the registry.
        function: String,
        /// Arguments, one complex literal each.
        #[arg(allow_hyphen_values = true, num_args = 0..)]
        args: Vec<String>,
        /// Relative series tolerance.
        #[arg(long, default_value_t = 1e-14)]
        eps: f64,
        /// Term cap for series and products.
        #[arg(long, default_value_t = 10_000)]
        max_terms: usize,
    },
    /// Build the matrix of a spec file and write its entries to the report.
    Build {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build a spec's matrix (or load a raw entries matrix) and decide PSD.
    Check {
        #[arg(long)]
        spec: PathBuf,
        /// Relative PSD tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Random spec campaign: PSD verdict plus oracle comparison per trial.
    Fuzz {
        /// One family tag, or "all".
        #[arg(long, default_value = "all")]
        family: String,
        /// Matrix dimension.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Trials per family.
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Campaign seed; every per-trial seed derives from it.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Relative PSD tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Closed-form identities and measure-side matrix reconstruction.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Weighted Gamma-modulus integral against its closed form.
    Mp {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        phi: f64,
        /// Relative tolerance (default 1e-6).
        #[arg(long)]
        tol: Option<f64>,
        /// Quadrature target.
        #[arg(long, default_value_t = 1e-11)]
        eps: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Trigonometric q-beta integral against its q-Gamma closed form.
    Aw {
        #[arg(long)]
        q: f64,
        /// Four comma-separated exponents.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
        /// Relative tolerance (default 1e-5).
        #[arg(long)]
        tol: Option<f64>,
        /// Quadrature target.
        #[arg(long, default_value_t = 1e-11)]
        eps: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Rebuild a spec's matrix from its defining measure and compare.
    Family {
        #[arg(long)]
        spec: PathBuf,
        /// Require every factor to belong to this family.
        #[arg(long)]
        family: Option<String>,
        /// Relative tolerance (default set by the loosest factor's oracle).
        #[arg(long)]
        tol: Option<f64>,
        /// Quadrature target.
        #[arg(long, default_value_t = 1e-11)]
        eps: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Parse and run; clap usage problems are spec errors, help and version
/// requests are successes.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli),
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_SPEC,
            };
            let _ = e.print();
            code
        }
    }
}

fn dispatch(cli: Cli) -> i32 {
    match cli.command {
        Command::Eval { function, args, eps, max_terms } => cmd_eval(&function, &args, eps, max_terms),
        Command::Build { spec, report } => check::cmd_build(&spec, report.as_deref()),
        Command::Check { spec, tol, report } => check::cmd_check(&spec, tol, report.as_deref()),
        Command::Fuzz { family, n, trials, seed, tol, report } => {
            fuzz::cmd_fuzz(&family, n, trials, seed, tol, report.as_deref())
        }
        Command::Oracle { which } => match which {
            OracleCommand::Mp { lambda, phi, tol, eps, report } => {
                oracle_cmd::cmd_mp(lambda, phi, tol, eps, report.as_deref())
            }
            OracleCommand::Aw { q, alpha, tol, eps, report } => {
                oracle_cmd::cmd_aw(q, &alpha, tol, eps, report.as_deref())
            }
            OracleCommand::Family { spec, family, tol, eps, report } => {
                oracle_cmd::cmd_family(&spec, family.as_deref(), tol, eps, report.as_deref())
            }
        },
    }
}

fn cmd_eval(function: &str, args: &[String], eps: f64, max_terms: usize) -> i32 {
    if !(eps > 0.0) || max_terms == 0 {
        eprintln!("error: --eps must be positive and --max-terms at least 1");
        return EXIT_SPEC;
    }
    let Some(entry) = registry::lookup(function) else {
        eprintln!(
            "error: unknown function `{function}`; registered: {}",
            registry::names().join(", ")
        );
        return EXIT_SPEC;
    };
    if args.len() != entry.arity {
        eprintln!(
            "error: `{function}` takes {} argument(s); usage: {}",
            entry.arity, entry.usage
        );
        return EXIT_SPEC;
    }
    let mut values = Vec::with_capacity(args.len());
    for arg in args {
        match parse_complex(arg) {
            Ok(v) => values.push(v),
            Err(msg) => {
                eprintln!("error: {msg}");
                return EXIT_SPEC;
            }
        }
    }
    let ctl = SeriesControl {
        rel_eps: eps,
        max_terms,
        ..SeriesControl::default()
    };
    match entry.eval(&values, &ctl) {
        Ok(r) => {
            println!("value = {}", format_complex(r.value));
            println!("err_estimate = {:.3e}", r.err_estimate);
            println!("terms_used = {}", r.terms_used);
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_NUMERIC
        }
    }
}
