//! Independent reconstruction of kernel matrices from their measures.
//!
//! Every closed-form kernel matrix this crate builds is, underneath, the
//! Gram matrix of explicit functions against some nonnegative measure. This
//! module recomputes the matrices from that side: discrete lattice measures
//! for the theta-series families, line densities under quadrature for the
//! gamma/zeta-type families, and direct integral-identity checks where the
//! measure itself is the claim. Agreement between the two routes is the
//! evidence that the closed forms and the positivity structure are both
//! right; the routes share only elementary arithmetic.
//!
//! Families whose positivity rests on series coefficient signs rather than
//! an accessible measure (the q-deformed and theta-quotient families, and
//! the xi-function family) have no reconstruction here; their verification
//! is the eigenvalue route plus, for the q-gamma family, the closed-form
//! integral identity in [`verify_aw_integral`].

mod compare;
mod discrete;
mod identities;
mod quadgram;

pub use compare::{entrywise_compare, CompareReport};
pub use discrete::{gram_discrete, DiscreteMeasure};
pub use identities::{verify_aw_integral, verify_mp_identity, IdentityCheck};
pub use quadgram::{gram_quadrature, LineWeight, WeightedLine};

use crate::kernels::{FactorSpec, KernelFamily, MatrixSpec};
use crate::psdlinalg::{schur_product, HermitianMatrix, LinalgError};
use crate::quad::QuadControl;
use crate::specialfn::quarter_period;
use crate::{EvalError, SeriesControl};
use std::f64::consts::{LN_2, TAU};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum OracleError {
    /// The measure's recorded truncation bound exceeds what the caller
    /// will accept.
    TailTooLarge { bound: f64, limit: f64 },
    /// An atom with a non-finite location or a negative or non-finite
    /// weight was supplied.
    BadMeasure { location: f64, weight: f64 },
    /// No exponents (or no factors) to build a matrix from.
    EmptyExponents,
    /// A density was paired with a factor family it does not represent.
    WeightMismatch {
        expected: &'static str,
        got: &'static str,
    },
    /// The family has no measure-side reconstruction.
    Unsupported(KernelFamily),
    /// Two matrices of different sizes were compared.
    DimensionMismatch { left: usize, right: usize },
    Eval(EvalError),
    Linalg(LinalgError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TailTooLarge { bound, limit } => {
                write!(f, "truncation tail {bound:.3e} exceeds the limit {limit:.3e}")
            }
            OracleError::BadMeasure { location, weight } => {
                write!(f, "invalid atom: weight {weight} at {location}")
            }
            OracleError::EmptyExponents => write!(f, "nothing to build a Gram matrix from"),
            OracleError::WeightMismatch { expected, got } => {
                write!(f, "density mismatch: factor needs {expected}, got {got}")
            }
            OracleError::Unsupported(fam) => {
                write!(f, "the {fam} family has no measure-side reconstruction")
            }
            OracleError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            OracleError::Eval(e) => write!(f, "evaluation failed: {e}"),
            OracleError::Linalg(e) => write!(f, "linear algebra failed: {e}"),
        }
    }
}

impl std::error::Error for OracleError {}

impl From<EvalError> for OracleError {
    fn from(e: EvalError) -> Self {
        OracleError::Eval(e)
    }
}

impl From<LinalgError> for OracleError {
    fn from(e: LinalgError) -> Self {
        OracleError::Linalg(e)
    }
}

/// Whether a family's matrices can be rebuilt from a measure here.
pub fn oracle_supported(family: KernelFamily) -> bool {
    use KernelFamily::*;
    matches!(
        family,
        Theta3
            | Dn
            | ZetaTail
            | Gamma
            | Beta
            | EtaGammaZeta
            | EtaGamma1Zeta
            | PolygammaZeta
            | HurwitzTail
            | HurwitzDiff
            | Lerch
    )
}

/// Smallest lattice cut whose recorded tail meets eps, for weights q^{n^2}
/// against exponentials growing at most e^{2 pi growth |n|}.
fn theta_cut(q: f64, growth: f64, eps: f64) -> Option<u32> {
    for n in 1..=400u32 {
        let nf = n as f64;
        let log_ratio = (2.0 * nf + 3.0) * q.ln() + TAU * growth;
        let log_first = (nf + 1.0) * (nf + 1.0) * q.ln() + TAU * (nf + 1.0) * growth;
        if log_ratio <= -LN_2 && 4.0 * log_first.exp() <= eps {
            return Some(n);
        }
    }
    None
}

/// Same for the geometric-type weights q^{|n|} / (1 + q^{2|n|}) scaled by
/// `scale`; needs the growth-adjusted ratio strictly inside the unit disk.
fn dn_cut(q: f64, growth: f64, scale: f64, eps: f64) -> Option<u32> {
    let ratio = q * (TAU * growth).exp();
    if !(ratio < 0.999) {
        return None;
    }
    let target = eps * (1.0 - ratio) / (2.0 * scale);
    if target >= ratio {
        return Some(1);
    }
    let n = (target.ln() / ratio.ln()).ceil();
    if n.is_finite() && n < 200_000.0 {
        Some((n as u32).max(1))
    } else {
        None
    }
}

/// Measure-side reconstruction of a single factor's matrix.
pub fn factor_oracle(
    factor: &FactorSpec,
    quad: &QuadControl,
) -> Result<HermitianMatrix, OracleError> {
    let eps = quad.target_eps;
    match factor {
        FactorSpec::Theta3 { shared, points } => {
            let growth = 2.0 * points.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
            let cut = theta_cut(shared.q, growth, eps).ok_or(OracleError::TailTooLarge {
                bound: f64::INFINITY,
                limit: eps,
            })?;
            let m = DiscreteMeasure::theta_lattice(shared.q, cut, growth)?;
            gram_discrete(&m, points, eps)
        }
        FactorSpec::Dn { shared, points } => {
            let ctl = SeriesControl::default();
            let growth = 2.0 * points.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
            let scale = std::f64::consts::PI / quarter_period(shared.q, &ctl)?;
            let cut =
                dn_cut(shared.q, growth, scale, eps).ok_or(OracleError::TailTooLarge {
                    bound: f64::INFINITY,
                    limit: eps,
                })?;
            let m = DiscreteMeasure::dn_lattice(shared.q, cut, growth, &ctl)?;
            gram_discrete(&m, points, eps)
        }
        _ => {
            let line = WeightedLine::for_factor(factor, *quad)
                .ok_or_else(|| OracleError::Unsupported(factor.family()))?;
            gram_quadrature(&line, factor)
        }
    }
}

/// Measure-side reconstruction of a whole spec: factor oracles combined by
/// the entrywise product, mirroring how the kernel route combines factors.
pub fn oracle_matrix(
    spec: &MatrixSpec,
    quad: &QuadControl,
) -> Result<HermitianMatrix, OracleError> {
    let mut factors = spec.factors.iter();
    let first = factors.next().ok_or(OracleError::EmptyExponents)?;
    let mut acc = factor_oracle(first, quad)?;
    for f in factors {
        acc = schur_product(&acc, &factor_oracle(f, quad)?)?;
    }
    Ok(acc)
}
