//! Error taxonomy for the scalar evaluators and quadrature core.

use num_complex::Complex64;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    /// Argument within 1e-12 of a pole of the function.
    Pole { at: Complex64 },
    /// Argument outside the implemented domain.
    Domain(String),
    /// The result (or an unavoidable intermediate) left double range.
    Overflow,
    /// Series or product did not meet its tolerance within `max_terms`.
    NonConvergence { terms: usize },
    /// A reciprocal factor vanished.
    DivisionByZero,
    /// Quadrature level refinement stalled before the target was met.
    QuadratureNoConvergence { levels: usize, last_delta: f64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Pole { at } => write!(f, "argument at or near a pole ({at})"),
            EvalError::Domain(msg) => write!(f, "argument outside domain: {msg}"),
            EvalError::Overflow => write!(f, "result exceeds double range"),
            EvalError::NonConvergence { terms } => {
                write!(f, "no convergence after {terms} terms")
            }
            EvalError::DivisionByZero => write!(f, "a reciprocal factor vanished"),
            EvalError::QuadratureNoConvergence { levels, last_delta } => write!(
                f,
                "quadrature stalled after {levels} levels (last delta {last_delta:.3e})"
            ),
        }
    }
}

impl std::error::Error for EvalError {}

/// Reject non-finite values so NaN/Inf never escape an evaluator silently.
pub(crate) fn ensure_finite(v: Complex64) -> Result<Complex64, EvalError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::Overflow)
    }
}
