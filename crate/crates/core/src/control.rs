//! Convergence policy and the common result carrier for series evaluators.

use num_complex::Complex64;

/// Truncation policy shared by every series and product evaluator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesControl {
    /// Relative tolerance against the accumulated value.
    pub rel_eps: f64,
    /// Absolute floor below which further terms never matter.
    pub abs_eps: f64,
    /// Hard cap on terms before the evaluator gives up.
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_eps: 1e-14,
            abs_eps: 1e-300,
            max_terms: 10_000,
        }
    }
}

impl SeriesControl {
    pub fn with_rel_eps(rel_eps: f64) -> Self {
        Self {
            rel_eps,
            ..Self::default()
        }
    }

    /// Stopping threshold for a partial sum of the given magnitude.
    pub(crate) fn threshold(&self, acc_norm: f64) -> f64 {
        (self.rel_eps * acc_norm).max(self.abs_eps)
    }

    // Misconfigured controls are programming errors, not data errors.
    pub(crate) fn assert_valid(&self) {
        assert!(
            self.rel_eps > 0.0 && self.max_terms >= 1 && self.abs_eps >= 0.0,
            "SeriesControl out of range: {self:?}"
        );
    }
}

/// A computed value plus the evaluator's own accounting.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    pub value: Complex64,
    /// Upper estimate of the truncation plus rounding error (absolute).
    pub err_estimate: f64,
    pub terms_used: usize,
}

impl EvalResult {
    pub(crate) fn new(value: Complex64, err_estimate: f64, terms_used: usize) -> Self {
        Self {
            value,
            err_estimate: err_estimate.abs(),
            terms_used,
        }
    }
}
