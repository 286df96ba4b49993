//! Scalar special-function evaluators.
//!
//! Every series-backed evaluator takes a [`SeriesControl`](crate::SeriesControl)
//! and returns an [`EvalResult`](crate::EvalResult) carrying its own error
//! estimate and term count. Domain violations, poles, overflow and
//! non-convergence are reported as [`EvalError`](crate::EvalError), never as
//! NaN.

mod elliptic;
mod gamma;
mod hypergeometric;
mod lerch;
mod qseries;
mod theta;
mod xi;
mod zeta;

pub use elliptic::{
    elliptic_pochhammer, elliptic_theta, modular_series, CoefficientRule, ModularKind,
};
pub use gamma::{beta, gamma, log_gamma, rising_factorial};
pub use hypergeometric::hypergeometric_f;
pub use lerch::lerch_phi;
pub use qseries::{
    basic_hypergeometric_phi, deformed_q_hypergeometric, deformed_q_hypergeometric_with_radius,
    gamma_q, q_pochhammer, DEFAULT_ALPHA0_RADIUS,
};
pub use theta::{jacobi_dn, quarter_period, theta3};
pub use xi::riemann_xi;
pub use zeta::{dirichlet_eta, hurwitz_zeta, polygamma_shift, zeta};

pub(crate) use zeta::{hurwitz_diff, hurwitz_g, EULER_GAMMA, STIELTJES_1, STIELTJES_2, STIELTJES_3};

use num_complex::Complex64;

/// x^s for real x > 0 and complex s, via exp(s ln x).
pub(crate) fn real_pow(x: f64, s: Complex64) -> Complex64 {
    debug_assert!(x > 0.0);
    (s * x.ln()).exp()
}
