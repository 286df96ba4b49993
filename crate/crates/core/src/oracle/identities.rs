//! Closed-form integral identities behind two kernel families, checked by
//! direct quadrature of the densities in [`LineWeight`].
//!
//! Both identities tie a density's total mass (against an elementary
//! factor) to a product of gamma-type values. They are the load-bearing
//! facts for the families whose matrices are not themselves Gram matrices
//! of an accessible measure, so they get their own verifiers.

use super::quadgram::LineWeight;
use crate::quad::{sinh_sinh, tanh_sinh, QuadControl};
use crate::specialfn::{gamma, gamma_q};
use crate::{Complex64, EvalError, SeriesControl};
use serde::Serialize;
use std::f64::consts::PI;

/// Two independently computed sides of one identity.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl IdentityCheck {
    /// |lhs - rhs| relative to the larger magnitude, floored at one.
    pub fn rel_dev(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }
}

/// Gamma modulus-squared moment identity: for lambda > 0 and 0 < phi < pi,
///
///   (1 / 2 pi) Int_R e^{(2 phi - pi) x} |Gamma(lambda + i x)|^2 dx
///     = Gamma(2 lambda) / (2 sin phi)^{2 lambda}.
///
/// The left side is integrated over the whole line; the integrand decays
/// like e^{-(pi - |2 phi - pi|) |x|}, so the rate degrades as phi nears
/// either end of (0, pi).
pub fn verify_mp_identity(
    lambda: f64,
    phi: f64,
    quad: &QuadControl,
) -> Result<IdentityCheck, EvalError> {
    if !(lambda > 0.0) {
        return Err(EvalError::Domain(format!(
            "moment identity needs lambda > 0, got {lambda}"
        )));
    }
    if !(phi > 0.0 && phi < PI) {
        return Err(EvalError::Domain(format!(
            "moment identity needs 0 < phi < pi, got {phi}"
        )));
    }
    let weight = LineWeight::MellinGamma { lambda };
    let body = sinh_sinh(
        |x| Complex64::new(weight.density(x) * (2.0 * phi * x).exp(), 0.0),
        quad,
    )?;
    let lhs = body.value.re / (2.0 * PI);
    let ctl = SeriesControl::default();
    let rhs = gamma(Complex64::new(2.0 * lambda, 0.0), &ctl)?.value.re
        / (2.0 * phi.sin()).powf(2.0 * lambda);
    Ok(IdentityCheck { lhs, rhs })
}

/// q-beta integral: for 0 < q < 1 and positive exponents alpha,
///
///   Int_0^pi (1-q)^5 (q; q)_inf^6 |(e^{2 i theta}; q)_inf|^2
///       / (|prod_m (q^{alpha_m} e^{i theta}; q)_inf|^2 2 pi) d theta
///     = (1-q)^{2 sum alpha} prod_{j<k} Gamma_q(alpha_j + alpha_k)
///       / Gamma_q(sum alpha).
///
/// The integrand is the [`LineWeight::AskeyWilson`] density itself; it
/// vanishes quadratically at both endpoints, so plain double-exponential
/// quadrature on (0, pi) converges fast.
pub fn verify_aw_integral(
    q: f64,
    alphas: [f64; 4],
    quad: &QuadControl,
) -> Result<IdentityCheck, EvalError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(EvalError::Domain(format!(
            "q-beta integral needs 0 < q < 1, got {q}"
        )));
    }
    if alphas.iter().any(|&a| !(a > 0.0)) {
        return Err(EvalError::Domain(format!(
            "q-beta integral needs positive exponents, got {alphas:?}"
        )));
    }
    let weight = LineWeight::AskeyWilson { q, alphas };
    let body = tanh_sinh(
        |theta, _, _| Complex64::new(weight.density(theta), 0.0),
        0.0,
        PI,
        quad,
    )?;
    let lhs = body.value.re;
    let ctl = SeriesControl::default();
    let total: f64 = alphas.iter().sum();
    let mut rhs = (1.0 - q).powf(2.0 * total) / gamma_q(total, q, &ctl)?.value.re;
    for j in 0..4 {
        for k in (j + 1)..4 {
            rhs *= gamma_q(alphas[j] + alphas[k], q, &ctl)?.value.re;
        }
    }
    Ok(IdentityCheck { lhs, rhs })
}
