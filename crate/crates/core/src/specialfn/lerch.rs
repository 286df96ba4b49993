//! Lerch transcendent Phi(z, s, a) = sum_{n>=0} z^n / (n + a)^s.
//!
//! Inside the unit disk the defining series is summed directly with a
//! geometric tail bound. For real z <= -1 the series diverges but the
//! function continues through the Mellin-type integral
//!   Phi(z, s, a) = (1 / Gamma(s)) int_0^inf t^(s-1) e^(-a t) / (1 - z e^(-t)) dt,
//! which is evaluated with the doubly exponential half-line rule; the
//! denominator is positive there, so the integrand is smooth.

use crate::control::{EvalResult, SeriesControl};
use crate::error::{ensure_finite, EvalError};
use crate::quad::{exp_sinh, QuadControl};
use crate::specialfn::gamma::log_gamma;
use crate::specialfn::real_pow;
use num_complex::Complex64;

fn series(z: Complex64, s: Complex64, a: f64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    let r = z.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    for n in 0..ctl.max_terms {
        acc += zn * real_pow(n as f64 + a, -s);
        // Tail majorant: r^(n+1) (n+1+a)^(-Re s) / (1 - r), monotone in n
        // once n + a exceeds |Im s| influence; good enough as a stop rule.
        let tail = r.powi(n as i32 + 1) * (n as f64 + 1.0 + a).powf(-s.re) / (1.0 - r);
        if tail < ctl.threshold(acc.norm()) {
            let value = ensure_finite(acc)?;
            return Ok(EvalResult::new(value, tail, n + 1));
        }
        zn *= z;
    }
    Err(EvalError::NonConvergence {
        terms: ctl.max_terms,
    })
}

fn integral(z: f64, s: Complex64, a: f64) -> Result<EvalResult, EvalError> {
    if s.re <= 0.0 {
        return Err(EvalError::Domain(format!(
            "integral continuation of lerch_phi needs Re s > 0, got {s}"
        )));
    }
    let lg = log_gamma(s)?;
    let qc = QuadControl::with_target(1e-11);
    // Moment form: the rule integrates t * f(t); f has the t^(s-1) factor,
    // so the full exponent is s ln t - a t - ln(1 - z e^(-t)) - log Gamma(s).
    let r = exp_sinh(
        |t| {
            let denom = -(-t).exp() * z; // -z e^(-t) > 0 for z < 0
            let ln_denom = denom.ln_1p();
            (s * t.ln() - a * t - ln_denom - lg).exp()
        },
        &qc,
    )?;
    let value = ensure_finite(r.value)?;
    Ok(EvalResult::new(value, r.err_estimate, r.evals))
}

/// Lerch transcendent for a > 0 and either |z| < 1 or real z <= -1
/// (the latter requires Re s > 0).
pub fn lerch_phi(
    z: Complex64,
    s: Complex64,
    a: f64,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    if !(a > 0.0) {
        return Err(EvalError::Domain(format!(
            "lerch_phi requires a > 0, got a = {a}"
        )));
    }
    if z.norm() < 1.0 {
        series(z, s, a, ctl)
    } else if z.im == 0.0 && z.re <= -1.0 {
        integral(z.re, s, a)
    } else {
        Err(EvalError::Domain(format!(
            "lerch_phi defined for |z| < 1 or real z <= -1, got z = {z}"
        )))
    }
}
