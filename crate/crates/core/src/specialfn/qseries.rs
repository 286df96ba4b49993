//! q-Pochhammer products, the q-gamma function, and the alpha-deformed
//! basic hypergeometric series
//!   rA_s^(alpha)(a; b; q; z) = sum_n (a_1..a_r; q)_n / (b_1..b_s; q)_n q^(alpha n^2) z^n,
//! whose Gaussian factor makes it entire in z whenever alpha > 0. The
//! classical r_phi_s is the alpha = (s+1-r)/2 member after prepending q to
//! the denominator list and rescaling the argument by (-1/sqrt(q))^(s+1-r).

use crate::control::{EvalResult, SeriesControl};
use crate::error::{ensure_finite, EvalError};
use num_complex::Complex64;

/// Radius of the z-disk accepted when alpha = 0 and the Gaussian factor
/// gives no help; overridable through the explicit-radius entry point.
pub const DEFAULT_ALPHA0_RADIUS: f64 = 0.5;

fn check_base(q: f64, allow_zero: bool) -> Result<(), EvalError> {
    let lo_ok = if allow_zero { q >= 0.0 } else { q > 0.0 };
    if lo_ok && q < 1.0 {
        Ok(())
    } else {
        Err(EvalError::Domain(format!("base must lie in [0, 1), got q = {q}")))
    }
}

/// (z; q)_n, with n = None meaning the infinite product. The finite product
/// multiplies its factors in index order, so the telescoping recurrence
/// (z;q)_(n+1) = (z;q)_n (1 - z q^n) holds bit for bit.
pub fn q_pochhammer(
    z: Complex64,
    q: f64,
    n: Option<u64>,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    check_base(q, true)?;
    let mut acc = Complex64::new(1.0, 0.0);
    match n {
        Some(count) => {
            let mut qk = 1.0f64;
            for _ in 0..count {
                acc = acc * (Complex64::new(1.0, 0.0) - z * qk);
                qk *= q;
            }
            Ok(EvalResult::new(ensure_finite(acc)?, 0.0, count as usize))
        }
        None => {
            let mut qk = 1.0f64;
            for k in 0..ctl.max_terms {
                if z.norm() * qk < ctl.rel_eps {
                    // Remaining factors differ from 1 by a geometric series.
                    let tail = z.norm() * qk / (1.0 - q).max(1e-300);
                    return Ok(EvalResult::new(ensure_finite(acc)?, tail * acc.norm(), k));
                }
                acc = acc * (Complex64::new(1.0, 0.0) - z * qk);
                qk *= q;
            }
            Err(EvalError::NonConvergence {
                terms: ctl.max_terms,
            })
        }
    }
}

/// Gamma_q(x) = (q; q)_inf (1 - q)^(1 - x) / (q^x; q)_inf for x > 0.
pub fn gamma_q(x: f64, q: f64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    check_base(q, false)?;
    if !(x > 0.0) {
        return Err(EvalError::Domain(format!(
            "gamma_q requires x > 0, got {x}"
        )));
    }
    let top = q_pochhammer(Complex64::new(q, 0.0), q, None, ctl)?;
    let bot = q_pochhammer(Complex64::new(q.powf(x), 0.0), q, None, ctl)?;
    let value = top.value * (1.0 - q).powf(1.0 - x) / bot.value;
    Ok(EvalResult::new(
        ensure_finite(value)?,
        2e-15 * value.norm(),
        top.terms_used + bot.terms_used,
    ))
}

fn deformed_impl(
    upper: &[Complex64],
    lower: &[Complex64],
    q: f64,
    alpha: f64,
    z: Complex64,
    rho: f64,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    check_base(q, false)?;
    if alpha < 0.0 {
        return Err(EvalError::Domain(format!(
            "gaussian weight exponent must be nonnegative, got alpha = {alpha}"
        )));
    }
    if alpha == 0.0 && z.norm() >= rho {
        return Err(EvalError::Domain(format!(
            "with alpha = 0 the argument must satisfy |z| < {rho}, got |z| = {}",
            z.norm()
        )));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = term;
    let mut qn = 1.0f64; // q^n
    for n in 0..ctl.max_terms {
        // Step n -> n+1: Pochhammer factors at q^n, Gaussian q^(alpha(2n+1)).
        let mut ratio = z * q.powf(alpha * (2.0 * n as f64 + 1.0));
        for &a in upper {
            ratio *= Complex64::new(1.0, 0.0) - a * qn;
        }
        for &b in lower {
            let f = Complex64::new(1.0, 0.0) - b * qn;
            if f.norm() < 1e-14 {
                return Err(EvalError::DivisionByZero);
            }
            ratio /= f;
        }
        term *= ratio;
        acc += term;
        qn *= q;
        if term.norm() < ctl.threshold(acc.norm()) && ratio.norm() < 0.95 {
            return Ok(EvalResult::new(ensure_finite(acc)?, term.norm(), n + 2));
        }
    }
    Err(EvalError::NonConvergence {
        terms: ctl.max_terms,
    })
}

/// The deformed series with the default alpha = 0 radius.
pub fn deformed_q_hypergeometric(
    upper: &[Complex64],
    lower: &[Complex64],
    q: f64,
    alpha: f64,
    z: Complex64,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    deformed_impl(upper, lower, q, alpha, z, DEFAULT_ALPHA0_RADIUS, ctl)
}

/// Same series with a caller-chosen alpha = 0 acceptance radius rho < 1.
pub fn deformed_q_hypergeometric_with_radius(
    upper: &[Complex64],
    lower: &[Complex64],
    q: f64,
    alpha: f64,
    z: Complex64,
    rho: f64,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(EvalError::Domain(format!(
            "acceptance radius must lie in (0, 1), got {rho}"
        )));
    }
    deformed_impl(upper, lower, q, alpha, z, rho, ctl)
}

/// r_phi_s(a; b; q, z) via the deformed series: alpha = (s+1-r)/2, q joins
/// the denominator list, and z picks up (-1/sqrt(q))^(s+1-r).
pub fn basic_hypergeometric_phi(
    upper: &[Complex64],
    lower: &[Complex64],
    q: f64,
    z: Complex64,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    check_base(q, false)?;
    let r = upper.len() as i32;
    let s = lower.len() as i32;
    if s + 1 < r {
        return Err(EvalError::Domain(format!(
            "phi series needs at least r - 1 lower parameters, got r = {r}, s = {s}"
        )));
    }
    let excess = (s + 1 - r) as f64;
    let alpha = 0.5 * excess;
    let scale = (-1.0 / q.sqrt()).powi(s + 1 - r);
    let mut lower_full = Vec::with_capacity(lower.len() + 1);
    lower_full.push(Complex64::new(q, 0.0));
    lower_full.extend_from_slice(lower);
    deformed_impl(upper, &lower_full, q, alpha, z * scale, DEFAULT_ALPHA0_RADIUS, ctl)
}
