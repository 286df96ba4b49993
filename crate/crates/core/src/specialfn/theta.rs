//! Jacobi theta_3 and the dn Fourier series, in lattice-normalized form:
//! the elliptic variable enters through e^(2 pi i n v), so both functions
//! have period 1 in v. The nome q is a real number in [0, 1); at q = 0
//! every n != 0 term vanishes and both functions are exactly 1.

use crate::control::{EvalResult, SeriesControl};
use crate::error::{ensure_finite, EvalError};
use num_complex::Complex64;
use std::f64::consts::PI;

fn check_nome(q: f64) -> Result<(), EvalError> {
    if q >= 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(EvalError::Domain(format!(
            "nome must satisfy 0 <= q < 1, got {q}"
        )))
    }
}

/// theta_3(v, q) = sum_{n in Z} q^(n^2) e^(2 pi i n v)
///               = 1 + 2 sum_{n>=1} q^(n^2) cos(2 pi n v).
pub fn theta3(v: Complex64, q: f64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    check_nome(q)?;
    if q == 0.0 {
        // Only the n = 0 term survives, for every v.
        return Ok(EvalResult::new(Complex64::new(1.0, 0.0), 0.0, 1));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let growth = (2.0 * PI * v.im.abs()).exp();
    let mut qn = 1.0f64; // q^(n^2), advanced by q^(2n-1) each step
    let mut gn = 1.0f64; // growth^n
    for n in 1..=ctl.max_terms {
        qn *= q.powi(2 * n as i32 - 1);
        gn *= growth;
        let term = 2.0 * qn * (2.0 * PI * n as f64 * v).cos();
        acc += term;
        // Gaussian decay beats the exponential envelope once q^(2n-1) g < 1.
        if qn * gn < ctl.threshold(acc.norm()) && qn.powf(2.0 / n as f64) * growth < 0.9 {
            let value = ensure_finite(acc)?;
            return Ok(EvalResult::new(value, qn * gn, n));
        }
    }
    Err(EvalError::NonConvergence {
        terms: ctl.max_terms,
    })
}

/// Complete elliptic quarter period K as a function of the nome:
/// K = (pi / 2) theta_3(0, q)^2.
pub fn quarter_period(q: f64, ctl: &SeriesControl) -> Result<f64, EvalError> {
    let t = theta3(Complex64::new(0.0, 0.0), q, ctl)?;
    Ok(0.5 * PI * t.value.re * t.value.re)
}

/// dn expanded over the period lattice:
/// (pi / K) sum_{n in Z} q^n / (1 + q^(2n)) e^(2 pi i n v).
/// The coefficient is even in n, so this is real for real v. Requires
/// q e^(2 pi |Im v|) < 1 for the bilateral sum to converge.
pub fn jacobi_dn(v: Complex64, q: f64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    check_nome(q)?;
    if q == 0.0 {
        // (pi / K) / 2 with K = pi / 2: exactly 1 for every v.
        return Ok(EvalResult::new(Complex64::new(1.0, 0.0), 0.0, 1));
    }
    let growth = (2.0 * PI * v.im.abs()).exp();
    if q * growth >= 1.0 {
        return Err(EvalError::Domain(format!(
            "dn series needs q e^(2 pi |Im v|) < 1; q = {q}, |Im v| = {}",
            v.im.abs()
        )));
    }
    let k = quarter_period(q, ctl)?;
    let mut acc = Complex64::new(0.5, 0.0);
    let mut qn = 1.0f64;
    let mut terms = 0;
    for n in 1..=ctl.max_terms {
        qn *= q;
        let coef = qn / (1.0 + qn * qn);
        let term = 2.0 * coef * (2.0 * PI * n as f64 * v).cos();
        acc += term;
        terms = n;
        let bound = 2.0 * coef * growth.powi(n as i32);
        if bound < ctl.threshold(acc.norm()) {
            break;
        }
        if n == ctl.max_terms {
            return Err(EvalError::NonConvergence { terms: n });
        }
    }
    let value = ensure_finite(acc * (PI / k))?;
    Ok(EvalResult::new(value, 1e-15 * value.norm(), terms))
}
