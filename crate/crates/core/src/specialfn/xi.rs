//! The xi function on the critical line, recentred so the argument runs
//! along the real axis: with w = 1/2 + i z,
//!   Xi(z) = -((1 + 4 z^2) / 8) pi^(-w/2) Gamma(w/2) zeta(w).
//! Xi is even, real on the real axis, and vanishes exactly at the ordinates
//! of the nontrivial zeros.

use crate::control::{EvalResult, SeriesControl};
use crate::error::{ensure_finite, EvalError};
use crate::specialfn::gamma::log_gamma;
use crate::specialfn::zeta::zeta;
use num_complex::Complex64;

/// Xi(z) for |Im z| < 1/2 (so the zeta factor stays in its half plane).
pub fn riemann_xi(z: Complex64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    if z.im.abs() >= 0.5 {
        return Err(EvalError::Domain(format!(
            "riemann_xi implemented for |Im z| < 1/2, got {z}"
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    let w = 0.5 + i * z;
    let zr = zeta(w, ctl)?;
    let lg = log_gamma(0.5 * w)?;
    let pref = -(1.0 + 4.0 * z * z) / 8.0;
    let archimedean = (lg - 0.5 * w * std::f64::consts::PI.ln()).exp();
    let value = ensure_finite(pref * archimedean * zr.value)?;
    let err = zr.err_estimate * (pref * archimedean).norm() + 1e-14 * value.norm();
    Ok(EvalResult::new(value, err, zr.terms_used))
}
