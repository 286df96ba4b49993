//! Generalized hypergeometric series
//!   rFs(a; b; z) = sum_n prod (a_i)_n / prod (b_j)_n * z^n / (1)_n,
//! summed by the term recurrence. An upper parameter at a nonpositive
//! integer truncates the series to a polynomial; a lower parameter hit by
//! the recurrence before truncation is a genuine division by zero.

use crate::control::{EvalResult, SeriesControl};
use crate::error::{ensure_finite, EvalError};
use num_complex::Complex64;

fn nonpositive_integer(z: Complex64) -> Option<i64> {
    if z.im.abs() < 1e-12 && z.re < 0.5 {
        let r = z.re.round();
        if (z.re - r).abs() < 1e-12 {
            return Some(r as i64);
        }
    }
    None
}

pub fn hypergeometric_f(
    upper: &[Complex64],
    lower: &[Complex64],
    z: Complex64,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    let polynomial = upper.iter().any(|&a| nonpositive_integer(a).is_some());
    if !polynomial {
        if upper.len() > lower.len() + 1 {
            return Err(EvalError::Domain(format!(
                "series with {} upper and {} lower parameters diverges for z != 0",
                upper.len(),
                lower.len()
            )));
        }
        if upper.len() == lower.len() + 1 && z.norm() >= 1.0 {
            return Err(EvalError::Domain(format!(
                "balanced-plus-one series needs |z| < 1, got |z| = {}",
                z.norm()
            )));
        }
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = term;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        // Truncation by an upper parameter ends the sum exactly.
        if upper.iter().any(|&a| (a + nf).norm() < 1e-14) {
            return Ok(EvalResult::new(ensure_finite(acc)?, 0.0, n + 1));
        }
        let mut ratio = z / (nf + 1.0);
        for &a in upper {
            ratio *= a + nf;
        }
        for &b in lower {
            let d = b + nf;
            if d.norm() < 1e-14 {
                return Err(EvalError::DivisionByZero);
            }
            ratio /= d;
        }
        term *= ratio;
        acc += term;
        if term.norm() < ctl.threshold(acc.norm()) && ratio.norm() < 0.9 {
            return Ok(EvalResult::new(ensure_finite(acc)?, term.norm(), n + 2));
        }
    }
    Err(EvalError::NonConvergence {
        terms: ctl.max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn binomial_series() {
        // 1F0(a;;z) = (1-z)^(-a).
        let v = hypergeometric_f(&[c(1.5, 0.0)], &[], c(0.4, 0.0), &ctl())
            .unwrap()
            .value;
        let expect = 0.6f64.powf(-1.5);
        assert!((v.re - expect).abs() < 1e-13 * expect, "{v} vs {expect}");
    }

    #[test]
    fn gauss_log_value() {
        // 2F1(1,1;2;z) = -ln(1-z)/z; at z = 1/2 this is 2 ln 2.
        let v = hypergeometric_f(
            &[c(1.0, 0.0), c(1.0, 0.0)],
            &[c(2.0, 0.0)],
            c(0.5, 0.0),
            &ctl(),
        )
        .unwrap()
        .value;
        assert!((v.re - 1.3862943611198906).abs() < 1e-13, "{v}");
    }

    #[test]
    fn exponential_reproduction() {
        for z in [c(0.3, 0.0), c(-1.2, 2.0), c(4.0, -3.0)] {
            let v = hypergeometric_f(&[], &[], z, &ctl()).unwrap().value;
            assert!((v - z.exp()).norm() < 1e-12 * z.exp().norm(), "0F0({z})");
        }
    }

    #[test]
    fn polynomial_truncation() {
        // 2F1(-2, b; b; z) collapses to (1-z)^2 for any b.
        let r = hypergeometric_f(
            &[c(-2.0, 0.0), c(3.3, 0.0)],
            &[c(3.3, 0.0)],
            c(0.7, 0.0),
            &ctl(),
        )
        .unwrap();
        assert!((r.value.re - 0.09).abs() < 1e-14, "{}", r.value);
        assert_eq!(r.err_estimate, 0.0);
        // Polynomial case is exempt from the |z| < 1 restriction.
        let big = hypergeometric_f(
            &[c(-2.0, 0.0), c(1.0, 0.0)],
            &[c(1.0, 0.0)],
            c(3.0, 0.0),
            &ctl(),
        )
        .unwrap()
        .value;
        assert!((big.re - 4.0).abs() < 1e-12, "(1-3)^2 = {big}");
    }

    #[test]
    fn domain_checks() {
        // Too many upper parameters: divergent for z != 0.
        assert!(matches!(
            hypergeometric_f(
                &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
                &[c(2.0, 0.0)],
                c(0.1, 0.0),
                &ctl()
            ),
            Err(EvalError::Domain(_))
        ));
        // Gauss case on the boundary.
        assert!(matches!(
            hypergeometric_f(
                &[c(1.0, 0.0), c(1.0, 0.0)],
                &[c(2.0, 0.0)],
                c(1.0, 0.0),
                &ctl()
            ),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn lower_parameter_collision() {
        // b = -1 is reached by the recurrence at n = 1 before any truncation.
        assert!(matches!(
            hypergeometric_f(&[c(0.5, 0.0)], &[c(-1.0, 0.0)], c(0.2, 0.0), &ctl()),
            Err(EvalError::DivisionByZero)
        ));
    }

    #[test]
    fn confluent_kummer_relation() {
        // 1F1(a;b;z) = e^z 1F1(b-a;b;-z), a classical self-check.
        let (a, b, z) = (c(0.7, 0.2), c(2.1, 0.0), c(0.9, -0.4));
        let lhs = hypergeometric_f(&[a], &[b], z, &ctl()).unwrap().value;
        let rhs = z.exp()
            * hypergeometric_f(&[b - a], &[b], -z, &ctl())
                .unwrap()
                .value;
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm(), "{lhs} vs {rhs}");
    }
}
