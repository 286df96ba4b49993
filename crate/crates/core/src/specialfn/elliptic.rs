//! Multiplicative (elliptic) theta function, theta-Pochhammer symbols and
//! the unilateral/bilateral modular series built from them.
//!
//! theta(x; p) = (x; p)_inf (p/x; p)_inf on 0 <= p < 1, x != 0. The symbol
//! (a; q, p)_n multiplies theta(a q^k; p) for k = 0..n-1, is 1 at n = 0 and
//! is the reciprocal product for negative n. Modular series attach a
//! user-controlled coefficient sequence: the default Gaussian rule q^(n^2)
//! decays fast enough to swamp the theta growth in every configuration the
//! kernel layer generates; an explicit nonnegative table gives finite sums.

use crate::control::{EvalResult, SeriesControl};
use crate::error::{ensure_finite, EvalError};
use crate::specialfn::qseries::q_pochhammer;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Coefficient sequence for modular series. `Gaussian` is q^(n^2); `Table`
/// reads values[|n|] and treats indices past the end as zero, so a table
/// always yields a finite sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum CoefficientRule {
    Gaussian,
    Table { values: Vec<f64> },
}

impl CoefficientRule {
    pub(crate) fn at(&self, n: i64, q: f64) -> f64 {
        match self {
            CoefficientRule::Gaussian => q.powi((n * n) as i32),
            CoefficientRule::Table { values } => {
                values.get(n.unsigned_abs() as usize).copied().unwrap_or(0.0)
            }
        }
    }

    pub(crate) fn horizon(&self) -> Option<usize> {
        match self {
            CoefficientRule::Gaussian => None,
            CoefficientRule::Table { values } => Some(values.len()),
        }
    }
}

/// Which modular series: E is the unilateral sum with q prepended to the
/// denominator symbols, G the bilateral sum with the lists used as given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModularKind {
    E,
    G,
}

fn check_p(p: f64) -> Result<(), EvalError> {
    if p >= 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(EvalError::Domain(format!(
            "elliptic base must lie in [0, 1), got p = {p}"
        )))
    }
}

/// theta(x; p) = (x; p)_inf (p/x; p)_inf.
pub fn elliptic_theta(x: Complex64, p: f64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    check_p(p)?;
    if x.norm() == 0.0 {
        return Err(EvalError::Domain("theta(x; p) undefined at x = 0".into()));
    }
    let first = q_pochhammer(x, p, None, ctl)?;
    if p == 0.0 {
        // (0; 0)_inf = 1, so theta degenerates to 1 - x.
        return Ok(EvalResult::new(first.value, first.err_estimate, first.terms_used));
    }
    let second = q_pochhammer(Complex64::new(p, 0.0) / x, p, None, ctl)?;
    let value = ensure_finite(first.value * second.value)?;
    Ok(EvalResult::new(
        value,
        (first.err_estimate + second.err_estimate) * value.norm().max(1.0),
        first.terms_used + second.terms_used,
    ))
}

/// (a; q, p)_n for any integer n; negative n inverts the product
/// 1 / prod_{k=0}^{-n-1} theta(a q^(n+k); p).
pub fn elliptic_pochhammer(
    a: Complex64,
    q: f64,
    p: f64,
    n: i64,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    if !(q > 0.0 && q < 1.0) {
        return Err(EvalError::Domain(format!(
            "elliptic_pochhammer needs 0 < q < 1, got {q}"
        )));
    }
    check_p(p)?;
    let mut acc = Complex64::new(1.0, 0.0);
    let mut terms = 0usize;
    if n >= 0 {
        for k in 0..n {
            let t = elliptic_theta(a * q.powi(k as i32), p, ctl)?;
            acc *= t.value;
            terms += t.terms_used;
        }
    } else {
        for k in 0..(-n) {
            let t = elliptic_theta(a * q.powi((n + k) as i32), p, ctl)?;
            if t.value.norm() < 1e-250 {
                return Err(EvalError::DivisionByZero);
            }
            acc /= t.value;
            terms += t.terms_used;
        }
    }
    Ok(EvalResult::new(ensure_finite(acc)?, 1e-14 * acc.norm(), terms))
}

struct SeriesSide {
    poch_ratio: Complex64, // running prod theta(a_i q^k) / prod theta(b_j q^k)
    zpow: Complex64,
}

impl SeriesSide {
    fn term(&self, coeff: &CoefficientRule, n: i64, q: f64) -> Complex64 {
        self.poch_ratio * coeff.at(n, q) * self.zpow
    }
}

/// Unilateral (E) or bilateral (G) modular series. For E the list of
/// denominator symbols gains a leading q; for G the bilateral sum needs
/// z != 0 whenever negative indices contribute.
pub fn modular_series(
    kind: ModularKind,
    upper: &[Complex64],
    lower: &[Complex64],
    q: f64,
    p: f64,
    coeff: &CoefficientRule,
    z: Complex64,
    ctl: &SeriesControl,
) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    if !(q > 0.0 && q < 1.0) {
        return Err(EvalError::Domain(format!(
            "modular series needs 0 < q < 1, got {q}"
        )));
    }
    check_p(p)?;
    let mut lower_full: Vec<Complex64> = Vec::with_capacity(lower.len() + 1);
    if kind == ModularKind::E {
        lower_full.push(Complex64::new(q, 0.0));
    }
    lower_full.extend_from_slice(lower);

    if kind == ModularKind::G && z.norm() == 0.0 {
        return Err(EvalError::Domain(
            "bilateral series needs z != 0 for its negative indices".into(),
        ));
    }

    // Advance a side's Pochhammer ratio from index n to n+1 (dir = +1) or
    // from -n to -(n+1) (dir = -1, dividing by factors at q^(-(n+1))).
    let advance = |side: &mut SeriesSide, n: i64, dir: i64| -> Result<(), EvalError> {
        let k = if dir > 0 { n } else { -n - 1 };
        for &a in upper {
            let t = elliptic_theta(a * q.powi(k as i32), p, ctl)?;
            if dir > 0 {
                side.poch_ratio *= t.value;
            } else {
                if t.value.norm() < 1e-250 {
                    return Err(EvalError::DivisionByZero);
                }
                side.poch_ratio /= t.value;
            }
        }
        for &b in &lower_full {
            let t = elliptic_theta(b * q.powi(k as i32), p, ctl)?;
            if dir > 0 {
                if t.value.norm() < 1e-250 {
                    return Err(EvalError::DivisionByZero);
                }
                side.poch_ratio /= t.value;
            } else {
                side.poch_ratio *= t.value;
            }
        }
        side.zpow = if dir > 0 { side.zpow * z } else { side.zpow / z };
        Ok(())
    };

    let horizon = coeff.horizon();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pos = SeriesSide {
        poch_ratio: Complex64::new(1.0, 0.0),
        zpow: Complex64::new(1.0, 0.0),
    };
    acc += pos.term(coeff, 0, q);
    let mut neg = SeriesSide {
        poch_ratio: Complex64::new(1.0, 0.0),
        zpow: Complex64::new(1.0, 0.0),
    };
    let mut quiet = 0usize;
    let mut total_terms = 1usize;
    for n in 0..ctl.max_terms as i64 {
        if let Some(h) = horizon {
            if n as usize >= h {
                // Table exhausted: every later coefficient is zero.
                return Ok(EvalResult::new(ensure_finite(acc)?, 0.0, total_terms));
            }
        }
        let mut step = 0.0f64;
        advance(&mut pos, n, 1)?;
        let t_pos = pos.term(coeff, n + 1, q);
        acc += t_pos;
        step += t_pos.norm();
        total_terms += 1;
        if kind == ModularKind::G {
            advance(&mut neg, n, -1)?;
            let t_neg = neg.term(coeff, -(n + 1), q);
            acc += t_neg;
            step += t_neg.norm();
            total_terms += 1;
        }
        if !step.is_finite() {
            return Err(EvalError::Overflow);
        }
        if step < ctl.threshold(acc.norm()) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(EvalResult::new(ensure_finite(acc)?, step, total_terms));
            }
        } else {
            quiet = 0;
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
    fn theta_degenerate_base() {
        let v = elliptic_theta(c(0.3, 0.2), 0.0, &ctl()).unwrap().value;
        assert!((v - (c(1.0, 0.0) - c(0.3, 0.2))).norm() < 1e-15);
    }

    // Jacobi triple product: theta(x; p) (p; p)_inf = sum_{n in Z} (-1)^n
    // p^(n(n-1)/2) x^n. Entirely different arithmetic from the product form.
    #[test]
    fn theta_matches_triple_product_oracle() {
        let (x, p) = (0.5f64, 0.1f64);
        let mut series = 0.0f64;
        for n in -40i32..=40 {
            let e = (n * (n - 1)) / 2;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            series += sign * p.powi(e) * x.powi(n);
        }
        let theta = elliptic_theta(c(x, 0.0), p, &ctl()).unwrap().value;
        let pp = q_pochhammer(c(p, 0.0), p, None, &ctl()).unwrap().value;
        let lhs = theta * pp;
        assert!(
            (lhs.re - series).abs() < 1e-13 * series.abs(),
            "{} vs {series}",
            lhs.re
        );
    }

    #[test]
    fn theta_inversion_symmetry() {
        let (x, p) = (c(0.4, 0.0), 0.2);
        let a = elliptic_theta(x, p, &ctl()).unwrap().value;
        let b = elliptic_theta(c(p, 0.0) / x, p, &ctl()).unwrap().value;
        assert!((a - b).norm() < 1e-13 * a.norm(), "{a} vs {b}");
    }

    #[test]
    fn theta_rejects_origin() {
        assert!(matches!(
            elliptic_theta(c(0.0, 0.0), 0.3, &ctl()),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn pochhammer_cases() {
        let (a, q, p) = (c(0.5, 0.0), 0.5, 0.1);
        let zero = elliptic_pochhammer(a, q, p, 0, &ctl()).unwrap().value;
        assert_eq!(zero, c(1.0, 0.0));
        let one = elliptic_pochhammer(a, q, p, 1, &ctl()).unwrap().value;
        let th = elliptic_theta(a, p, &ctl()).unwrap().value;
        assert!((one - th).norm() < 1e-15);
        // Reciprocal consistency: (a; q, p)_{-1} (a/q; q, p)_1 = 1, checked
        // where the shared factor theta(a/q; p) is nonzero.
        let a2 = c(0.7, 0.0);
        let inv = elliptic_pochhammer(a2, q, p, -1, &ctl()).unwrap().value;
        let fwd = elliptic_pochhammer(a2 / q, q, p, 1, &ctl()).unwrap().value;
        assert!((inv * fwd - c(1.0, 0.0)).norm() < 1e-13, "{inv} * {fwd}");
        // a = q makes that factor theta(1; p) = 0: both sides are singular
        // and the reciprocal must refuse rather than fabricate a value.
        assert!(matches!(
            elliptic_pochhammer(c(0.5, 0.0), 0.5, 0.1, -1, &ctl()),
            Err(EvalError::DivisionByZero)
        ));
    }

    #[test]
    fn modular_e_at_zero_argument() {
        let v = modular_series(
            ModularKind::E,
            &[c(0.2, 0.0)],
            &[c(0.4, 0.0)],
            0.3,
            0.2,
            &CoefficientRule::Gaussian,
            c(0.0, 0.0),
            &ctl(),
        )
        .unwrap()
        .value;
        assert!((v - c(1.0, 0.0)).norm() < 1e-15, "{v}");
    }

    // Direct truncated sum with its own theta products, summed at two
    // depths to show the truncation has settled.
    fn e_series_oracle(q: f64, p: f64, z: f64, terms: i32) -> f64 {
        let theta = |x: f64| -> f64 {
            let mut acc = 1.0;
            let mut pk = 1.0;
            for _ in 0..200 {
                acc *= (1.0 - x * pk) * (1.0 - (p / x) * pk);
                pk *= p;
            }
            acc
        };
        let mut sum = 0.0;
        let mut poch = 1.0; // (q; q, p)_n
        for n in 0..terms {
            if n > 0 {
                poch *= theta(q.powi(n));
            }
            sum += q.powi(n * n) / poch * z.powi(n);
        }
        sum
    }

    #[test]
    fn modular_e_gaussian_default() {
        let (q, p) = (0.3, 0.2);
        let shallow = e_series_oracle(q, p, 1.0, 12);
        let deep = e_series_oracle(q, p, 1.0, 24);
        assert!((shallow - deep).abs() < 1e-12, "oracle not settled");
        let v = modular_series(
            ModularKind::E,
            &[],
            &[],
            q,
            p,
            &CoefficientRule::Gaussian,
            c(1.0, 0.0),
            &ctl(),
        )
        .unwrap()
        .value;
        assert!((v.re - deep).abs() < 1e-12, "{} vs {deep}", v.re);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn modular_g_reduces_to_lattice_sum() {
        // r = s = 0 G series is sum_{n in Z} q^(n^2) z^n; at z = 1 that is
        // the classical theta value checked against the trigonometric form.
        let q = 0.3;
        let g = modular_series(
            ModularKind::G,
            &[],
            &[],
            q,
            0.2,
            &CoefficientRule::Gaussian,
            c(1.0, 0.0),
            &ctl(),
        )
        .unwrap()
        .value;
        let t = crate::specialfn::theta::theta3(c(0.0, 0.0), q, &ctl())
            .unwrap()
            .value;
        assert!((g - t).norm() < 1e-13 * t.norm(), "{g} vs {t}");
        // Asymmetric argument: direct bilateral sum.
        let z = 0.7f64;
        let mut oracle = 0.0f64;
        for n in -30i32..=30 {
            oracle += q.powi(n * n) * z.powi(n);
        }
        let g2 = modular_series(
            ModularKind::G,
            &[],
            &[],
            q,
            0.2,
            &CoefficientRule::Gaussian,
            c(z, 0.0),
            &ctl(),
        )
        .unwrap()
        .value;
        assert!((g2.re - oracle).abs() < 1e-12 * oracle, "{} vs {oracle}", g2.re);
    }

    #[test]
    fn table_rule_is_exact_finite_sum() {
        // E with r = s = 0 and table [1, 1/2, 1/4]:
        // 1 + z/(2 theta(q)) + z^2/(4 theta(q) theta(q^2)).
        let (q, p, z) = (0.4, 0.15, 0.9);
        let th = |x: f64| {
            elliptic_theta(c(x, 0.0), p, &ctl()).unwrap().value.re
        };
        let expect = 1.0 + 0.5 * z / th(q) + 0.25 * z * z / (th(q) * th(q * q));
        let table = CoefficientRule::Table {
            values: vec![1.0, 0.5, 0.25],
        };
        let r = modular_series(
            ModularKind::E,
            &[],
            &[],
            q,
            p,
            &table,
            c(z, 0.0),
            &ctl(),
        )
        .unwrap();
        assert!((r.value.re - expect).abs() < 1e-13, "{} vs {expect}", r.value.re);
        assert_eq!(r.err_estimate, 0.0);
    }

    #[test]
    fn g_needs_nonzero_argument() {
        assert!(matches!(
            modular_series(
                ModularKind::G,
                &[],
                &[],
                0.3,
                0.2,
                &CoefficientRule::Gaussian,
                c(0.0, 0.0),
                &ctl()
            ),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn coefficient_rule_serde_round_trip() {
        let g = CoefficientRule::Gaussian;
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"rule":"gaussian"}"#);
        assert_eq!(serde_json::from_str::<CoefficientRule>(&s).unwrap(), g);
        let t = CoefficientRule::Table {
            values: vec![1.0, 0.25],
        };
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"rule":"table","values":[1.0,0.25]}"#);
        assert_eq!(serde_json::from_str::<CoefficientRule>(&s).unwrap(), t);
    }
}
