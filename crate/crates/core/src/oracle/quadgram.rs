//! Gram matrices against nonnegative weights on an interval.
//!
//! Nine kernel families are integral transforms of a fixed nonnegative
//! density w: the (j, k) entry equals the inner product of two explicit
//! functions in L^2(w dx). Recomputing the entries by quadrature against the
//! density is therefore an independent reconstruction of the whole matrix:
//! the closed-form route and this route share no series acceleration, only
//! elementary operations, and the comparison exercises each family's
//! defining identity rather than the evaluator's own code path.

use super::OracleError;
use crate::kernels::FactorSpec;
use crate::psdlinalg::HermitianMatrix;
use crate::quad::{exp_sinh, gl16, tanh_sinh, QuadControl};
use crate::specialfn::{hurwitz_g, polygamma_shift, q_pochhammer, real_pow};
use crate::{Complex64, EvalError, SeriesControl};
use std::f64::consts::PI;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A named nonnegative density on a line segment, with whatever fixed
/// parameters it carries. The per-index functions paired with it come
/// separately (see [`gram_quadrature`]).
#[derive(Clone, Debug, PartialEq)]
pub enum LineWeight {
    /// e^{-x} / x on (0, inf).
    Gamma,
    /// 1 / (x (1 - x)) on (0, 1).
    Beta,
    /// {u} / u on (1, inf), {u} the fractional part.
    ZetaTail,
    /// 1 / (u (e^u + 1)) on (0, inf).
    Eta,
    /// e^u / (e^u + 1)^2 on (0, inf).
    EtaDerivative,
    /// (-1)^{p-1} psi^{(p)}(1 + x) / pi on (0, inf).
    Polygamma { p: u32 },
    /// {x} on (1, inf), paired with powers of (x + a).
    HurwitzTail { a: f64 },
    /// 1 / (2 x e^{a x} cosh x) on (0, inf).
    Cosh { a: f64 },
    /// 1 / (x e^{a x} (1 - z e^{-x})) on (0, inf); z < 1 keeps it positive.
    Lerch { z: f64, a: f64 },
    /// e^{-pi x} |Gamma(lambda + i x)|^2 on the whole line.
    MellinGamma { lambda: f64 },
    /// The circular density of the q-beta integral on (0, pi), normalized
    /// by (1 - q)^5 (q; q)_inf^6 / (2 pi).
    AskeyWilson { q: f64, alphas: [f64; 4] },
}

impl LineWeight {
    /// Wire name of the density family.
    pub fn tag(&self) -> &'static str {
        match self {
            LineWeight::Gamma => "GAMMA_WEIGHT",
            LineWeight::Beta => "BETA_WEIGHT",
            LineWeight::ZetaTail => "ZETA_TAIL_WEIGHT",
            LineWeight::Eta | LineWeight::EtaDerivative => "ETA_WEIGHT",
            LineWeight::Polygamma { .. } => "POLYGAMMA_WEIGHT",
            LineWeight::HurwitzTail { .. } => "HURWITZ_TAIL_WEIGHT",
            LineWeight::Cosh { .. } => "COSH_WEIGHT",
            LineWeight::Lerch { .. } => "LERCH_WEIGHT",
            LineWeight::MellinGamma { .. } => "MP_WEIGHT",
            LineWeight::AskeyWilson { .. } => "AW_WEIGHT",
        }
    }

    /// Open interval carrying the density.
    pub fn support(&self) -> (f64, f64) {
        match self {
            LineWeight::Beta => (0.0, 1.0),
            LineWeight::ZetaTail | LineWeight::HurwitzTail { .. } => (1.0, f64::INFINITY),
            LineWeight::MellinGamma { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            LineWeight::AskeyWilson { .. } => (0.0, PI),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// Pointwise density value, written in forms that stay finite over the
    /// whole support (no bare e^x for large x). Used both by the quadrature
    /// cores and by nonnegativity spot checks.
    pub fn density(&self, x: f64) -> f64 {
        match *self {
            LineWeight::Gamma => (-x).exp() / x,
            LineWeight::Beta => 1.0 / (x * (1.0 - x)),
            LineWeight::ZetaTail => x.fract() / x,
            LineWeight::Eta => {
                let e = (-x).exp();
                e / (x * (1.0 + e))
            }
            LineWeight::EtaDerivative => {
                let e = (-x).exp();
                e / ((1.0 + e) * (1.0 + e))
            }
            LineWeight::Polygamma { p } => {
                // Series plus tail; cannot fail for x >= 0, and a zero
                // beyond double range is the correct limit value.
                let ctl = SeriesControl::default();
                polygamma_shift(p, x, &ctl)
                    .map(|r| r.value.re)
                    .unwrap_or(0.0)
                    / PI
            }
            LineWeight::HurwitzTail { .. } => x.fract(),
            LineWeight::Cosh { a } => {
                let e = (-2.0 * x).exp();
                (-(a + 1.0) * x).exp() / (x * (1.0 + e))
            }
            LineWeight::Lerch { z, a } => {
                let e = (-x).exp();
                1.0 / (x * (a * x).exp() * (1.0 - z * e))
            }
            LineWeight::MellinGamma { lambda } => {
                match crate::specialfn::log_gamma(Complex64::new(lambda, x)) {
                    Ok(lg) => (2.0 * lg.re - PI * x).exp(),
                    Err(_) => 0.0,
                }
            }
            LineWeight::AskeyWilson { q, alphas } => {
                let ctl = SeriesControl::default();
                let poch = |z: Complex64| -> f64 {
                    q_pochhammer(z, q, None, &ctl)
                        .map(|r| r.value.norm_sqr())
                        .unwrap_or(0.0)
                };
                let base = match q_pochhammer(Complex64::new(q, 0.0), q, None, &ctl) {
                    Ok(r) => r.value.re,
                    Err(_) => return 0.0,
                };
                let point = Complex64::from_polar(1.0, x);
                let num = poch(point * point);
                let mut den = 2.0 * PI;
                for &alpha in &alphas {
                    den *= poch(point * q.powf(alpha));
                }
                if den == 0.0 {
                    return 0.0;
                }
                (1.0 - q).powi(5) * base.powi(6) * num / den
            }
        }
    }
}

/// A density together with the quadrature policy used against it.
#[derive(Clone, Debug)]
pub struct WeightedLine {
    pub weight: LineWeight,
    pub quad: QuadControl,
}

impl WeightedLine {
    /// The density a factor's kernel matrix is the Gram matrix of, when the
    /// family has one. Series-defined families return None.
    pub fn for_factor(factor: &FactorSpec, quad: QuadControl) -> Option<Self> {
        let weight = match factor {
            FactorSpec::ZetaTail { .. } => LineWeight::ZetaTail,
            FactorSpec::Gamma { .. } => LineWeight::Gamma,
            FactorSpec::Beta { .. } => LineWeight::Beta,
            FactorSpec::EtaGammaZeta { .. } => LineWeight::Eta,
            FactorSpec::EtaGamma1Zeta { .. } => LineWeight::EtaDerivative,
            FactorSpec::PolygammaZeta { shared, .. } => LineWeight::Polygamma { p: shared.p },
            FactorSpec::HurwitzTail { shared, .. } => LineWeight::HurwitzTail { a: shared.a },
            FactorSpec::HurwitzDiff { shared, .. } => LineWeight::Cosh { a: shared.a },
            FactorSpec::Lerch { shared, .. } => LineWeight::Lerch {
                z: shared.z,
                a: shared.a,
            },
            _ => return None,
        };
        Some(Self { weight, quad })
    }
}

/// Integral of {x} (x + a)^{-s-1} over (1, inf) for Re s > 0.
///
/// Head: unit panels [m, m+1] so the sawtooth is smooth inside each, with
/// fixed-order panels refined by splitting until two levels agree. Tail from
/// x = 49 onward in closed form,
///   ((N + a)^{1-s} / (s - 1) - zeta(s, N + a + 1)) / s   at N = 49,
/// expressed through the pole-cancelled combination so s near 1 loses
/// nothing. The closed form follows from summing the panel integrals exactly
/// and continues analytically to all Re s > 0.
fn sawtooth_integral(s: Complex64, a: f64, quad: &QuadControl) -> Result<Complex64, EvalError> {
    const UNITS: usize = 48;
    let head = |split: usize| -> Complex64 {
        let mut acc = ZERO;
        let inv = 1.0 / split as f64;
        for m in 1..=UNITS {
            let left = m as f64;
            for i in 0..split {
                let lo = left + i as f64 * inv;
                let hi = left + (i + 1) as f64 * inv;
                acc += gl16(|x| (x - left) * real_pow(x + a, -(s + 1.0)), lo, hi);
            }
        }
        acc
    };
    let mut prev = head(1);
    let mut value = prev;
    let mut settled = false;
    for split in [2usize, 4] {
        value = head(split);
        if (value - prev).norm() <= quad.target_eps * (1.0 + value.norm()) {
            settled = true;
            break;
        }
        prev = value;
    }
    if !settled {
        return Err(EvalError::QuadratureNoConvergence {
            levels: 3,
            last_delta: (value - prev).norm(),
        });
    }
    let n = (UNITS + 1) as f64;
    let tail =
        (hurwitz_g(s, n + a - 1.0)? + real_pow(n + a - 1.0, -s) + real_pow(n + a, -s)) / s;
    Ok(value + tail)
}

/// One Gram entry: the integral of f_j conj(f_k) against the density. The
/// combined exponent s = s_j + conj(s_k) is formed first; every supported
/// pairing reduces to a single real-base power times the density.
fn quad_entry(line: &WeightedLine, factor: &FactorSpec, j: usize, k: usize) -> Result<Complex64, EvalError> {
    let quad = &line.quad;
    match factor {
        FactorSpec::ZetaTail { points, .. } => {
            let s = points[j] + points[k].conj();
            sawtooth_integral(s, 0.0, quad)
        }
        FactorSpec::Gamma { points, .. } => {
            let z = points[j] + points[k].conj();
            Ok(exp_sinh(|x| real_pow(x, z) * (-x).exp(), quad)?.value)
        }
        FactorSpec::Beta { points, .. } => {
            let p = points[j].0 + points[k].0.conj();
            let q = points[j].1 + points[k].1.conj();
            let r = tanh_sinh(
                |_x, da, db| real_pow(da, p - 1.0) * real_pow(db, q - 1.0),
                0.0,
                1.0,
                quad,
            )?;
            Ok(r.value)
        }
        FactorSpec::EtaGammaZeta { points, .. } => {
            let s = points[j] + points[k].conj();
            let m = |u: f64| {
                let e = (-u).exp();
                real_pow(u, s) * (e / (1.0 + e))
            };
            Ok(exp_sinh(m, quad)?.value)
        }
        FactorSpec::EtaGamma1Zeta { points, .. } => {
            let s = points[j] + points[k].conj();
            let m = |u: f64| {
                let e = (-u).exp();
                real_pow(u, s + 1.0) * (e / ((1.0 + e) * (1.0 + e)))
            };
            Ok(exp_sinh(m, quad)?.value)
        }
        FactorSpec::PolygammaZeta { shared, points } => {
            let s = points[j] + points[k].conj();
            let p = shared.p;
            let ctl = SeriesControl::default();
            // The shifted polygamma series cannot fail for nonnegative
            // arguments; a zero beyond double range is its true limit.
            let w = |x: f64| -> f64 {
                polygamma_shift(p, x, &ctl)
                    .map(|r| r.value.re)
                    .unwrap_or(0.0)
            };
            let inner = tanh_sinh(|x, da, _| real_pow(da, -s) * w(x), 0.0, 1.0, quad)?;
            // x -> 1/y folds (1, inf) onto (0, 1); the image integrand
            // y^{s-2} w(1/y) vanishes like y^{p - 1 + Re s} at zero.
            let outer = tanh_sinh(
                |_y, da, _| real_pow(da, s - 2.0) * w(1.0 / da),
                0.0,
                1.0,
                quad,
            )?;
            Ok((inner.value + outer.value) / PI)
        }
        FactorSpec::HurwitzTail { shared, points } => {
            let s = points[j] + points[k].conj();
            sawtooth_integral(s, shared.a, quad)
        }
        FactorSpec::HurwitzDiff { shared, points } => {
            let s = points[j] + points[k].conj();
            let a = shared.a;
            let m = |t: f64| {
                let e = (-2.0 * t).exp();
                real_pow(4.0 * t, s) * ((-(a + 1.0) * t).exp() / (1.0 + e))
            };
            Ok(exp_sinh(m, quad)?.value)
        }
        FactorSpec::Lerch { shared, points } => {
            let s = points[j] + points[k].conj();
            let (z, a) = (shared.z, shared.a);
            let m = |x: f64| {
                let e = (-x).exp();
                real_pow(x, s) * ((-a * x).exp() / (1.0 - z * e))
            };
            Ok(exp_sinh(m, quad)?.value)
        }
        _ => Err(EvalError::Domain(format!(
            "no line density backs the {} family",
            factor.family()
        ))),
    }
}

/// Gram matrix of a factor's point functions against a named density:
/// G[j][k] is the integral of f_j conj(f_k) w over the support. The factor
/// must be one the density actually represents; a mismatched pairing is
/// rejected rather than reinterpreted.
pub fn gram_quadrature(
    line: &WeightedLine,
    factor: &FactorSpec,
) -> Result<HermitianMatrix, OracleError> {
    match WeightedLine::for_factor(factor, line.quad) {
        Some(expected) if expected.weight == line.weight => {}
        Some(expected) => {
            return Err(OracleError::WeightMismatch {
                expected: expected.weight.tag(),
                got: line.weight.tag(),
            })
        }
        None => return Err(OracleError::Unsupported(factor.family())),
    }
    let n = factor.dim();
    if n == 0 {
        return Err(OracleError::EmptyExponents);
    }
    let mut data = vec![ZERO; n * n];
    for j in 0..n {
        for k in j..n {
            data[j * n + k] = quad_entry(line, factor, j, k)?;
        }
    }
    Ok(HermitianMatrix::from_exact(n, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{kernel_value, HurwitzShared, NoShared};
    use crate::specialfn::beta;

    fn quad() -> QuadControl {
        QuadControl::default()
    }

    fn line_for(f: &FactorSpec) -> WeightedLine {
        WeightedLine::for_factor(f, quad()).expect("density-backed family")
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gamma_weight_at_half_gives_unit_matrix() {
        let f = FactorSpec::Gamma {
            shared: NoShared {},
            points: vec![re(0.5)],
        };
        let g = gram_quadrature(&line_for(&f), &f).unwrap();
        assert!((g.get(0, 0) - re(1.0)).norm() < 1e-9, "got {}", g.get(0, 0));
    }

    #[test]
    fn zeta_tail_gram_matches_kernel() {
        let f = FactorSpec::ZetaTail {
            shared: NoShared {},
            points: vec![re(1.0), re(1.5)],
        };
        let g = gram_quadrature(&line_for(&f), &f).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                let want = kernel_value(&f, j, k).unwrap();
                let d = (g.get(j, k) - want).norm();
                assert!(d < 1e-7, "entry ({j},{k}) off by {d:.3e}");
            }
        }
    }

    #[test]
    fn beta_weight_reproduces_beta_values() {
        let pts = vec![(re(1.0), re(1.0)), (re(2.0), re(3.0))];
        let f = FactorSpec::Beta {
            shared: NoShared {},
            points: pts.clone(),
        };
        let g = gram_quadrature(&line_for(&f), &f).unwrap();
        let ctl = SeriesControl::default();
        for j in 0..2 {
            for k in 0..2 {
                let p = pts[j].0 + pts[k].0.conj();
                let q = pts[j].1 + pts[k].1.conj();
                let want = beta(p, q, &ctl).unwrap().value;
                let d = (g.get(j, k) - want).norm();
                assert!(d < 1e-8, "entry ({j},{k}) off by {d:.3e}");
            }
        }
    }

    #[test]
    fn sawtooth_route_is_smooth_through_the_pole_point() {
        // Combined exponent exactly 1: both the closed form and the tail
        // pass through the removable singularity of their pole terms.
        let f = FactorSpec::HurwitzTail {
            shared: HurwitzShared { a: 0.7 },
            points: vec![re(0.5)],
        };
        let g = gram_quadrature(&line_for(&f), &f).unwrap();
        let want = kernel_value(&f, 0, 0).unwrap();
        let d = (g.get(0, 0) - want).norm();
        assert!(d < 1e-9, "off by {d:.3e}");
    }

    #[test]
    fn densities_are_nonnegative_on_their_support() {
        let weights = [
            LineWeight::Gamma,
            LineWeight::Beta,
            LineWeight::ZetaTail,
            LineWeight::Eta,
            LineWeight::EtaDerivative,
            LineWeight::Polygamma { p: 2 },
            LineWeight::HurwitzTail { a: 0.4 },
            LineWeight::Cosh { a: 0.9 },
            LineWeight::Lerch { z: -1.4, a: 0.6 },
            LineWeight::MellinGamma { lambda: 0.8 },
            LineWeight::AskeyWilson {
                q: 0.3,
                alphas: [0.5, 0.7, 1.1, 1.3],
            },
        ];
        for w in &weights {
            let (lo, hi) = w.support();
            let lo = lo.max(-40.0);
            let hi = hi.min(40.0);
            for i in 1..120 {
                let x = lo + (hi - lo) * i as f64 / 120.0;
                let d = w.density(x);
                assert!(
                    d.is_finite() && d >= 0.0,
                    "{} density at {x}: {d}",
                    w.tag()
                );
            }
        }
    }

    #[test]
    fn mismatched_pairing_is_rejected() {
        let gamma_f = FactorSpec::Gamma {
            shared: NoShared {},
            points: vec![re(0.5)],
        };
        let beta_f = FactorSpec::Beta {
            shared: NoShared {},
            points: vec![(re(1.0), re(1.0))],
        };
        let line = line_for(&gamma_f);
        let err = gram_quadrature(&line, &beta_f).unwrap_err();
        assert!(matches!(err, OracleError::WeightMismatch { .. }), "{err:?}");
        let sin_f = FactorSpec::SinPower {
            shared: crate::kernels::SinPowerShared { lambda: 1.0 },
            points: vec![0.7],
        };
        let err = gram_quadrature(&line, &sin_f).unwrap_err();
        assert!(matches!(err, OracleError::Unsupported(_)), "{err:?}");
    }
}
