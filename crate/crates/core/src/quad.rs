//! Double-exponential quadrature.
//!
//! Three maps of the trapezoid rule, each turning the integrand into one
//! whose samples decay double-exponentially in the trapezoid variable t:
//!
//! * tanh-sinh for a finite interval (a, b):  x = a + (b-a)/2 (1 + tanh(pi/2 sinh t)),
//!   tolerant of integrable endpoint singularities;
//! * exp-sinh for (0, inf):                   x = exp(pi/2 sinh t),
//!   for integrands with a power singularity at 0 and fast decay at infinity;
//! * sinh-sinh for the whole line:            x = sinh(pi/2 sinh t).
//!
//! The step is halved per level until two consecutive levels agree to the
//! target. Fixed-order Gauss-Legendre panels are also provided for smooth
//! sub-interval work where the transform would be wasted effort.

use crate::error::EvalError;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug)]
pub struct QuadControl {
    /// Relative agreement demanded between consecutive refinement levels.
    pub target_eps: f64,
    /// Maximum number of step halvings.
    pub max_levels: usize,
}

impl Default for QuadControl {
    fn default() -> Self {
        Self {
            target_eps: 1e-11,
            max_levels: 12,
        }
    }
}

impl QuadControl {
    pub fn with_target(target_eps: f64) -> Self {
        Self {
            target_eps,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    /// Difference between the last two refinement levels (absolute).
    pub err_estimate: f64,
    pub levels: usize,
    pub evals: usize,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Shared level loop: `row` sums one trapezoid row at step `h`.
fn refine<R>(ctl: &QuadControl, mut row: R) -> Result<QuadResult, EvalError>
where
    R: FnMut(f64, &mut usize) -> Complex64,
{
    let mut evals = 0usize;
    let mut prev = ZERO;
    let mut last_delta = f64::INFINITY;
    for level in 0..=ctl.max_levels {
        let h = 0.5f64.powi(level as i32) * 1.0;
        let sum = row(h, &mut evals);
        let value = sum * h;
        if level > 0 {
            let delta = (value - prev).norm();
            last_delta = delta;
            if delta <= (ctl.target_eps * value.norm()).max(1e-305) {
                return Ok(QuadResult {
                    value,
                    err_estimate: delta,
                    levels: level,
                    evals,
                });
            }
        }
        prev = value;
    }
    Err(EvalError::QuadratureNoConvergence {
        levels: ctl.max_levels,
        last_delta,
    })
}

/// Sum contributions at t = k h for k = 0, +-1, +-2, ... with tail cutoff.
fn sum_row<C>(h: f64, t_max: f64, evals: &mut usize, mut contrib: C) -> Complex64
where
    C: FnMut(f64) -> Complex64,
{
    let mut sum = ZERO;
    let mut sum_abs = 0.0f64;
    for dir in [1.0f64, -1.0] {
        let mut quiet = 0u32;
        let mut k = if dir > 0.0 { 0i64 } else { -1 };
        loop {
            let t = k as f64 * h;
            if t.abs() > t_max {
                break;
            }
            let c = contrib(t);
            *evals += 1;
            // Non-finite nodes sit beyond the representable tail; skip them.
            let c = if c.re.is_finite() && c.im.is_finite() {
                c
            } else {
                ZERO
            };
            let cn = c.norm();
            sum += c;
            sum_abs += cn;
            if cn <= 1e-18 * sum_abs.max(1e-280) {
                quiet += 1;
                if quiet >= 3 && k.unsigned_abs() >= 4 {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += dir as i64;
        }
    }
    sum
}

/// Integrate f over (a, b). The callback receives `(x, x - a, b - x)` with the
/// endpoint distances computed free of cancellation, so integrands singular at
/// either endpoint stay accurate.
pub fn tanh_sinh<F>(
    f: F,
    a: f64,
    b: f64,
    ctl: &QuadControl,
) -> Result<QuadResult, EvalError>
where
    F: Fn(f64, f64, f64) -> Complex64,
{
    assert!(b > a && a.is_finite() && b.is_finite());
    let len = b - a;
    refine(ctl, |h, evals| {
        sum_row(h, 6.55, evals, |t| {
            let w = FRAC_PI_2 * t.sinh();
            // sigma(+2w) and sigma(-2w): distances to the endpoints in units of len.
            let sp = 1.0 / (1.0 + (-2.0 * w).exp());
            let sm = 1.0 / (1.0 + (2.0 * w).exp());
            let jac = 2.0 * len * FRAC_PI_2 * t.cosh() * sp * sm;
            if jac == 0.0 || !jac.is_finite() {
                return ZERO;
            }
            let x = a + len * sp;
            f(x, len * sp, len * sm) * jac
        })
    })
}

/// Integrate f over (0, inf). The callback must return the moment `x * f(x)`;
/// supplying the product lets integrands with a power singularity at the
/// origin be computed in log form without overflow.
pub fn exp_sinh<F>(moment: F, ctl: &QuadControl) -> Result<QuadResult, EvalError>
where
    F: Fn(f64) -> Complex64,
{
    refine(ctl, |h, evals| {
        sum_row(h, 6.79, evals, |t| {
            let u = FRAC_PI_2 * t.sinh();
            if u.abs() > 700.0 {
                return ZERO;
            }
            let x = u.exp();
            moment(x) * (FRAC_PI_2 * t.cosh())
        })
    })
}

/// Integrate f over the whole real line.
pub fn sinh_sinh<F>(f: F, ctl: &QuadControl) -> Result<QuadResult, EvalError>
where
    F: Fn(f64) -> Complex64,
{
    refine(ctl, |h, evals| {
        sum_row(h, 6.78, evals, |t| {
            let u = FRAC_PI_2 * t.sinh();
            if u.abs() > 690.0 {
                return ZERO;
            }
            let x = u.sinh();
            f(x) * (FRAC_PI_2 * t.cosh() * u.cosh())
        })
    })
}

/// Nodes and weights of n-point Gauss-Legendre on [0, 1].
fn gauss_legendre_01(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Newton iteration from the Chebyshev estimate of the i-th root of P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0f64;
            let mut p1 = x;
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = ((1.0 - x) / 2.0, w / 2.0);
        out[n - 1 - i] = ((1.0 + x) / 2.0, w / 2.0);
    }
    out
}

static GL16: OnceLock<Vec<(f64, f64)>> = OnceLock::new();

/// 16-point Gauss-Legendre panel over [a, b] for smooth integrands.
pub fn gl16<F>(f: F, a: f64, b: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let nodes = GL16.get_or_init(|| gauss_legendre_01(16));
    let len = b - a;
    let mut sum = ZERO;
    for &(x, w) in nodes {
        sum += f(a + len * x) * w;
    }
    sum * len
}
