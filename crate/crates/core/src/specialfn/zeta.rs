//! Riemann zeta, Dirichlet eta, Hurwitz zeta and shifted polygamma sums.
//!
//! zeta runs two routes. The default converts the accelerated alternating
//! (eta) series with Borwein's d-weights: terms (-1)^k (d_n - d_k) / (k+1)^s,
//! error below 3 (3+sqrt 8)^-n (1+2|t|) e^(pi |t| / 2). Near the zeros of
//! 1 - 2^(1-s) (s = 1 + 2 pi i k / ln 2) that quotient is ill-conditioned, so
//! for |1 - 2^(1-s)| < 1e-4 evaluation switches to Euler-Maclaurin on the
//! Dirichlet series, which is also the Hurwitz backbone.

use crate::control::{EvalResult, SeriesControl};
use crate::error::{ensure_finite, EvalError};
use crate::specialfn::gamma::rising_factorial;
use crate::specialfn::real_pow;
use num_complex::Complex64;
use std::f64::consts::LN_2;

pub(crate) const EULER_GAMMA: f64 = 0.5772156649015328606;
pub(crate) const STIELTJES_1: f64 = -0.07281584548367672486;
pub(crate) const STIELTJES_2: f64 = -0.009690363192872318484;
pub(crate) const STIELTJES_3: f64 = 0.002053834420303345866;

// B_{2j} / (2j)! for j = 1..6 (through B_12).
const EM_COEF: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
];
const EM_NEXT_COEF: f64 = 1.3382369694e-11; // B_14 / 14!

fn one(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// exp(x) - 1 without cancellation for small |x|.
fn expm1_c(x: Complex64) -> Complex64 {
    if x.norm() < 0.5 {
        let mut term = x;
        let mut acc = x;
        for k in 2..40 {
            term *= x / k as f64;
            acc += term;
            if term.norm() < 1e-18 * acc.norm().max(1e-280) {
                break;
            }
        }
        acc
    } else {
        x.exp() - 1.0
    }
}

/// (exp(-u l1) - exp(-u l2)) / u, stable down to u = 0 where it equals l2 - l1.
fn diff_exp_over_u(u: Complex64, l1: f64, l2: f64) -> Complex64 {
    let scale = l1.abs().max(l2.abs());
    if u.norm() * scale < 0.35 {
        // sum_{k>=1} (-1)^k u^(k-1) (l1^k - l2^k) / k!
        let mut acc = one(l2 - l1);
        let mut upow = one(1.0);
        let mut p1 = l1;
        let mut p2 = l2;
        let mut kfac = 1.0f64;
        for k in 2..40 {
            upow *= u;
            p1 *= l1;
            p2 *= l2;
            kfac *= k as f64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = upow * (sign * (p1 - p2) / kfac);
            acc += term;
            if term.norm() < 1e-18 * acc.norm().max(1e-280) {
                break;
            }
        }
        acc
    } else {
        ((-u * l1).exp() - (-u * l2).exp()) / u
    }
}

/// Euler-Maclaurin pieces shared by every Hurwitz-type evaluation: explicit
/// terms to N-1, then pole, half and Bernoulli corrections at T = N + a.
struct EmPlan {
    n_explicit: usize,
    t: f64,
}

fn em_plan(s: Complex64, a: f64) -> EmPlan {
    let target = (1.9 * s.norm()).max(12.0);
    let n_explicit = if target > a {
        (target - a).ceil() as usize
    } else {
        0
    };
    EmPlan {
        n_explicit,
        t: n_explicit as f64 + a,
    }
}

fn em_explicit(s: Complex64, a: f64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += real_pow(k as f64 + a, -s);
    }
    acc
}

fn em_corrections(s: Complex64, t: f64) -> Complex64 {
    let mut acc = real_pow(t, -s) * 0.5;
    for (j, &coef) in EM_COEF.iter().enumerate() {
        let m = (2 * j + 1) as u32; // rising factorial length 2j - 1 for j >= 1
        acc += coef * rising_factorial(s, m) * real_pow(t, -s - m as f64);
    }
    acc
}

fn em_error(s: Complex64, t: f64) -> f64 {
    EM_NEXT_COEF * rising_factorial(s, 13).norm() * t.powf(-s.re - 13.0)
}

/// Hurwitz zeta by Euler-Maclaurin; caller has excluded the pole.
fn hurwitz_em(s: Complex64, a: f64) -> (Complex64, f64, usize) {
    let plan = em_plan(s, a);
    let t = plan.t;
    let value = em_explicit(s, a, plan.n_explicit)
        + real_pow(t, one(1.0) - s) / (s - 1.0)
        + em_corrections(s, t);
    (value, em_error(s, t), plan.n_explicit + EM_COEF.len())
}

/// Number of Borwein terms needed for absolute error `target` at height |t|.
fn borwein_terms(t_abs: f64, target: f64) -> usize {
    let ln_c = (3.0 + 8.0f64.sqrt()).ln(); // 1.7627...
    let need = (0.5 * std::f64::consts::PI * t_abs
        + (1.0 + 2.0 * t_abs).ln()
        + (3.0 / target).ln())
        / ln_c;
    (need.ceil() as usize).max(24)
}

/// Accelerated eta sum: (1/d_n) sum_{k<n} (-1)^k (d_n - d_k) (k+1)^-s.
fn borwein_eta(s: Complex64, n: usize) -> Complex64 {
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut c = 1.0f64; // n * (n+i-1)! 4^i / ((n-i)! (2i)!) at i = 0
    let mut acc = 1.0f64;
    d.push(acc);
    for i in 1..=n {
        let i_f = i as f64;
        c *= 4.0 * (nf + i_f - 1.0) * (nf - i_f + 1.0) / (2.0 * i_f * (2.0 * i_f - 1.0));
        acc += c;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (dn - d[k]) * real_pow(k as f64 + 1.0, -s);
    }
    sum / dn
}

fn check_zeta_domain(s: Complex64) -> Result<(), EvalError> {
    if s.re <= 0.0 {
        return Err(EvalError::Domain(format!(
            "zeta implemented for Re s > 0, got {s}"
        )));
    }
    if (s - 1.0).norm() < 1e-12 {
        return Err(EvalError::Pole { at: one(1.0) });
    }
    Ok(())
}

/// Dirichlet eta(s) = (1 - 2^(1-s)) zeta(s) for Re s > 0; regular at s = 1.
pub fn dirichlet_eta(s: Complex64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    if s.re <= 0.0 {
        return Err(EvalError::Domain(format!(
            "eta implemented for Re s > 0, got {s}"
        )));
    }
    let target = (0.1 * ctl.rel_eps).max(1e-17);
    let n = borwein_terms(s.im.abs(), target);
    if n > ctl.max_terms {
        return Err(EvalError::NonConvergence { terms: ctl.max_terms });
    }
    let value = ensure_finite(borwein_eta(s, n))?;
    Ok(EvalResult::new(value, target + 1e-16 * value.norm(), n))
}

pub(crate) fn zeta_eta_route(s: Complex64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    let eta = dirichlet_eta(s, ctl)?;
    let w = -expm1_c((one(1.0) - s) * LN_2);
    let value = ensure_finite(eta.value / w)?;
    Ok(EvalResult::new(
        value,
        eta.err_estimate / w.norm(),
        eta.terms_used,
    ))
}

pub(crate) fn zeta_em_route(s: Complex64) -> Result<EvalResult, EvalError> {
    let (value, err, terms) = hurwitz_em(s, 1.0);
    Ok(EvalResult::new(ensure_finite(value)?, err, terms))
}

/// Riemann zeta on Re s > 0, s != 1.
pub fn zeta(s: Complex64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    check_zeta_domain(s)?;
    let w = -expm1_c((one(1.0) - s) * LN_2);
    if w.norm() < 1e-4 {
        zeta_em_route(s)
    } else {
        zeta_eta_route(s, ctl)
    }
}

/// Hurwitz zeta(s, a) on Re s > 0, a > 0, s != 1.
pub fn hurwitz_zeta(s: Complex64, a: f64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    if !(a > 0.0) {
        return Err(EvalError::Domain(format!(
            "hurwitz_zeta requires a > 0, got a = {a}"
        )));
    }
    check_zeta_domain(s)?;
    let (value, err, terms) = hurwitz_em(s, a);
    Ok(EvalResult::new(ensure_finite(value)?, err, terms))
}

/// (1+a)^(1-s) / (s-1) - zeta(s, a), the combination whose s = 1 singularity
/// is removable. Evaluated with the pole folded into a stable difference of
/// exponentials, so no accuracy is lost near s = 1.
pub(crate) fn hurwitz_g(s: Complex64, a: f64) -> Result<Complex64, EvalError> {
    debug_assert!(a > 0.0 && s.re > 0.0);
    let plan = em_plan(s, a);
    let t = plan.t;
    let u = s - 1.0;
    let value = diff_exp_over_u(u, (1.0 + a).ln(), t.ln())
        - em_explicit(s, a, plan.n_explicit)
        - em_corrections(s, t);
    ensure_finite(value)
}

/// zeta(s, a1) - zeta(s, a2) with the shared pole cancelled analytically;
/// entire in s on Re s > 0, including s = 1.
pub(crate) fn hurwitz_diff(s: Complex64, a1: f64, a2: f64) -> Result<Complex64, EvalError> {
    debug_assert!(a1 > 0.0 && a2 > 0.0 && s.re > 0.0);
    let target = (1.9 * s.norm()).max(12.0);
    let amin = a1.min(a2);
    let n = if target > amin {
        (target - amin).ceil() as usize
    } else {
        0
    };
    let (t1, t2) = (n as f64 + a1, n as f64 + a2);
    let mut value = Complex64::new(0.0, 0.0);
    for k in 0..n {
        value += real_pow(k as f64 + a1, -s) - real_pow(k as f64 + a2, -s);
    }
    value += diff_exp_over_u(s - 1.0, t1.ln(), t2.ln());
    value += em_corrections(s, t1) - em_corrections(s, t2);
    ensure_finite(value)
}

/// (-1)^(p-1) psi^(p)(1 + x) = p! sum_{n>=1} (x+n)^(-p-1) for integer p >= 1
/// and x >= 0: fifty explicit terms, then the Euler-Maclaurin tail.
pub fn polygamma_shift(p: u32, x: f64, ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    ctl.assert_valid();
    if p < 1 {
        return Err(EvalError::Domain("polygamma_shift requires p >= 1".into()));
    }
    if !(x >= 0.0) {
        return Err(EvalError::Domain(format!(
            "polygamma_shift requires x >= 0, got {x}"
        )));
    }
    let s = one(p as f64 + 1.0);
    let explicit: usize = 50;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=explicit {
        acc += real_pow(x + n as f64, -s);
    }
    let (tail, tail_err, _) = hurwitz_em(s, x + explicit as f64 + 1.0);
    let p_fact: f64 = (1..=p).fold(1.0, |f, k| f * k as f64);
    let value = ensure_finite(p_fact * (acc + tail))?;
    Ok(EvalResult::new(
        value,
        p_fact * tail_err + 1e-15 * value.norm(),
        explicit + 6,
    ))
}
