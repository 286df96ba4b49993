//! The functions reachable through `eval`, indexed by name.
//!
//! Every entry takes its arguments as complex numbers; where the underlying
//! evaluator wants a real or integer parameter, the argument must have zero
//! imaginary part (and an integral value), or the call is a domain error.

use num_complex::Complex64;
use sfpsd::specialfn::{
    beta, dirichlet_eta, gamma, gamma_q, hurwitz_zeta, jacobi_dn, lerch_phi, log_gamma,
    polygamma_shift, q_pochhammer, quarter_period, riemann_xi, rising_factorial, theta3, zeta,
};
use sfpsd::{EvalError, EvalResult, SeriesControl};

type EvalFn = fn(&[Complex64], &SeriesControl) -> Result<EvalResult, EvalError>;

pub struct Registered {
    pub name: &'static str,
    pub usage: &'static str,
    pub arity: usize,
    call: EvalFn,
}

impl Registered {
    pub fn eval(&self, args: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
        debug_assert_eq!(args.len(), self.arity);
        (self.call)(args, ctl)
    }
}

pub fn lookup(name: &str) -> Option<&'static Registered> {
    REGISTRY.iter().find(|r| r.name == name)
}

pub fn names() -> Vec<&'static str> {
    REGISTRY.iter().map(|r| r.name).collect()
}

fn real_arg(v: Complex64, what: &str) -> Result<f64, EvalError> {
    if v.im == 0.0 {
        Ok(v.re)
    } else {
        Err(EvalError::Domain(format!(
            "{what} must be real, got imaginary part {}",
            v.im
        )))
    }
}

fn index_arg(v: Complex64, what: &str) -> Result<u32, EvalError> {
    let x = real_arg(v, what)?;
    if x.fract() == 0.0 && (0.0..=u32::MAX as f64).contains(&x) {
        Ok(x as u32)
    } else {
        Err(EvalError::Domain(format!(
            "{what} must be a nonnegative integer, got {x}"
        )))
    }
}

/// Wrap an exactly computed value in the common result carrier.
fn plain(value: Complex64) -> EvalResult {
    EvalResult {
        value,
        err_estimate: 4.0 * f64::EPSILON * value.norm(),
        terms_used: 1,
    }
}

fn call_gamma(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    gamma(a[0], ctl)
}

fn call_log_gamma(a: &[Complex64], _ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    log_gamma(a[0]).map(plain)
}

fn call_beta(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    beta(a[0], a[1], ctl)
}

fn call_rising(a: &[Complex64], _ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    Ok(plain(rising_factorial(a[0], index_arg(a[1], "order n")?)))
}

fn call_zeta(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    zeta(a[0], ctl)
}

fn call_eta(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    dirichlet_eta(a[0], ctl)
}

fn call_hurwitz_zeta(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    hurwitz_zeta(a[0], real_arg(a[1], "shift a")?, ctl)
}

fn call_polygamma_shift(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    polygamma_shift(index_arg(a[0], "order p")?, real_arg(a[1], "argument x")?, ctl)
}

fn call_lerch_phi(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    lerch_phi(a[0], a[1], real_arg(a[2], "shift a")?, ctl)
}

fn call_theta3(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    theta3(a[0], real_arg(a[1], "nome q")?, ctl)
}

fn call_dn(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    jacobi_dn(a[0], real_arg(a[1], "nome q")?, ctl)
}

fn call_quarter_period(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    quarter_period(real_arg(a[0], "nome q")?, ctl).map(|k| plain(Complex64::new(k, 0.0)))
}

fn call_xi(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    riemann_xi(a[0], ctl)
}

fn call_gamma_q(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    gamma_q(real_arg(a[0], "argument x")?, real_arg(a[1], "base q")?, ctl)
}

fn call_qpochhammer(a: &[Complex64], ctl: &SeriesControl) -> Result<EvalResult, EvalError> {
    q_pochhammer(a[0], real_arg(a[1], "base q")?, None, ctl)
}

pub const REGISTRY: &[Registered] = &[
    Registered { name: "gamma", usage: "gamma z", arity: 1, call: call_gamma },
    Registered { name: "log_gamma", usage: "log_gamma z", arity: 1, call: call_log_gamma },
    Registered { name: "beta", usage: "beta p q", arity: 2, call: call_beta },
    Registered { name: "rising", usage: "rising a n", arity: 2, call: call_rising },
    Registered { name: "zeta", usage: "zeta s", arity: 1, call: call_zeta },
    Registered { name: "eta", usage: "eta s", arity: 1, call: call_eta },
    Registered { name: "hurwitz_zeta", usage: "hurwitz_zeta s a", arity: 2, call: call_hurwitz_zeta },
    Registered { name: "polygamma_shift", usage: "polygamma_shift p x", arity: 2, call: call_polygamma_shift },
    Registered { name: "lerch_phi", usage: "lerch_phi z s a", arity: 3, call: call_lerch_phi },
    Registered { name: "theta3", usage: "theta3 v q", arity: 2, call: call_theta3 },
    Registered { name: "dn", usage: "dn v q", arity: 2, call: call_dn },
    Registered { name: "quarter_period", usage: "quarter_period q", arity: 1, call: call_quarter_period },
    Registered { name: "xi", usage: "xi z", arity: 1, call: call_xi },
    Registered { name: "gamma_q", usage: "gamma_q x q", arity: 2, call: call_gamma_q },
    Registered { name: "qpochhammer", usage: "qpochhammer z q", arity: 2, call: call_qpochhammer },
];
