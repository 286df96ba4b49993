//! Domain validation for matrix specs.
//!
//! `validate_spec` checks every hypothesis a family places on its
//! parameters and reports all violations instead of stopping at the first
//! or raising. Ratio-positivity hypotheses of the series families are
//! checked by sampling coefficients up to the series truncation horizon;
//! they are assumptions of the construction, not derivable facts.

use num_complex::Complex64;
use serde::Serialize;

use super::spec::{FactorSpec, MatrixSpec, ModularShared};
use crate::specialfn::{elliptic_pochhammer, CoefficientRule, ModularKind};
use crate::SeriesControl;

/// Cap on sampled coefficient-ratio indices for the series families.
const RATIO_SAMPLE_HORIZON: usize = 48;

/// Gaussian weights below this are treated as past the truncation horizon.
const GAUSSIAN_FLOOR: f64 = 1e-30;

/// One violated constraint, localized to a factor and optionally a point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    /// Index into `spec.factors`.
    pub factor: usize,
    /// Index into the factor's points, when the constraint is per-point.
    pub point: Option<usize>,
    /// The mathematical condition that failed, e.g. `"0 < q < 1"`.
    pub constraint: String,
    /// What was actually observed.
    pub detail: String,
}

/// Outcome of validating a spec: empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Collector<'a> {
    factor: usize,
    out: &'a mut Vec<Violation>,
}

impl Collector<'_> {
    fn flag(&mut self, point: Option<usize>, constraint: &str, detail: String) {
        self.out.push(Violation {
            factor: self.factor,
            point,
            constraint: constraint.to_string(),
            detail,
        });
    }

    fn require(&mut self, ok: bool, point: Option<usize>, constraint: &str, detail: String) {
        if !ok {
            self.flag(point, constraint, detail);
        }
    }
}

/// Check every factor of `spec` against its family's hypotheses.
///
/// Structural problems (no factors, empty or mismatched point lists) are
/// reported alongside domain violations; the function never fails.
pub fn validate_spec(spec: &MatrixSpec) -> ValidationReport {
    let mut violations = Vec::new();
    if spec.factors.is_empty() {
        violations.push(Violation {
            factor: 0,
            point: None,
            constraint: "at least one factor".into(),
            detail: "factor list is empty".into(),
        });
        return ValidationReport { violations };
    }

    let n0 = spec.factors[0].dim();
    for (idx, factor) in spec.factors.iter().enumerate() {
        let mut c = Collector {
            factor: idx,
            out: &mut violations,
        };
        if factor.dim() == 0 {
            c.flag(None, "at least one point", "point list is empty".into());
        }
        if factor.dim() != n0 {
            c.flag(
                None,
                "equal dimension across factors",
                format!("{} points here vs {} in factor 0", factor.dim(), n0),
            );
        }
        check_factor(factor, &mut c);
    }
    ValidationReport { violations }
}

fn check_factor(factor: &FactorSpec, c: &mut Collector<'_>) {
    match factor {
        FactorSpec::Theta3 { shared, .. } => {
            check_base(shared.q, c);
        }
        FactorSpec::Dn { shared, points } => {
            check_base(shared.q, c);
            if shared.q > 0.0 && shared.q < 1.0 {
                for (i, v) in points.iter().enumerate() {
                    let growth = shared.q * (4.0 * std::f64::consts::PI * v.im.abs()).exp();
                    c.require(
                        growth < 1.0,
                        Some(i),
                        "q * exp(4 pi |Im v|) < 1",
                        format!("q = {}, Im v = {}, product = {growth}", shared.q, v.im),
                    );
                }
            }
        }
        FactorSpec::ZetaTail { points, .. }
        | FactorSpec::EtaGammaZeta { points, .. }
        | FactorSpec::EtaGamma1Zeta { points, .. } => {
            positive_real_parts(points, "Re(s) > 0", c);
        }
        FactorSpec::Gamma { points, .. } => {
            positive_real_parts(points, "Re(z) > 0", c);
        }
        FactorSpec::SinPower { shared, points } => {
            c.require(
                shared.lambda > 0.0,
                None,
                "lambda > 0",
                format!("lambda = {}", shared.lambda),
            );
            for (i, &phi) in points.iter().enumerate() {
                c.require(
                    phi > 0.0 && phi < std::f64::consts::FRAC_PI_2,
                    Some(i),
                    "0 < phi < pi/2",
                    format!("phi = {phi}"),
                );
            }
        }
        FactorSpec::Beta { points, .. } => {
            for (i, (p, q)) in points.iter().enumerate() {
                c.require(
                    p.re > 0.0 && q.re > 0.0,
                    Some(i),
                    "Re(p) > 0 and Re(q) > 0",
                    format!("p = {p}, q = {q}"),
                );
            }
        }
        FactorSpec::Hypergeom { shared, points } => {
            let r = shared.upper.len();
            let s = shared.lower.len();
            c.require(
                s + 1 >= r,
                None,
                "at most one more upper than lower parameter",
                format!("{r} upper vs {s} lower"),
            );
            if s + 1 == r {
                for (i, z) in points.iter().enumerate() {
                    c.require(
                        z.norm() < 1.0,
                        Some(i),
                        "|z| < 1 on the unit-radius balance",
                        format!("|z| = {}", z.norm()),
                    );
                }
            }
            sample_factorial_ratios(&shared.upper, &shared.lower, c);
        }
        FactorSpec::PolygammaZeta { shared, points } => {
            c.require(shared.p >= 1, None, "p >= 1", format!("p = {}", shared.p));
            for (i, s) in points.iter().enumerate() {
                c.require(
                    s.re > 0.0 && s.re < 0.5,
                    Some(i),
                    "0 < Re(s) < 1/2",
                    format!("Re(s) = {}", s.re),
                );
            }
        }
        FactorSpec::RiemannXi { points, .. } => {
            for (i, z) in points.iter().enumerate() {
                c.require(
                    z.im.abs() < 0.25,
                    Some(i),
                    "|Im z| < 1/4 so pairwise differences stay inside the evaluator strip",
                    format!("Im z = {}", z.im),
                );
            }
        }
        FactorSpec::HurwitzTail { shared, points } | FactorSpec::HurwitzDiff { shared, points } => {
            c.require(shared.a > 0.0, None, "a > 0", format!("a = {}", shared.a));
            positive_real_parts(points, "Re(s) > 0", c);
        }
        FactorSpec::Lerch { shared, points } => {
            c.require(shared.z < 1.0, None, "z < 1", format!("z = {}", shared.z));
            c.require(shared.a > 0.0, None, "a > 0", format!("a = {}", shared.a));
            positive_real_parts(points, "Re(s) > 0", c);
        }
        FactorSpec::AwQGamma { shared, points } => {
            check_base(shared.q, c);
            for (i, &(a1, a2)) in points.iter().enumerate() {
                c.require(
                    a1 > 0.0 && a2 > 0.0,
                    Some(i),
                    "both exponents positive",
                    format!("pair = ({a1}, {a2})"),
                );
            }
        }
        FactorSpec::QHypergeom { shared, points } => {
            check_base(shared.q, c);
            c.require(
                shared.alpha >= 0.0,
                None,
                "alpha >= 0",
                format!("alpha = {}", shared.alpha),
            );
            if let Some(rho) = shared.radius {
                c.require(
                    rho > 0.0 && rho < 1.0,
                    None,
                    "0 < radius < 1",
                    format!("radius = {rho}"),
                );
            }
            if shared.alpha == 0.0 {
                let rho = shared.radius.unwrap_or(crate::specialfn::DEFAULT_ALPHA0_RADIUS);
                for (i, z) in points.iter().enumerate() {
                    c.require(
                        z.norm_sqr() < rho,
                        Some(i),
                        "|z|^2 < radius when alpha = 0",
                        format!("|z|^2 = {}, radius = {rho}", z.norm_sqr()),
                    );
                }
            }
            if shared.q > 0.0 && shared.q < 1.0 {
                sample_q_ratios(&shared.upper, &shared.lower, shared.q, c);
            }
        }
        FactorSpec::ModularE { shared, points } => {
            check_modular(shared, ModularKind::E, c);
            let _ = points;
        }
        FactorSpec::ModularG { shared, points } => {
            check_modular(shared, ModularKind::G, c);
            for (i, z) in points.iter().enumerate() {
                c.require(
                    z.norm() > 0.0,
                    Some(i),
                    "z != 0 for the bilateral series",
                    format!("z = {z}"),
                );
            }
        }
    }
}

fn check_base(q: f64, c: &mut Collector<'_>) {
    c.require(q > 0.0 && q < 1.0, None, "0 < q < 1", format!("q = {q}"));
}

fn positive_real_parts(points: &[Complex64], constraint: &str, c: &mut Collector<'_>) {
    for (i, s) in points.iter().enumerate() {
        c.require(s.re > 0.0, Some(i), constraint, format!("value = {s}"));
    }
}

/// Sample c_n = prod (a_i)_n / (prod (b_j)_n n!) and flag the first negative
/// or undefined coefficient. Zero is allowed: series that terminate satisfy
/// the hypothesis with equality.
fn sample_factorial_ratios(upper: &[f64], lower: &[f64], c: &mut Collector<'_>) {
    let mut coeff = 1.0f64;
    for n in 0..RATIO_SAMPLE_HORIZON {
        let nf = n as f64;
        let mut step = 1.0f64;
        for &a in upper {
            step *= a + nf;
        }
        for &b in lower {
            let factor = b + nf;
            if factor == 0.0 {
                c.flag(
                    None,
                    "lower parameters avoid nonpositive integers",
                    format!("b = {b} vanishes at shift n = {n}"),
                );
                return;
            }
            step /= factor;
        }
        coeff *= step / (nf + 1.0);
        if !coeff.is_finite() {
            c.flag(
                None,
                "coefficient ratio stays finite",
                format!("coefficient diverged at n = {}", n + 1),
            );
            return;
        }
        if coeff < 0.0 {
            c.flag(
                None,
                "coefficient ratio nonnegative",
                format!("coefficient {coeff:.3e} at n = {}", n + 1),
            );
            return;
        }
    }
}

/// Sample c_n = prod (a_i; q)_n / prod (b_j; q)_n for the q-series family.
fn sample_q_ratios(upper: &[f64], lower: &[f64], q: f64, c: &mut Collector<'_>) {
    let mut coeff = 1.0f64;
    let mut qn = 1.0f64;
    for n in 0..RATIO_SAMPLE_HORIZON {
        let mut step = 1.0f64;
        for &a in upper {
            step *= 1.0 - a * qn;
        }
        for &b in lower {
            let factor = 1.0 - b * qn;
            if factor.abs() < 1e-14 {
                c.flag(
                    None,
                    "denominator factors stay away from zero",
                    format!("1 - b q^n vanishes for b = {b} at n = {n}"),
                );
                return;
            }
            step /= factor;
        }
        coeff *= step;
        qn *= q;
        if !coeff.is_finite() || coeff < 0.0 {
            c.flag(
                None,
                "coefficient ratio nonnegative",
                format!("coefficient {coeff:.3e} at n = {}", n + 1),
            );
            return;
        }
    }
}

/// Theta-quotient ratio of one series term: prod theta-factorials of the
/// upper list over the lower list (with q prepended for the one-sided kind),
/// evaluated at index n. Shared with the random generator so sampling and
/// validation agree on the quantity being signed.
pub(crate) fn modular_ratio(
    shared: &ModularShared,
    kind: ModularKind,
    n: i64,
) -> Result<f64, String> {
    let ctl = SeriesControl::default();
    let q = shared.base_q();
    let p = shared.base_p();
    let mut value = 1.0f64;
    for &a in &shared.upper {
        let r = elliptic_pochhammer(Complex64::new(a, 0.0), q, p, n, &ctl)
            .map_err(|e| e.to_string())?;
        value *= r.value.re;
    }
    let mut lower_full = Vec::with_capacity(shared.lower.len() + 1);
    if kind == ModularKind::E {
        lower_full.push(q);
    }
    lower_full.extend_from_slice(&shared.lower);
    for &b in &lower_full {
        let r = elliptic_pochhammer(Complex64::new(b, 0.0), q, p, n, &ctl)
            .map_err(|e| e.to_string())?;
        let denom = r.value.re;
        if denom.abs() < 1e-250 {
            return Err(format!("theta factorial of {b} vanishes at n = {n}"));
        }
        value /= denom;
    }
    if !value.is_finite() {
        return Err(format!("ratio not finite at n = {n}"));
    }
    Ok(value)
}

/// Horizon for sampling modular ratio products: a table is finite by
/// construction, and Gaussian weights fall below `GAUSSIAN_FLOOR` at
/// n ~ sqrt(ln floor / ln q).
pub(crate) fn modular_horizon(coeff: &CoefficientRule, q: f64) -> usize {
    match coeff {
        CoefficientRule::Table { values } => values.len().min(RATIO_SAMPLE_HORIZON),
        CoefficientRule::Gaussian => {
            let cut = (GAUSSIAN_FLOOR.ln() / q.ln()).max(1.0).sqrt().ceil() as usize;
            cut.min(RATIO_SAMPLE_HORIZON)
        }
    }
}

fn check_modular(shared: &ModularShared, kind: ModularKind, c: &mut Collector<'_>) {
    c.require(
        shared.sigma > 0.0,
        None,
        "sigma > 0",
        format!("sigma = {}", shared.sigma),
    );
    c.require(
        shared.tau > 0.0,
        None,
        "tau > 0",
        format!("tau = {}", shared.tau),
    );
    if let CoefficientRule::Table { values } = &shared.coeff {
        for (i, &v) in values.iter().enumerate() {
            c.require(
                v >= 0.0,
                None,
                "table coefficients nonnegative",
                format!("values[{i}] = {v}"),
            );
        }
    }
    if !(shared.sigma > 0.0 && shared.tau > 0.0) {
        return;
    }

    let q = shared.base_q();
    let horizon = modular_horizon(&shared.coeff, q) as i64;
    let indices: Vec<i64> = match kind {
        ModularKind::E => (0..=horizon).collect(),
        ModularKind::G => (-horizon..=horizon).collect(),
    };
    for n in indices {
        let weight = shared.coeff.at(n, q);
        if weight == 0.0 {
            continue;
        }
        match modular_ratio(shared, kind, n) {
            Ok(ratio) => {
                let product = ratio * weight;
                if product < 0.0 {
                    c.flag(
                        None,
                        "ratio times coefficient nonnegative",
                        format!("product {product:.3e} at n = {n}"),
                    );
                    return;
                }
            }
            Err(why) => {
                c.flag(None, "theta factorials stay nonzero", why);
                return;
            }
        }
    }
}
