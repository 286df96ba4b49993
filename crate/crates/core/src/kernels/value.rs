//! Kernel entry evaluation and Hadamard-product matrix assembly.

use std::fmt;

use num_complex::Complex64;

use super::spec::{FactorSpec, MatrixSpec};
use crate::error::EvalError;
use crate::psdlinalg::HermitianMatrix;
use crate::specialfn::{
    beta, deformed_q_hypergeometric, deformed_q_hypergeometric_with_radius, dirichlet_eta, gamma,
    gamma_q, hurwitz_diff, hurwitz_g, hypergeometric_f, jacobi_dn, lerch_phi, modular_series,
    real_pow, riemann_xi, rising_factorial, theta3, zeta, ModularKind, EULER_GAMMA, STIELTJES_1,
    STIELTJES_2, STIELTJES_3,
};
use crate::SeriesControl;

/// Relative conjugate-symmetry budget of an assembled matrix. Entries with
/// `|M[j][k] - conj(M[k][j])| > CONJUGATE_SYMMETRY_TOL * (1 + |M[j][k]|)`
/// indicate an evaluator defect and are rejected rather than repaired.
pub const CONJUGATE_SYMMETRY_TOL: f64 = 1e-12;

/// Failure while assembling a matrix from a spec.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecError {
    /// A scalar evaluator failed on some entry.
    Eval(EvalError),
    /// Entry `(j, k)` and the conjugate of `(k, j)` disagree beyond the
    /// symmetry budget.
    ConjugateSymmetry { j: usize, k: usize, deviation: f64 },
    /// Two factors produce different dimensions.
    MismatchedFactorDims { first: usize, other: usize },
    /// The factor list is empty.
    EmptyFactors,
    /// A factor has an empty point list.
    EmptyPoints,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Eval(e) => write!(f, "kernel evaluation failed: {e}"),
            SpecError::ConjugateSymmetry { j, k, deviation } => write!(
                f,
                "entries ({j}, {k}) and ({k}, {j}) break conjugate symmetry by {deviation:.3e}"
            ),
            SpecError::MismatchedFactorDims { first, other } => write!(
                f,
                "factors disagree on dimension: {first} points vs {other}"
            ),
            SpecError::EmptyFactors => write!(f, "spec contains no factors"),
            SpecError::EmptyPoints => write!(f, "factor contains no points"),
        }
    }
}

impl std::error::Error for SpecError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            SpecError::Eval(e) => Some(e),
            _ => None,
        }
    }
}

impl From<EvalError> for SpecError {
    fn from(e: EvalError) -> Self {
        SpecError::Eval(e)
    }
}

/// Inside this distance from s = 1 the tail kernel switches to its Taylor
/// form; the direct difference loses every significant digit there.
const TAIL_SWITCH_RADIUS: f64 = 1e-3;

/// 1/(s-1) - zeta(s)/s with the removable singularity at s = 1 filled in.
///
/// Near s = 1 the Laurent expansion of zeta cancels the explicit pole and
/// leaves (1 - g0 + g1 u - g2/2 u^2 + g3/6 u^3 + O(u^4)) / s in the Stieltjes
/// constants g_k, with u = s - 1; the value at s = 1 is 1 - g0.
fn zeta_tail(s: Complex64, ctl: &SeriesControl) -> Result<Complex64, EvalError> {
    let u = s - 1.0;
    if u.norm() < TAIL_SWITCH_RADIUS {
        let numerator = Complex64::new(1.0 - EULER_GAMMA, 0.0)
            + u * (STIELTJES_1 + u * (-0.5 * STIELTJES_2 + u * (STIELTJES_3 / 6.0)));
        Ok(numerator / s)
    } else {
        let z = zeta(s, ctl)?.value;
        Ok(u.inv() - z / s)
    }
}

/// Evaluate one factor's kernel at point indices `(j, k)`.
///
/// Expects a validated factor; domain violations surface as `EvalError`.
/// Panics if `j` or `k` exceed the point list.
pub fn kernel_value(factor: &FactorSpec, j: usize, k: usize) -> Result<Complex64, EvalError> {
    let ctl = SeriesControl::default();
    match factor {
        FactorSpec::Theta3 { shared, points } => {
            let v = points[j] - points[k].conj();
            Ok(theta3(v, shared.q, &ctl)?.value)
        }
        FactorSpec::Dn { shared, points } => {
            let v = points[j] - points[k].conj();
            Ok(jacobi_dn(v, shared.q, &ctl)?.value)
        }
        FactorSpec::ZetaTail { points, .. } => {
            let s = points[j] + points[k].conj();
            zeta_tail(s, &ctl)
        }
        FactorSpec::Gamma { points, .. } => {
            let z = points[j] + points[k].conj();
            Ok(gamma(z, &ctl)?.value)
        }
        FactorSpec::SinPower { shared, points } => {
            let phi = points[j] + points[k];
            let s = phi.sin();
            if s <= 0.0 {
                return Err(EvalError::Domain(format!(
                    "sin kernel needs sin(phi_j + phi_k) > 0, got sin({phi}) = {s}"
                )));
            }
            Ok(Complex64::new(s.powf(-shared.lambda), 0.0))
        }
        FactorSpec::Beta { points, .. } => {
            let p = points[j].0 + points[k].0.conj();
            let q = points[j].1 + points[k].1.conj();
            Ok(beta(p, q, &ctl)?.value)
        }
        FactorSpec::Hypergeom { shared, points } => {
            let upper: Vec<Complex64> = shared.upper.iter().map(|&a| a.into()).collect();
            let lower: Vec<Complex64> = shared.lower.iter().map(|&b| b.into()).collect();
            let z = points[j] * points[k].conj();
            Ok(hypergeometric_f(&upper, &lower, z, &ctl)?.value)
        }
        FactorSpec::EtaGammaZeta { points, .. } => {
            let s = points[j] + points[k].conj();
            let eta = dirichlet_eta(s, &ctl)?.value;
            Ok(eta * gamma(s, &ctl)?.value)
        }
        FactorSpec::EtaGamma1Zeta { points, .. } => {
            let s = points[j] + points[k].conj();
            let eta = dirichlet_eta(s, &ctl)?.value;
            Ok(eta * gamma(s + 1.0, &ctl)?.value)
        }
        FactorSpec::PolygammaZeta { shared, points } => {
            let s = points[j] + points[k].conj();
            let rising = rising_factorial(s, shared.p);
            let z = zeta(s + f64::from(shared.p), &ctl)?.value;
            let denom = (s * std::f64::consts::PI).sin();
            if denom.norm() < 1e-300 {
                return Err(EvalError::DivisionByZero);
            }
            Ok(rising * z / denom)
        }
        FactorSpec::RiemannXi { points, .. } => {
            let z = points[j] - points[k].conj();
            Ok(riemann_xi(z, &ctl)?.value)
        }
        FactorSpec::HurwitzTail { shared, points } => {
            let s = points[j] + points[k].conj();
            let a = shared.a;
            let head = real_pow(a, -s) + real_pow(1.0 + a, -s);
            Ok((head + hurwitz_g(s, a)?) / s)
        }
        FactorSpec::HurwitzDiff { shared, points } => {
            let s = points[j] + points[k].conj();
            let diff = hurwitz_diff(s, (shared.a + 1.0) / 4.0, (shared.a + 3.0) / 4.0)?;
            Ok(gamma(s, &ctl)?.value * diff)
        }
        FactorSpec::Lerch { shared, points } => {
            let s = points[j] + points[k].conj();
            let phi = lerch_phi(Complex64::new(shared.z, 0.0), s, shared.a, &ctl)?.value;
            Ok(gamma(s, &ctl)?.value * phi)
        }
        FactorSpec::AwQGamma { shared, points } => {
            let (aj1, aj2) = points[j];
            let (ak1, ak2) = points[k];
            let g1 = gamma_q(aj1 + ak1, shared.q, &ctl)?.value;
            let g2 = gamma_q(aj2 + ak2, shared.q, &ctl)?.value;
            let g12 = gamma_q(aj1 + aj2 + ak1 + ak2, shared.q, &ctl)?.value;
            if g12.norm() < 1e-300 {
                return Err(EvalError::DivisionByZero);
            }
            Ok(g1 * g2 / g12)
        }
        FactorSpec::QHypergeom { shared, points } => {
            let upper: Vec<Complex64> = shared.upper.iter().map(|&a| a.into()).collect();
            let lower: Vec<Complex64> = shared.lower.iter().map(|&b| b.into()).collect();
            let z = points[j] * points[k].conj();
            let r = match shared.radius {
                Some(rho) => deformed_q_hypergeometric_with_radius(
                    &upper,
                    &lower,
                    shared.q,
                    shared.alpha,
                    z,
                    rho,
                    &ctl,
                )?,
                None => {
                    deformed_q_hypergeometric(&upper, &lower, shared.q, shared.alpha, z, &ctl)?
                }
            };
            Ok(r.value)
        }
        FactorSpec::ModularE { shared, points } | FactorSpec::ModularG { shared, points } => {
            let kind = if matches!(factor, FactorSpec::ModularE { .. }) {
                ModularKind::E
            } else {
                ModularKind::G
            };
            let upper: Vec<Complex64> = shared.upper.iter().map(|&a| a.into()).collect();
            let lower: Vec<Complex64> = shared.lower.iter().map(|&b| b.into()).collect();
            let z = points[j] * points[k].conj();
            let r = modular_series(
                kind,
                &upper,
                &lower,
                shared.base_q(),
                shared.base_p(),
                &shared.coeff,
                z,
                &ctl,
            )?;
            Ok(r.value)
        }
    }
}

/// Assemble the Hadamard product of all factor matrices.
///
/// Each factor contributes the n-by-n matrix of its kernel over its point
/// pairs; the spec's matrix is their entrywise product. Conjugate symmetry
/// is checked pairwise at [`CONJUGATE_SYMMETRY_TOL`] and the surviving
/// roundoff is averaged away; larger asymmetry aborts the build.
pub fn build_matrix(spec: &MatrixSpec) -> Result<HermitianMatrix, SpecError> {
    if spec.factors.is_empty() {
        return Err(SpecError::EmptyFactors);
    }
    let n = spec.factors[0].dim();
    if n == 0 {
        return Err(SpecError::EmptyPoints);
    }
    for f in &spec.factors[1..] {
        if f.dim() != n {
            return Err(SpecError::MismatchedFactorDims {
                first: n,
                other: f.dim(),
            });
        }
    }

    let mut entries = vec![Complex64::new(1.0, 0.0); n * n];
    for f in &spec.factors {
        for j in 0..n {
            for k in 0..n {
                entries[j * n + k] *= kernel_value(f, j, k)?;
            }
        }
    }

    for j in 0..n {
        for k in j..n {
            let mjk = entries[j * n + k];
            let mkj = entries[k * n + j];
            let deviation = (mjk - mkj.conj()).norm();
            if deviation > CONJUGATE_SYMMETRY_TOL * (1.0 + mjk.norm()) {
                return Err(SpecError::ConjugateSymmetry { j, k, deviation });
            }
            let mut avg = 0.5 * (mjk + mkj.conj());
            if j == k {
                avg = Complex64::new(avg.re, 0.0);
            }
            entries[j * n + k] = avg;
            entries[k * n + j] = avg.conj();
        }
    }

    Ok(HermitianMatrix::from_exact(n, entries))
}
