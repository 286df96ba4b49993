//! Gram matrices of finitely supported measures on the real line.
//!
//! A matrix whose (j, k) entry is sum_x w(x) e^{2 pi i x (v_j - conj v_k)}
//! is the Gram matrix of the functions x -> e^{2 pi i x v_j} in L^2 of the
//! measure sum_x w(x) delta_x, hence positive semidefinite whenever every
//! weight is nonnegative. Truncating a lattice measure keeps that structure
//! exactly; the only loss is the discarded mass, which each constructor
//! bounds and records.

use super::OracleError;
use crate::psdlinalg::HermitianMatrix;
use crate::specialfn::quarter_period;
use crate::{Complex64, SeriesControl};
use std::f64::consts::TAU;

/// A nonnegative measure with finitely many atoms, together with a bound on
/// the mass lost to truncation (weighted by any exponential growth the
/// intended Gram exponents can contribute).
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<(f64, f64)>,
    tail_bound: f64,
}

impl DiscreteMeasure {
    /// Wrap explicit atoms. Every weight must be finite and nonnegative;
    /// `tail_bound` is the caller's bound on whatever the atom list omits.
    pub fn new(atoms: Vec<(f64, f64)>, tail_bound: f64) -> Result<Self, OracleError> {
        for &(x, w) in &atoms {
            if !x.is_finite() || !w.is_finite() || w < 0.0 {
                return Err(OracleError::BadMeasure {
                    location: x,
                    weight: w,
                });
            }
        }
        if !(tail_bound >= 0.0) {
            return Err(OracleError::BadMeasure {
                location: f64::NAN,
                weight: tail_bound,
            });
        }
        Ok(Self { atoms, tail_bound })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|&(_, w)| w).sum()
    }

    /// Weights q^{n^2} at the integers, |n| <= max_index. `growth` bounds
    /// |Im(v_j - conj v_k)| over the exponents the measure will be paired
    /// with, so the recorded tail covers the worst-case entry error, not
    /// just the lost mass.
    pub fn theta_lattice(q: f64, max_index: u32, growth: f64) -> Result<Self, OracleError> {
        assert!(0.0 < q && q < 1.0, "nome out of range: {q}");
        assert!(growth >= 0.0);
        let weight = |n: i64| -> f64 { q.powi((n * n) as i32) };
        let mut atoms = Vec::with_capacity(2 * max_index as usize + 1);
        let m = max_index as i64;
        for n in -m..=m {
            atoms.push((n as f64, weight(n)));
        }
        // Beyond N the term ratio is at most q^{2N+3} e^{2 pi growth}; demand
        // it below 1/2 so a geometric bound holds, else refuse the cut.
        let nf = max_index as f64;
        let log_ratio = (2.0 * nf + 3.0) * q.ln() + TAU * growth;
        let log_first = (nf + 1.0) * (nf + 1.0) * q.ln() + TAU * (nf + 1.0) * growth;
        if log_ratio > -std::f64::consts::LN_2 {
            return Err(OracleError::TailTooLarge {
                bound: f64::INFINITY,
                limit: 0.0,
            });
        }
        let tail_bound = 4.0 * log_first.exp();
        Self::new(atoms, tail_bound)
    }

    /// Weights (pi / K(q)) q^{|n|} / (1 + q^{2|n|}) at the integers,
    /// |n| <= max_index, with the same growth convention as
    /// [`theta_lattice`](Self::theta_lattice). Requires q e^{2 pi growth} < 1,
    /// which is the growth condition the corresponding kernel needs anyway.
    pub fn dn_lattice(
        q: f64,
        max_index: u32,
        growth: f64,
        ctl: &SeriesControl,
    ) -> Result<Self, OracleError> {
        assert!(0.0 < q && q < 1.0, "nome out of range: {q}");
        assert!(growth >= 0.0);
        let scale = std::f64::consts::PI / quarter_period(q, ctl)?;
        let ratio = q * (TAU * growth).exp();
        if ratio >= 1.0 {
            return Err(OracleError::TailTooLarge {
                bound: f64::INFINITY,
                limit: 0.0,
            });
        }
        let weight = |n: i64| -> f64 {
            let a = n.unsigned_abs() as i32;
            scale * q.powi(a) / (1.0 + q.powi(2 * a))
        };
        let m = max_index as i64;
        let mut atoms = Vec::with_capacity(2 * max_index as usize + 1);
        for n in -m..=m {
            atoms.push((n as f64, weight(n)));
        }
        let first = scale * ratio.powi(max_index as i32 + 1);
        let tail_bound = 2.0 * first / (1.0 - ratio);
        Self::new(atoms, tail_bound)
    }
}

/// Build G[j][k] = sum over atoms of w e^{2 pi i x (v_j - conj v_k)}.
///
/// Errors with [`OracleError::TailTooLarge`] when the measure's recorded
/// truncation bound exceeds `max_tail`, so a loose cut can never silently
/// pass for an exact Gram matrix.
pub fn gram_discrete(
    measure: &DiscreteMeasure,
    exponents: &[Complex64],
    max_tail: f64,
) -> Result<HermitianMatrix, OracleError> {
    if exponents.is_empty() {
        return Err(OracleError::EmptyExponents);
    }
    if measure.tail_bound > max_tail {
        return Err(OracleError::TailTooLarge {
            bound: measure.tail_bound,
            limit: max_tail,
        });
    }
    let n = exponents.len();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in j..n {
            let delta = exponents[j] - exponents[k].conj();
            let mut acc = Complex64::new(0.0, 0.0);
            for &(x, w) in &measure.atoms {
                acc += w * (Complex64::i() * TAU * x * delta).exp();
            }
            data[j * n + k] = acc;
        }
    }
    Ok(HermitianMatrix::from_exact(n, data))
}
