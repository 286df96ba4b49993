//! The combined PSD decision: eigenvalue floor, pivoted Cholesky, and a
//! random quadratic-form smoke test must all agree before a matrix is
//! declared positive semidefinite.

use super::cholesky::{det_psd, pivoted_cholesky};
use super::eigen::eigenvalues_hermitian;
use super::matrix::{schur_product, HermitianMatrix, LinalgError};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    pub cholesky_rank: usize,
    pub tolerance_used: f64,
}

pub const DEFAULT_PSD_TOL: f64 = 1e-8;

/// Number of random vectors in the quadratic-form smoke test.
const FORM_SAMPLES: usize = 64;

/// Fixed stream so verdicts are reproducible run to run.
const FORM_SEED: u64 = 0x5eed_f0a4;

fn quadratic_forms_nonnegative(m: &HermitianMatrix, floor: f64) -> bool {
    let n = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(FORM_SEED);
    for _ in 0..FORM_SAMPLES {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let mut form = Complex64::new(0.0, 0.0);
        for j in 0..n {
            for k in 0..n {
                form += v[j].conj() * m.get(j, k) * v[k];
            }
        }
        if form.re < -floor * norm_sq.max(1.0) {
            return false;
        }
    }
    true
}

/// Decide PSD-ness by three independent routes. tolerance_used is
/// tol_rel * max(1, lambda_max); the verdict is positive only when the
/// smallest eigenvalue clears -tolerance_used, the pivoted Cholesky never
/// meets a decisively negative pivot, and all sampled quadratic forms stay
/// above the same floor.
pub fn psd_verdict(m: &HermitianMatrix, tol_rel: f64) -> Result<PsdVerdict, LinalgError> {
    let eig = eigenvalues_hermitian(m)?;
    let min_eig = *eig.eigenvalues.first().expect("nonempty spectrum");
    let max_eig = *eig.eigenvalues.last().expect("nonempty spectrum");
    let tolerance_used = tol_rel * max_eig.max(1.0);
    let chol = pivoted_cholesky(m, tol_rel);
    let forms_ok = quadratic_forms_nonnegative(m, tolerance_used);
    Ok(PsdVerdict {
        is_psd: min_eig >= -tolerance_used && chol.success && forms_ok,
        min_eig,
        max_eig,
        cholesky_rank: chol.rank,
        tolerance_used,
    })
}

/// det(A o B) >= det(A) det(B) - tol * max(1, |det(A o B)|), with all three
/// determinants taken from Cholesky pivots (the inputs are PSD by contract).
pub fn hadamard_det_check(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: f64,
) -> Result<bool, LinalgError> {
    let prod = schur_product(a, b)?;
    let det_ab = det_psd(&prod);
    let det_a = det_psd(a);
    let det_b = det_psd(b);
    Ok(det_ab >= det_a * det_b - tol * det_ab.abs().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psdlinalg::cholesky::leading_minors;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gram(g: &[Vec<Complex64>], n: usize) -> HermitianMatrix {
        HermitianMatrix::from_fn(n, |j, k| {
            let mut s = Complex64::new(0.0, 0.0);
            for row in g {
                s += row[j].conj() * row[k];
            }
            s
        })
        .unwrap()
    }

    fn random_gram(rng: &mut ChaCha8Rng, n: usize, rows: usize) -> HermitianMatrix {
        let g: Vec<Vec<Complex64>> = (0..rows)
            .map(|_| {
                (0..n)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect()
            })
            .collect();
        gram(&g, n)
    }

    #[test]
    fn boundary_diag() {
        let m = HermitianMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let v = psd_verdict(&m, DEFAULT_PSD_TOL).unwrap();
        assert!(v.is_psd);
        assert!(v.min_eig.abs() < 1e-14);
    }

    #[test]
    fn indefinite_rejected() {
        let m = HermitianMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let v = psd_verdict(&m, DEFAULT_PSD_TOL).unwrap();
        assert!(!v.is_psd);
        assert!((v.min_eig + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_ones_matrix() {
        let m = HermitianMatrix::from_fn(4, |_, _| c(1.0, 0.0)).unwrap();
        let v = psd_verdict(&m, DEFAULT_PSD_TOL).unwrap();
        assert!(v.is_psd);
        assert_eq!(v.cholesky_rank, 1);
        assert!((v.max_eig - 4.0).abs() < 1e-12);
    }

    #[test]
    fn gram_matrices_pass_in_bulk() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for trial in 0..1000 {
            let n = rng.gen_range(1..=8);
            let rows = rng.gen_range(1..=n + 3);
            let m = random_gram(&mut rng, n, rows);
            let v = psd_verdict(&m, DEFAULT_PSD_TOL).unwrap();
            assert!(
                v.is_psd,
                "trial {trial}: gram matrix rejected, min_eig = {}",
                v.min_eig
            );
            // Cross-consistency between the two PSD routes.
            assert!(v.min_eig >= -2.0 * v.tolerance_used);
        }
    }

    #[test]
    fn schur_products_of_gram_matrices_stay_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for trial in 0..200 {
            let n = rng.gen_range(2..=6);
            let rows_a = rng.gen_range(1..=n + 2);
            let rows_b = rng.gen_range(1..=n + 2);
            let a = random_gram(&mut rng, n, rows_a);
            let b = random_gram(&mut rng, n, rows_b);
            let p = schur_product(&a, &b).unwrap();
            let v = psd_verdict(&p, DEFAULT_PSD_TOL).unwrap();
            assert!(v.is_psd, "trial {trial}: schur product left the cone");
            assert!(
                hadamard_det_check(&a, &b, 1e-10).unwrap(),
                "trial {trial}: determinant inequality failed"
            );
        }
    }

    #[test]
    fn hadamard_example_by_hand() {
        let a = HermitianMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let b = HermitianMatrix::from_rows(vec![
            vec![c(3.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(3.0, 0.0)],
        ])
        .unwrap();
        // det(A o B) = 35, det(A) det(B) = 3 * 8 = 24.
        let p = schur_product(&a, &b).unwrap();
        assert!((det_psd(&p) - 35.0).abs() < 1e-12);
        assert!(hadamard_det_check(&a, &b, 1e-12).unwrap());
    }

    #[test]
    fn eigenproduct_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            // Shifted Gram keeps the condition number tame.
            let base = random_gram(&mut rng, n, n + 2);
            let m = HermitianMatrix::from_fn(n, |j, k| {
                base.get(j, k) + if j == k { c(0.5, 0.0) } else { c(0.0, 0.0) }
            })
            .unwrap();
            let eig = eigenvalues_hermitian(&m).unwrap();
            let prod: f64 = eig.eigenvalues.iter().product();
            let det = det_psd(&m);
            assert!(
                (prod - det).abs() <= 1e-8 * det.abs().max(1.0),
                "eigenproduct {prod} vs det {det}"
            );
        }
    }

    #[test]
    fn negative_minors_usually_flag_non_psd() {
        // Diagnostic statistic: for indefinite random Hermitian inputs, a
        // negative leading minor shows up nearly always (not a theorem).
        let mut rng = ChaCha8Rng::seed_from_u64(555);
        let mut indefinite = 0usize;
        let mut flagged = 0usize;
        for _ in 0..400 {
            let n = rng.gen_range(2..=6);
            let raw: Vec<Vec<Complex64>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect()
                })
                .collect();
            let m = HermitianMatrix::from_fn(n, |j, k| 0.5 * (raw[j][k] + raw[k][j].conj()))
                .unwrap();
            let v = psd_verdict(&m, DEFAULT_PSD_TOL).unwrap();
            if !v.is_psd {
                indefinite += 1;
                if leading_minors(&m).iter().any(|&d| d < 0.0) {
                    flagged += 1;
                }
            }
        }
        assert!(indefinite > 100, "sampler produced too few indefinite cases");
        let ratio = flagged as f64 / indefinite as f64;
        assert!(ratio >= 0.95, "only {flagged}/{indefinite} flagged");
    }
}
