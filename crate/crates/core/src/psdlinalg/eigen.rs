//! Hermitian eigenvalues via the real-symmetric embedding
//!   M = X + iY  ->  [[X, -Y], [Y, X]]  (size 2n, symmetric),
//! diagonalized by cyclic Jacobi rotations. The embedded spectrum is the
//! spectrum of M doubled; after sorting, adjacent entries are paired and
//! averaged. An embedded eigenvector [a; b] maps back to u = a + i b.

use super::matrix::{HermitianMatrix, LinalgError};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending eigenvalues of the Hermitian input (length n).
    pub eigenvalues: Vec<f64>,
    /// Jacobi sweeps performed on the embedding.
    pub iterations: usize,
    /// Final off-diagonal Frobenius mass of the embedding.
    pub offdiag_residual: f64,
}

const MAX_SWEEPS: usize = 100;

fn offdiag_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a[p][q] * a[p][q];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi on a symmetric matrix; rotates V along so its columns end
/// up as eigenvectors. Returns sweeps used and the final off-diagonal mass.
fn jacobi(a: &mut [Vec<f64>], v: &mut [Vec<f64>], frob: f64) -> Result<(usize, f64), LinalgError> {
    let n = a.len();
    let stop = 1e-14 * frob.max(1e-300);
    for sweep in 1..=MAX_SWEEPS {
        let before = offdiag_norm(a);
        if before <= stop {
            return Ok((sweep - 1, before));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let (aip, aiq) = (a[i][p], a[i][q]);
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let (api, aqi) = (a[p][i], a[q][i]);
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for i in 0..n {
                    let (vip, viq) = (v[i][p], v[i][q]);
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }
    let residual = offdiag_norm(a);
    if residual <= stop {
        Ok((MAX_SWEEPS, residual))
    } else {
        Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS })
    }
}

fn embed(m: &HermitianMatrix) -> Vec<Vec<f64>> {
    let n = m.dim();
    let mut a = vec![vec![0.0f64; 2 * n]; 2 * n];
    for j in 0..n {
        for k in 0..n {
            let z = m.get(j, k);
            a[j][k] = z.re;
            a[j][n + k] = -z.im;
            a[n + j][k] = z.im;
            a[n + j][n + k] = z.re;
        }
    }
    a
}

/// Eigenvalues only.
pub fn eigenvalues_hermitian(m: &HermitianMatrix) -> Result<EigenResult, LinalgError> {
    let (res, _) = eigen_decomposition(m)?;
    Ok(res)
}

/// Eigenvalues plus matching unit eigenvectors (column i of the returned
/// list pairs with eigenvalues[i]).
pub fn eigen_decomposition(
    m: &HermitianMatrix,
) -> Result<(EigenResult, Vec<Vec<Complex64>>), LinalgError> {
    let n = m.dim();
    let mut a = embed(m);
    let mut v = vec![vec![0.0f64; 2 * n]; 2 * n];
    for i in 0..2 * n {
        v[i][i] = 1.0;
    }
    let frob = m.frobenius_norm() * 2.0f64.sqrt(); // embedding doubles the mass
    let (iterations, offdiag_residual) = jacobi(&mut a, &mut v, frob)?;

    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());

    // The doubled spectrum: adjacent sorted entries are the two copies.
    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for pair in 0..n {
        let i0 = order[2 * pair];
        let i1 = order[2 * pair + 1];
        eigenvalues.push(0.5 * (a[i0][i0] + a[i1][i1]));
        let col = i0;
        let u: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(v[j][col], v[n + j][col]))
            .collect();
        vectors.push(u);
    }
    Ok((
        EigenResult {
            eigenvalues,
            iterations,
            offdiag_residual,
        },
        vectors,
    ))
}
