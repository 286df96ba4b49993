//! Diagonal-pivoted outer-product Cholesky for PSD decisions and PSD
//! determinants, plus a partial-pivoted LU determinant for leading minors
//! (LU also handles indefinite blocks, which a Cholesky cannot pass).

use super::matrix::HermitianMatrix;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct CholeskyOutcome {
    /// Steps completed before the remaining pivots dropped below tolerance.
    pub rank: usize,
    /// False iff some pivot (or leftover diagonal entry) fell below
    /// -tol * scale, which certifies a negative direction.
    pub success: bool,
    /// The accepted pivots, in elimination order.
    pub pivots: Vec<f64>,
}

/// Pivoted Cholesky: at each step the largest remaining diagonal entry is
/// moved to the pivot position. Stops when that entry is below
/// tol * max(1, initial max diagonal); success fails only on clear
/// negativity at the same scale.
pub fn pivoted_cholesky(m: &HermitianMatrix, tol: f64) -> CholeskyOutcome {
    let n = m.dim();
    let mut a: Vec<Vec<Complex64>> = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let init_max_diag = (0..n).map(|j| m.get(j, j).re).fold(f64::NEG_INFINITY, f64::max);
    let scale = init_max_diag.max(1.0);
    let mut pivots = Vec::with_capacity(n);
    let mut success = true;

    for step in 0..n {
        // Largest remaining diagonal entry.
        let (jmax, dmax) = (step..n)
            .map(|j| (j, a[j][j].re))
            .fold((step, f64::NEG_INFINITY), |acc, cur| {
                if cur.1 > acc.1 {
                    cur
                } else {
                    acc
                }
            });
        if dmax < tol * scale {
            // Nothing left above the threshold; scan the leftovers for
            // decisive negativity before stopping.
            for j in step..n {
                if a[j][j].re < -tol * scale {
                    success = false;
                }
            }
            return CholeskyOutcome {
                rank: step,
                success,
                pivots,
            };
        }
        if jmax != step {
            a.swap(step, jmax);
            for row in a.iter_mut() {
                row.swap(step, jmax);
            }
            perm.swap(step, jmax);
        }
        let pivot = a[step][step].re;
        pivots.push(pivot);
        let root = pivot.sqrt();
        for j in step + 1..n {
            a[j][step] /= root;
        }
        for j in step + 1..n {
            for k in step + 1..=j {
                let upd = a[j][step] * a[k][step].conj();
                a[j][k] -= upd;
                if j != k {
                    a[k][j] = a[j][k].conj();
                } else {
                    a[j][j] = Complex64::new(a[j][j].re, 0.0);
                }
            }
            if a[j][j].re < -tol * scale {
                success = false;
            }
        }
    }
    CholeskyOutcome {
        rank: n,
        success,
        pivots,
    }
}

/// Determinant of a PSD matrix as the product of its Cholesky pivots; a
/// rank-deficient factorization means a zero determinant at this scale.
pub fn det_psd(m: &HermitianMatrix) -> f64 {
    let out = pivoted_cholesky(m, 1e-14);
    if out.rank < m.dim() {
        0.0
    } else {
        out.pivots.iter().product()
    }
}

/// Determinant by complex LU with partial pivoting; valid for any square
/// Hermitian block, indefinite ones included. The result of a Hermitian
/// determinant is real; the imaginary residue is discarded after a sanity
/// bound.
pub fn lu_det(m: &HermitianMatrix) -> f64 {
    let n = m.dim();
    let mut a = m.rows();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let (pmax, vmax) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .fold((col, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if vmax <= 0.0 {
            return 0.0;
        }
        if pmax != col {
            a.swap(pmax, col);
            det = -det;
        }
        let pivot = a[col][col];
        det *= pivot;
        for r in col + 1..n {
            let factor = a[r][col] / pivot;
            for c in col..n {
                let sub = factor * a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    debug_assert!(
        det.im.abs() <= 1e-8 * det.norm().max(1e-300),
        "hermitian determinant acquired an imaginary part: {det}"
    );
    det.re
}

/// Determinants of the leading principal submatrices of sizes 1..n, each by
/// its own pivoted elimination.
pub fn leading_minors(m: &HermitianMatrix) -> Vec<f64> {
    (1..=m.dim()).map(|k| lu_det(&m.leading(k))).collect()
}
