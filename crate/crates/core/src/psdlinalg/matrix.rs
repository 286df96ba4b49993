//! Dense Hermitian matrix storage. Construction enforces conjugate symmetry
//! up to a relative deviation and then symmetrizes, so everything downstream
//! can assume M = M* holds exactly in the stored representation.

use num_complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    NonHermitian { max_dev: f64 },
    NoConvergence { sweeps: usize },
    DimensionMismatch { a: usize, b: usize },
    Empty,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NonHermitian { max_dev } => {
                write!(f, "matrix is not Hermitian (max deviation {max_dev:.3e})")
            }
            LinalgError::NoConvergence { sweeps } => {
                write!(f, "eigen iteration did not converge in {sweeps} sweeps")
            }
            LinalgError::DimensionMismatch { a, b } => {
                write!(f, "dimension mismatch: {a} vs {b}")
            }
            LinalgError::Empty => write!(f, "empty matrix"),
        }
    }
}

impl std::error::Error for LinalgError {}

/// Relative Hermitian-deviation gate used by the constructors.
const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>, // row-major, kept exactly conjugate-symmetric
}

impl HermitianMatrix {
    /// Build from arbitrary square data: reject if the conjugate-symmetry
    /// deviation exceeds HERMITIAN_TOL relative to the largest entry, then
    /// replace M by (M + M*)/2 so the stored form is exact.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinalgError::Empty);
        }
        for r in &rows {
            if r.len() != n {
                return Err(LinalgError::DimensionMismatch { a: n, b: r.len() });
            }
        }
        let mut scale = 0.0f64;
        let mut dev = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                scale = scale.max(rows[j][k].norm());
                dev = dev.max((rows[j][k] - rows[k][j].conj()).norm());
            }
        }
        if dev > HERMITIAN_TOL * scale.max(1e-300) {
            return Err(LinalgError::NonHermitian {
                max_dev: dev / scale.max(1e-300),
            });
        }
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in 0..n {
                let avg = 0.5 * (rows[j][k] + rows[k][j].conj());
                data[j * n + k] = if j == k {
                    Complex64::new(avg.re, 0.0)
                } else {
                    avg
                };
            }
        }
        // Make the lower triangle the exact conjugate of the upper one.
        for j in 0..n {
            for k in (j + 1)..n {
                data[k * n + j] = data[j * n + k].conj();
            }
        }
        Ok(HermitianMatrix { n, data })
    }

    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self, LinalgError> {
        let rows = (0..n)
            .map(|j| (0..n).map(|k| f(j, k)).collect())
            .collect();
        Self::from_rows(rows)
    }

    /// Entrywise construction that is Hermitian by algebra (for example the
    /// Schur product of two stored-Hermitian matrices); skips the gate but
    /// still mirrors the lower triangle for exactness.
    pub(crate) fn from_exact(n: usize, mut data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        for j in 0..n {
            data[j * n + j] = Complex64::new(data[j * n + j].re, 0.0);
            for k in (j + 1)..n {
                data[k * n + j] = data[j * n + k].conj();
            }
        }
        HermitianMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.data[j * self.n + k]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.n)
            .map(|j| self.data[j * self.n..(j + 1) * self.n].to_vec())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|j| self.get(j, j).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude; the natural scale for entrywise comparisons.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Leading k-by-k principal submatrix.
    pub(crate) fn leading(&self, k: usize) -> HermitianMatrix {
        debug_assert!(k >= 1 && k <= self.n);
        let mut data = Vec::with_capacity(k * k);
        for j in 0..k {
            data.extend_from_slice(&self.data[j * self.n..j * self.n + k]);
        }
        HermitianMatrix { n: k, data }
    }
}

/// Entrywise (Schur) product. Conjugate symmetry survives multiplication
/// exactly, so the result is built without re-running the gate.
pub fn schur_product(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix, LinalgError> {
    if a.dim() != b.dim() {
        return Err(LinalgError::DimensionMismatch {
            a: a.dim(),
            b: b.dim(),
        });
    }
    let n = a.dim();
    let data = (0..n * n)
        .map(|i| a.data[i] * b.data[i])
        .collect();
    Ok(HermitianMatrix::from_exact(n, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepts_and_symmetrizes() {
        let m = HermitianMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.5, 0.25)],
            vec![c(0.5, -0.25), c(2.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0).conj());
        assert_eq!(m.get(1, 1).im, 0.0);
        assert_eq!(m.dim(), 2);
    }

    #[test]
    fn rejects_asymmetric() {
        let err = HermitianMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.5, 0.0)],
            vec![c(0.7, 0.0), c(2.0, 0.0)],
        ])
        .unwrap_err();
        assert!(matches!(err, LinalgError::NonHermitian { .. }));
    }

    #[test]
    fn rejects_ragged_and_empty() {
        assert!(matches!(
            HermitianMatrix::from_rows(vec![vec![c(1.0, 0.0)], vec![]]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            HermitianMatrix::from_rows(vec![]),
            Err(LinalgError::Empty)
        ));
    }

    #[test]
    fn schur_identities() {
        let a = HermitianMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(0.3, 0.4)],
            vec![c(0.3, -0.4), c(1.0, 0.0)],
        ])
        .unwrap();
        let ones = HermitianMatrix::from_fn(2, |_, _| c(1.0, 0.0)).unwrap();
        let p = schur_product(&a, &ones).unwrap();
        assert_eq!(p, a);
        // Commutativity is exact.
        let b = HermitianMatrix::from_fn(2, |j, k| {
            if j == k {
                c(j as f64 + 1.0, 0.0)
            } else {
                c(0.1, 0.2 * (k as f64 - j as f64))
            }
        })
        .unwrap();
        assert_eq!(
            schur_product(&a, &b).unwrap(),
            schur_product(&b, &a).unwrap()
        );
        // Dimension guard.
        let one = HermitianMatrix::from_fn(1, |_, _| c(1.0, 0.0)).unwrap();
        assert!(matches!(
            schur_product(&a, &one),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn leading_blocks() {
        let m = HermitianMatrix::from_fn(3, |j, k| {
            c(1.0 / (1.0 + j as f64 + k as f64), 0.0)
        })
        .unwrap();
        let l2 = m.leading(2);
        assert_eq!(l2.dim(), 2);
        assert_eq!(l2.get(1, 0), m.get(1, 0));
    }
}
