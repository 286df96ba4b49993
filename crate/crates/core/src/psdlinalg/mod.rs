//! Positive-semidefiniteness verification for dense Hermitian matrices.
//!
//! Three independent routes feed one verdict: eigenvalues from a cyclic
//! Jacobi solve of the real-symmetric embedding, a diagonal-pivoted
//! Cholesky factorization, and randomized quadratic forms. Determinant
//! machinery (Cholesky pivots for PSD inputs, pivoted LU for arbitrary
//! leading blocks) supports the Schur-product determinant inequality and
//! the nonnegative-minors diagnostic.

mod cholesky;
mod eigen;
mod matrix;
mod verdict;

pub use cholesky::{det_psd, leading_minors, lu_det, pivoted_cholesky, CholeskyOutcome};
pub use eigen::{eigen_decomposition, eigenvalues_hermitian, EigenResult};
pub use matrix::{schur_product, HermitianMatrix, LinalgError};
pub use verdict::{hadamard_det_check, psd_verdict, PsdVerdict, DEFAULT_PSD_TOL};
