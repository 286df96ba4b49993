//! Kernel matrices built from special-function evaluations, together with the
//! machinery to verify that they are positive semidefinite.
//!
//! The crate is organised in four layers:
//!
//! * [`specialfn`] — scalar evaluators (gamma family, zeta family, theta
//!   functions, hypergeometric and q-series, elliptic building blocks);
//! * [`kernels`] — matrix families assembled from those evaluators, plus
//!   spec validation and seeded random spec generation;
//! * [`psdlinalg`] — Hermitian eigenvalues, pivoted Cholesky, and the
//!   combined PSD verdict;
//! * [`oracle`] — independent reconstructions of the kernel matrices from
//!   their defining measures (discrete sums and quadrature) and two
//!   closed-form integral identities used as end-to-end checks.
//!
//! [`quad`] holds the double-exponential quadrature core shared by the
//! Lerch evaluator and the oracle layer.

pub mod control;
pub mod error;
pub mod kernels;
pub mod oracle;
pub mod psdlinalg;
pub mod quad;
pub mod specialfn;

pub use control::{EvalResult, SeriesControl};
pub use error::EvalError;
pub use num_complex::Complex64;
