//! Entrywise agreement reports between two matrix routes.

use super::OracleError;
use crate::psdlinalg::HermitianMatrix;
use serde::Serialize;

/// Worst-entry summary of an entrywise comparison. The deviation of an
/// entry pair is |a - b| / max(1, |a|, |b|): relative for large entries,
/// absolute near zero, so noise under a tiny entry cannot dominate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CompareReport {
    pub max_rel_dev: f64,
    /// Index (j, k) where the maximum occurred.
    pub worst: (usize, usize),
    /// The tolerance the comparison was asked to meet.
    pub rel_tol: f64,
    /// Whether every entry pair met it.
    pub within: bool,
}

/// Compare two Hermitian matrices entry by entry.
pub fn entrywise_compare(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    rel_tol: f64,
) -> Result<CompareReport, OracleError> {
    if a.dim() != b.dim() {
        return Err(OracleError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    assert!(rel_tol > 0.0, "tolerance out of range: {rel_tol}");
    let n = a.dim();
    let mut max_rel_dev = 0.0f64;
    let mut worst = (0, 0);
    for j in 0..n {
        for k in 0..n {
            let (x, y) = (a.get(j, k), b.get(j, k));
            let dev = (x - y).norm() / x.norm().max(y.norm()).max(1.0);
            if dev > max_rel_dev {
                max_rel_dev = dev;
                worst = (j, k);
            }
        }
    }
    Ok(CompareReport {
        max_rel_dev,
        worst,
        rel_tol,
        within: max_rel_dev <= rel_tol,
    })
}
