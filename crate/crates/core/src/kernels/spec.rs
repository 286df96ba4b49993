//! Serializable matrix specifications.
//!
//! A [`MatrixSpec`] is a labelled list of factors; the described matrix is
//! the entrywise (Hadamard) product of the factor matrices, so every factor
//! list must share one dimension. On the wire a spec is a JSON document
//!
//! ```json
//! {
//!   "label": "free text",
//!   "factors": [
//!     { "family": "THETA3", "shared": { "q": 0.1 }, "points": [[0.0, 0.0], [0.25, 0.0]] }
//!   ]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs throughout. Families without shared
//! parameters may omit `"shared"`. The full schema ships in
//! `schemas/matrix_spec.schema.json`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::family::KernelFamily;
pub use crate::specialfn::CoefficientRule;

/// Serialize one complex number as an `[re, im]` pair.
pub(crate) mod cx_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect())
    }
}

/// Serialize complex pairs as `[[re, im], [re, im]]`.
pub(crate) mod cx_pair_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[allow(clippy::type_complexity)]
    pub fn serialize<S: Serializer>(
        v: &[(Complex64, Complex64)],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[[f64; 2]; 2]> = v
            .iter()
            .map(|(a, b)| [[a.re, a.im], [b.re, b.im]])
            .collect();
        pairs.serialize(s)
    }

    #[allow(clippy::type_complexity)]
    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(Complex64, Complex64)>, D::Error> {
        let pairs = Vec::<[[f64; 2]; 2]>::deserialize(d)?;
        Ok(pairs
            .into_iter()
            .map(|[[ar, ai], [br, bi]]| (Complex64::new(ar, ai), Complex64::new(br, bi)))
            .collect())
    }
}

/// Families whose only shared parameter is a base `0 < q < 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NomeShared {
    pub q: f64,
}

/// Families with per-point parameters only.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NoShared {}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SinPowerShared {
    /// Exponent of the reciprocal sine; must be positive.
    pub lambda: f64,
}

/// Real parameter lists of a hypergeometric-type series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypergeomShared {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygammaShared {
    /// Derivative order; at least 1.
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HurwitzShared {
    /// Real shift, positive.
    pub a: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LerchShared {
    /// Real series argument, strictly below 1.
    pub z: f64,
    /// Real shift, positive.
    pub a: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QHypergeomShared {
    pub q: f64,
    /// Gaussian deformation exponent; nonnegative, and zero only with a
    /// finite acceptance radius.
    pub alpha: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    /// Acceptance radius for `alpha = 0`; defaults to the evaluator's 0.5.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

/// Shared data of the theta-based series families. The bases are given as
/// positive rates: `q = exp(-2 pi sigma)`, `p = exp(-2 pi tau)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularShared {
    pub sigma: f64,
    pub tau: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    /// Coefficient sequence applied termwise.
    pub coeff: CoefficientRule,
}

impl ModularShared {
    /// Series base `q` derived from `sigma`.
    pub fn base_q(&self) -> f64 {
        (-2.0 * std::f64::consts::PI * self.sigma).exp()
    }

    /// Theta base `p` derived from `tau`.
    pub fn base_p(&self) -> f64 {
        (-2.0 * std::f64::consts::PI * self.tau).exp()
    }
}

/// One factor of a Hadamard product: a kernel family, its shared parameters
/// and the per-index points. The matrix entry at `(j, k)` is the family
/// kernel applied to points `j` and `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FactorSpec {
    #[serde(rename = "THETA3")]
    Theta3 {
        shared: NomeShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "DN")]
    Dn {
        shared: NomeShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "ZETA_TAIL")]
    ZetaTail {
        #[serde(default)]
        shared: NoShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "GAMMA")]
    Gamma {
        #[serde(default)]
        shared: NoShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "SIN_POWER")]
    SinPower {
        shared: SinPowerShared,
        points: Vec<f64>,
    },
    #[serde(rename = "BETA")]
    Beta {
        #[serde(default)]
        shared: NoShared,
        #[serde(with = "cx_pair_vec")]
        points: Vec<(Complex64, Complex64)>,
    },
    #[serde(rename = "HYPERGEOM")]
    Hypergeom {
        shared: HypergeomShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "ETA_GAMMA_ZETA")]
    EtaGammaZeta {
        #[serde(default)]
        shared: NoShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "ETA_GAMMA1_ZETA")]
    EtaGamma1Zeta {
        #[serde(default)]
        shared: NoShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "POLYGAMMA_ZETA")]
    PolygammaZeta {
        shared: PolygammaShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "RIEMANN_XI")]
    RiemannXi {
        #[serde(default)]
        shared: NoShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "HURWITZ_TAIL")]
    HurwitzTail {
        shared: HurwitzShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "HURWITZ_DIFF")]
    HurwitzDiff {
        shared: HurwitzShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "LERCH")]
    Lerch {
        shared: LerchShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "AW_QGAMMA")]
    AwQGamma {
        shared: NomeShared,
        /// Per-index exponent pairs, both positive.
        points: Vec<(f64, f64)>,
    },
    #[serde(rename = "Q_HYPERGEOM")]
    QHypergeom {
        shared: QHypergeomShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "MODULAR_E")]
    ModularE {
        shared: ModularShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
    #[serde(rename = "MODULAR_G")]
    ModularG {
        shared: ModularShared,
        #[serde(with = "cx_vec")]
        points: Vec<Complex64>,
    },
}

impl FactorSpec {
    /// The family this factor instantiates.
    pub fn family(&self) -> KernelFamily {
        match self {
            FactorSpec::Theta3 { .. } => KernelFamily::Theta3,
            FactorSpec::Dn { .. } => KernelFamily::Dn,
            FactorSpec::ZetaTail { .. } => KernelFamily::ZetaTail,
            FactorSpec::Gamma { .. } => KernelFamily::Gamma,
            FactorSpec::SinPower { .. } => KernelFamily::SinPower,
            FactorSpec::Beta { .. } => KernelFamily::Beta,
            FactorSpec::Hypergeom { .. } => KernelFamily::Hypergeom,
            FactorSpec::EtaGammaZeta { .. } => KernelFamily::EtaGammaZeta,
            FactorSpec::EtaGamma1Zeta { .. } => KernelFamily::EtaGamma1Zeta,
            FactorSpec::PolygammaZeta { .. } => KernelFamily::PolygammaZeta,
            FactorSpec::RiemannXi { .. } => KernelFamily::RiemannXi,
            FactorSpec::HurwitzTail { .. } => KernelFamily::HurwitzTail,
            FactorSpec::HurwitzDiff { .. } => KernelFamily::HurwitzDiff,
            FactorSpec::Lerch { .. } => KernelFamily::Lerch,
            FactorSpec::AwQGamma { .. } => KernelFamily::AwQGamma,
            FactorSpec::QHypergeom { .. } => KernelFamily::QHypergeom,
            FactorSpec::ModularE { .. } => KernelFamily::ModularE,
            FactorSpec::ModularG { .. } => KernelFamily::ModularG,
        }
    }

    /// Number of points, i.e. the matrix dimension this factor produces.
    pub fn dim(&self) -> usize {
        match self {
            FactorSpec::Theta3 { points, .. }
            | FactorSpec::Dn { points, .. }
            | FactorSpec::ZetaTail { points, .. }
            | FactorSpec::Gamma { points, .. }
            | FactorSpec::Hypergeom { points, .. }
            | FactorSpec::EtaGammaZeta { points, .. }
            | FactorSpec::EtaGamma1Zeta { points, .. }
            | FactorSpec::PolygammaZeta { points, .. }
            | FactorSpec::RiemannXi { points, .. }
            | FactorSpec::HurwitzTail { points, .. }
            | FactorSpec::HurwitzDiff { points, .. }
            | FactorSpec::Lerch { points, .. }
            | FactorSpec::QHypergeom { points, .. }
            | FactorSpec::ModularE { points, .. }
            | FactorSpec::ModularG { points, .. } => points.len(),
            FactorSpec::SinPower { points, .. } => points.len(),
            FactorSpec::Beta { points, .. } => points.len(),
            FactorSpec::AwQGamma { points, .. } => points.len(),
        }
    }
}

/// A labelled Hadamard product of kernel factors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpec {
    #[serde(default)]
    pub label: String,
    pub factors: Vec<FactorSpec>,
}

impl MatrixSpec {
    /// Common dimension of the factors, if the list is nonempty and agrees.
    pub fn dim(&self) -> Option<usize> {
        let first = self.factors.first()?.dim();
        if self.factors.iter().all(|f| f.dim() == first) {
            Some(first)
        } else {
            None
        }
    }
}
