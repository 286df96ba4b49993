//! The eighteen kernel families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One positive-semidefinite kernel family. Each variant names the scalar
/// function that fills the matrix entry at `(j, k)` from the points `x_j`
/// and `x_k`; products of several families are expressed by listing factors
/// in a `MatrixSpec`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelFamily {
    /// theta3(v_j - conj(v_k), q): the theta series sum q^(n^2) e^(2 pi i n v).
    #[serde(rename = "THETA3")]
    Theta3,
    /// dn(2K (v_j - conj(v_k)), q), the delta-amplitude at lattice-normalized
    /// argument.
    #[serde(rename = "DN")]
    Dn,
    /// 1/(s-1) - zeta(s)/s at s = s_j + conj(s_k); removable singularity at
    /// s = 1 handled by a Taylor switch.
    #[serde(rename = "ZETA_TAIL")]
    ZetaTail,
    /// Gamma(z_j + conj(z_k)).
    #[serde(rename = "GAMMA")]
    Gamma,
    /// 1/sin^lambda(phi_j + phi_k) for real phases in (0, pi/2).
    #[serde(rename = "SIN_POWER")]
    SinPower,
    /// B(p_j + conj(p_k), q_j + conj(q_k)), the beta function on paired
    /// arguments.
    #[serde(rename = "BETA")]
    Beta,
    /// The generalized hypergeometric series rFs at argument z_j conj(z_k),
    /// with fixed real parameter lists.
    #[serde(rename = "HYPERGEOM")]
    Hypergeom,
    /// (1 - 2^(1-s)) Gamma(s) zeta(s) at s = s_j + conj(s_k), i.e. the
    /// alternating zeta times gamma.
    #[serde(rename = "ETA_GAMMA_ZETA")]
    EtaGammaZeta,
    /// (1 - 2^(1-s)) Gamma(s+1) zeta(s) at s = s_j + conj(s_k).
    #[serde(rename = "ETA_GAMMA1_ZETA")]
    EtaGamma1Zeta,
    /// (s)_p zeta(p+s) / sin(pi s) at s = s_j + conj(s_k) for a fixed integer
    /// order p >= 1 and 0 < Re(s_j) < 1/2.
    #[serde(rename = "POLYGAMMA_ZETA")]
    PolygammaZeta,
    /// Xi(z_j - conj(z_k)), the symmetric completed zeta on the critical
    /// strip.
    #[serde(rename = "RIEMANN_XI")]
    RiemannXi,
    /// (a^(-s) + (1+a)^(-s) - zeta(s, a))/s + (1+a)^(1-s)/(s (s-1)) at
    /// s = s_j + conj(s_k): the sawtooth-moment tail of the Hurwitz zeta.
    #[serde(rename = "HURWITZ_TAIL")]
    HurwitzTail,
    /// Gamma(s) (zeta(s, (a+1)/4) - zeta(s, (a+3)/4)) at s = s_j + conj(s_k).
    #[serde(rename = "HURWITZ_DIFF")]
    HurwitzDiff,
    /// Gamma(s) Phi(z, s, a) at s = s_j + conj(s_k) with the Lerch
    /// transcendent at fixed real z < 1 and a > 0.
    #[serde(rename = "LERCH")]
    Lerch,
    /// Gamma_q(a_j1 + a_k1) Gamma_q(a_j2 + a_k2) / Gamma_q(a_j1 + a_j2 +
    /// a_k1 + a_k2) for positive exponent pairs.
    #[serde(rename = "AW_QGAMMA")]
    AwQGamma,
    /// The Gaussian-deformed q-hypergeometric series at argument
    /// z_j conj(z_k), with weight q^(alpha n^2) on term n.
    #[serde(rename = "Q_HYPERGEOM")]
    QHypergeom,
    /// One-sided theta-quotient series sum_{n>=0} ratio_n A_n z^n at argument
    /// z_j conj(z_k), where ratio_n quotients elliptic factorials and the
    /// denominator list is prepended with q.
    #[serde(rename = "MODULAR_E")]
    ModularE,
    /// Bilateral theta-quotient series sum over all integers n at argument
    /// z_j conj(z_k); needs z != 0 for its negative indices.
    #[serde(rename = "MODULAR_G")]
    ModularG,
}

impl KernelFamily {
    /// All families, in serialization-tag order.
    pub const ALL: [KernelFamily; 18] = [
        KernelFamily::Theta3,
        KernelFamily::Dn,
        KernelFamily::ZetaTail,
        KernelFamily::Gamma,
        KernelFamily::SinPower,
        KernelFamily::Beta,
        KernelFamily::Hypergeom,
        KernelFamily::EtaGammaZeta,
        KernelFamily::EtaGamma1Zeta,
        KernelFamily::PolygammaZeta,
        KernelFamily::RiemannXi,
        KernelFamily::HurwitzTail,
        KernelFamily::HurwitzDiff,
        KernelFamily::Lerch,
        KernelFamily::AwQGamma,
        KernelFamily::QHypergeom,
        KernelFamily::ModularE,
        KernelFamily::ModularG,
    ];

    /// The serialization tag, e.g. `"THETA3"`.
    pub fn tag(self) -> &'static str {
        match self {
            KernelFamily::Theta3 => "THETA3",
            KernelFamily::Dn => "DN",
            KernelFamily::ZetaTail => "ZETA_TAIL",
            KernelFamily::Gamma => "GAMMA",
            KernelFamily::SinPower => "SIN_POWER",
            KernelFamily::Beta => "BETA",
            KernelFamily::Hypergeom => "HYPERGEOM",
            KernelFamily::EtaGammaZeta => "ETA_GAMMA_ZETA",
            KernelFamily::EtaGamma1Zeta => "ETA_GAMMA1_ZETA",
            KernelFamily::PolygammaZeta => "POLYGAMMA_ZETA",
            KernelFamily::RiemannXi => "RIEMANN_XI",
            KernelFamily::HurwitzTail => "HURWITZ_TAIL",
            KernelFamily::HurwitzDiff => "HURWITZ_DIFF",
            KernelFamily::Lerch => "LERCH",
            KernelFamily::AwQGamma => "AW_QGAMMA",
            KernelFamily::QHypergeom => "Q_HYPERGEOM",
            KernelFamily::ModularE => "MODULAR_E",
            KernelFamily::ModularG => "MODULAR_G",
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Error for an unrecognized family tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownFamily(pub String);

impl fmt::Display for UnknownFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown kernel family tag {:?}", self.0)
    }
}

impl std::error::Error for UnknownFamily {}

impl FromStr for KernelFamily {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        KernelFamily::ALL
            .iter()
            .copied()
            .find(|f| f.tag() == trimmed)
            .ok_or_else(|| UnknownFamily(trimmed.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eighteen_distinct_tags() {
        let mut tags: Vec<&str> = KernelFamily::ALL.iter().map(|f| f.tag()).collect();
        assert_eq!(tags.len(), 18);
        tags.sort_unstable();
        tags.dedup();
        assert_eq!(tags.len(), 18, "tags must be pairwise distinct");
    }

    #[test]
    fn display_parse_round_trip() {
        for f in KernelFamily::ALL {
            let shown = f.to_string();
            assert_eq!(shown.parse::<KernelFamily>().unwrap(), f);
        }
    }

    #[test]
    fn parse_rejects_unknown_and_lowercase() {
        assert!("THETA4".parse::<KernelFamily>().is_err());
        assert!("theta3".parse::<KernelFamily>().is_err());
        assert_eq!(" DN ".parse::<KernelFamily>().unwrap(), KernelFamily::Dn);
    }

    #[test]
    fn serde_uses_tags() {
        let text = serde_json::to_string(&KernelFamily::EtaGamma1Zeta).unwrap();
        assert_eq!(text, "\"ETA_GAMMA1_ZETA\"");
        let back: KernelFamily = serde_json::from_str("\"MODULAR_G\"").unwrap();
        assert_eq!(back, KernelFamily::ModularG);
    }
}
