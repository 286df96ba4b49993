//! Kernel families and matrix assembly.
//!
//! Eighteen scalar kernels, each positive semidefinite over its parameter
//! domain, are described by serializable specs ([`MatrixSpec`]), validated
//! structurally and against every family hypothesis ([`validate_spec`]),
//! and assembled into Hermitian matrices as entrywise products of factor
//! matrices ([`build_matrix`]). [`random_spec`] draws reproducible specs
//! strictly inside the domains for fuzzing and acceptance sweeps.

mod family;
mod random;
mod spec;
mod validate;
mod value;

pub use family::{KernelFamily, UnknownFamily};
pub use random::random_spec;
pub use spec::{
    CoefficientRule, FactorSpec, HurwitzShared, HypergeomShared, LerchShared, MatrixSpec,
    ModularShared, NoShared, NomeShared, PolygammaShared, QHypergeomShared, SinPowerShared,
};
pub use validate::{validate_spec, ValidationReport, Violation};
pub use value::{build_matrix, kernel_value, SpecError, CONJUGATE_SYMMETRY_TOL};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psdlinalg::{eigenvalues_hermitian, psd_verdict, DEFAULT_PSD_TOL};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ones_factor(n: usize) -> FactorSpec {
        // Gamma at constant half points: every entry is Gamma(1) = 1, a
        // rank-one all-ones factor.
        FactorSpec::Gamma {
            shared: NoShared {},
            points: vec![c(0.5, 0.0); n],
        }
    }

    #[test]
    fn spot_psd_verdicts() {
        for (family, seed) in [
            (KernelFamily::Theta3, 3u64),
            (KernelFamily::AwQGamma, 5),
            (KernelFamily::HurwitzTail, 11),
        ] {
            let spec = random_spec(family, 5, seed);
            assert!(validate_spec(&spec).is_valid());
            let m = build_matrix(&spec).unwrap();
            let verdict = psd_verdict(&m, DEFAULT_PSD_TOL).unwrap();
            assert!(
                verdict.is_psd,
                "{family}: min eig {} at tol {}",
                verdict.min_eig, verdict.tolerance_used
            );
        }
    }

    #[test]
    fn hadamard_ones_factor_is_identity() {
        let spec = random_spec(KernelFamily::Beta, 4, 2);
        let mut padded = spec.clone();
        padded.factors.push(ones_factor(4));
        let a = build_matrix(&spec).unwrap();
        let b = build_matrix(&padded).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                let (x, y) = (a.get(j, k), b.get(j, k));
                assert!(
                    (x - y).norm() <= 1e-12 * (1.0 + x.norm()),
                    "entry ({j},{k}): {x} vs {y}"
                );
            }
        }
    }

    #[test]
    fn point_permutation_is_a_similarity() {
        let spec = random_spec(KernelFamily::Gamma, 6, 8);
        let m = build_matrix(&spec).unwrap();
        let permuted = match &spec.factors[0] {
            FactorSpec::Gamma { points, .. } => {
                let mut p = points.clone();
                p.rotate_left(2);
                p.swap(0, 3);
                let mut factors = vec![FactorSpec::Gamma {
                    shared: NoShared {},
                    points: p,
                }];
                // Apply the same permutation to any remaining factors.
                for f in &spec.factors[1..] {
                    if let FactorSpec::Gamma { points, .. } = f {
                        let mut p = points.clone();
                        p.rotate_left(2);
                        p.swap(0, 3);
                        factors.push(FactorSpec::Gamma {
                            shared: NoShared {},
                            points: p,
                        });
                    }
                }
                MatrixSpec {
                    label: String::new(),
                    factors,
                }
            }
            _ => unreachable!(),
        };
        let mp = build_matrix(&permuted).unwrap();
        let mut ea = eigenvalues_hermitian(&m).unwrap().eigenvalues;
        let mut eb = eigenvalues_hermitian(&mp).unwrap().eigenvalues;
        ea.sort_by(f64::total_cmp);
        eb.sort_by(f64::total_cmp);
        let scale = ea.iter().fold(1.0f64, |acc, &x| acc.max(x.abs()));
        for (x, y) in ea.iter().zip(&eb) {
            assert!((x - y).abs() <= 1e-10 * scale, "{x} vs {y}");
        }
    }

    #[test]
    fn duplicated_point_forces_singularity() {
        let mut points = match random_spec(KernelFamily::Beta, 1, 4).factors.remove(0) {
            FactorSpec::Beta { points, .. } => points,
            _ => unreachable!(),
        };
        points.push(points[0]);
        points.push((c(0.7, 0.1), c(1.1, -0.2)));
        let spec = MatrixSpec {
            label: String::new(),
            factors: vec![FactorSpec::Beta {
                shared: NoShared {},
                points,
            }],
        };
        let m = build_matrix(&spec).unwrap();
        let eigs = eigenvalues_hermitian(&m).unwrap().eigenvalues;
        let max = eigs.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()));
        let min = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(
            min <= 1e-8 * max.max(1e-300),
            "duplicate point should force a zero eigenvalue: min {min}, max {max}"
        );
    }

    #[test]
    fn unit_modulus_rescale_leaves_entries_fixed() {
        let phase = Complex64::from_polar(1.0, 0.73);
        for family in [
            KernelFamily::Hypergeom,
            KernelFamily::QHypergeom,
            KernelFamily::ModularG,
        ] {
            let spec = random_spec(family, 4, 13);
            let mut rotated = spec.clone();
            for f in &mut rotated.factors {
                match f {
                    FactorSpec::Hypergeom { points, .. }
                    | FactorSpec::QHypergeom { points, .. }
                    | FactorSpec::ModularE { points, .. }
                    | FactorSpec::ModularG { points, .. } => {
                        for z in points.iter_mut() {
                            *z *= phase;
                        }
                    }
                    _ => unreachable!(),
                }
            }
            let a = build_matrix(&spec).unwrap();
            let b = build_matrix(&rotated).unwrap();
            for j in 0..4 {
                for k in 0..4 {
                    let (x, y) = (a.get(j, k), b.get(j, k));
                    assert!(
                        (x - y).norm() <= 1e-12 * (1.0 + x.norm()),
                        "{family} entry ({j},{k}): {x} vs {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn specs_round_trip_through_json() {
        for family in KernelFamily::ALL {
            let spec = random_spec(family, 3, 11);
            let text = serde_json::to_string(&spec).unwrap();
            let back: MatrixSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, spec, "{family}");
        }
    }
}
