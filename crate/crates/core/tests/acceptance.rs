//! Acceptance sweep: one test per release criterion, each printing a single
//! verdict line. A criterion fails loudly with its first few counterexamples;
//! run with `cargo test --test acceptance -- --nocapture` to see every line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfpsd::kernels::{build_matrix, random_spec, KernelFamily};
use sfpsd::oracle::{entrywise_compare, oracle_matrix, verify_aw_integral, verify_mp_identity};
use sfpsd::psdlinalg::{
    eigenvalues_hermitian, hadamard_det_check, lu_det, psd_verdict, schur_product,
    HermitianMatrix,
};
use sfpsd::quad::QuadControl;
use sfpsd::specialfn::{gamma, hurwitz_zeta, jacobi_dn, riemann_xi, theta3, zeta};
use sfpsd::{Complex64, SeriesControl};
use std::f64::consts::PI;

fn verdict(label: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("{label}: PASS");
    } else {
        println!("{label}: FAIL ({} cases)", failures.len());
        for f in failures.iter().take(5) {
            println!("  {f}");
        }
        panic!("{label} failed with {} cases", failures.len());
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn criterion_1_family_psd_sweep() {
    let mut failures = Vec::new();
    for family in KernelFamily::ALL {
        for trial in 0..100u64 {
            let n = 2 + (trial as usize % 7);
            let spec = random_spec(family, n, 1000 + trial);
            match build_matrix(&spec) {
                Ok(m) => match psd_verdict(&m, 1e-8) {
                    Ok(v) if v.is_psd => {}
                    Ok(v) => failures.push(format!(
                        "{family} trial {trial} n={n}: min eig {:.3e}",
                        v.min_eig
                    )),
                    Err(e) => failures.push(format!("{family} trial {trial}: verdict: {e}")),
                },
                Err(e) => failures.push(format!("{family} trial {trial}: build: {e}")),
            }
        }
    }
    verdict("criterion 1 (18 families x 100 specs PSD at 1e-8)", failures);
}

fn oracle_sweep(families: &[KernelFamily], dims: &[usize], tol: f64) -> Vec<String> {
    let quad = QuadControl::default();
    let mut failures = Vec::new();
    for &family in families {
        for seed in 0..20u64 {
            let n = dims[seed as usize % dims.len()];
            let spec = random_spec(family, n, seed);
            let kernel = match build_matrix(&spec) {
                Ok(m) => m,
                Err(e) => {
                    failures.push(format!("{family} seed {seed}: kernel: {e}"));
                    continue;
                }
            };
            let gram = match oracle_matrix(&spec, &quad) {
                Ok(m) => m,
                Err(e) => {
                    failures.push(format!("{family} seed {seed}: oracle: {e}"));
                    continue;
                }
            };
            let r = entrywise_compare(&kernel, &gram, tol).unwrap();
            if !r.within {
                failures.push(format!(
                    "{family} seed {seed}: deviation {:.3e} at {:?}",
                    r.max_rel_dev, r.worst
                ));
            }
        }
    }
    failures
}

#[test]
fn criterion_2_discrete_oracle_equivalence() {
    let failures = oracle_sweep(
        &[KernelFamily::Theta3, KernelFamily::Dn],
        &[2, 3, 4, 5],
        1e-10,
    );
    verdict("criterion 2 (theta lattice Gram agreement at 1e-10)", failures);
}

#[test]
fn criterion_3_quadrature_oracle_equivalence() {
    let failures = oracle_sweep(
        &[
            KernelFamily::Gamma,
            KernelFamily::Beta,
            KernelFamily::ZetaTail,
            KernelFamily::EtaGammaZeta,
            KernelFamily::EtaGamma1Zeta,
            KernelFamily::PolygammaZeta,
            KernelFamily::HurwitzTail,
            KernelFamily::HurwitzDiff,
            KernelFamily::Lerch,
        ],
        &[2, 3, 4],
        1e-7,
    );
    verdict("criterion 3 (line density Gram agreement at 1e-7)", failures);
}

#[test]
fn criterion_4_gamma_moment_identity_grid() {
    let quad = QuadControl::default();
    let mut failures = Vec::new();
    for &lambda in &[0.5, 1.0, 2.5] {
        for &phi in &[PI / 6.0, PI / 4.0, PI / 2.0] {
            match verify_mp_identity(lambda, phi, &quad) {
                Ok(c) if c.rel_dev() < 1e-6 => {}
                Ok(c) => failures.push(format!(
                    "lambda={lambda} phi={phi:.4}: deviation {:.3e}",
                    c.rel_dev()
                )),
                Err(e) => failures.push(format!("lambda={lambda} phi={phi:.4}: {e}")),
            }
        }
    }
    // Closed-form anchor: Gamma(2) / (2 sin(pi/2))^2 = 1/4.
    let anchor = verify_mp_identity(1.0, PI / 2.0, &quad).unwrap();
    if (anchor.rhs - 0.25).abs() > 1e-12 {
        failures.push(format!("anchor rhs {} != 0.25", anchor.rhs));
    }
    verdict("criterion 4 (moment identity grid at 1e-6)", failures);
}

#[test]
fn criterion_5_q_beta_identity() {
    let quad = QuadControl::default();
    let mut failures = Vec::new();
    for &q in &[0.1, 0.3] {
        for alphas in [[0.5, 0.7, 1.1, 1.3], [1.0, 1.0, 1.0, 1.0]] {
            match verify_aw_integral(q, alphas, &quad) {
                Ok(c) if c.rel_dev() < 1e-5 => {}
                Ok(c) => failures.push(format!(
                    "q={q} alphas={alphas:?}: deviation {:.3e}",
                    c.rel_dev()
                )),
                Err(e) => failures.push(format!("q={q} alphas={alphas:?}: {e}")),
            }
        }
    }
    verdict("criterion 5 (q-beta integral at 1e-5)", failures);
}

fn random_gram(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
    let g: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    HermitianMatrix::from_fn(n, |j, k| {
        (0..n).map(|l| g[l][j].conj() * g[l][k]).sum()
    })
    .expect("G*G is Hermitian")
}

#[test]
fn criterion_6_schur_product_machinery() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    for pair in 0..500 {
        let n = 2 + pair % 5;
        let a = random_gram(&mut rng, n);
        let b = random_gram(&mut rng, n);
        let ab = schur_product(&a, &b).unwrap();
        match psd_verdict(&ab, 1e-8) {
            Ok(v) if v.is_psd => {}
            Ok(v) => failures.push(format!(
                "pair {pair} n={n}: product min eig {:.3e}",
                v.min_eig
            )),
            Err(e) => failures.push(format!("pair {pair} n={n}: verdict: {e}")),
        }
        match hadamard_det_check(&a, &b, 1e-10) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("pair {pair} n={n}: determinant bound violated")),
            Err(e) => failures.push(format!("pair {pair} n={n}: det check: {e}")),
        }
    }
    verdict("criterion 6 (500 Schur pairs, PSD + determinant bound)", failures);
}

#[test]
fn criterion_7_scalar_regressions() {
    let ctl = SeriesControl::default();
    let mut failures = Vec::new();

    let g5 = gamma(re(5.0), &ctl).unwrap().value;
    if (g5.re - 24.0).abs() > 24.0 * 1e-12 || g5.im.abs() > 1e-12 {
        failures.push(format!("gamma(5) = {g5}"));
    }

    let z2 = zeta(re(2.0), &ctl).unwrap().value;
    if (z2.re - PI * PI / 6.0).abs() > 1e-10 {
        failures.push(format!("zeta(2) = {}", z2.re));
    }

    for &v in &[0.0, 0.3, -1.7] {
        let t = theta3(Complex64::new(v, 0.2), 0.0, &ctl).unwrap().value;
        if t != re(1.0) {
            failures.push(format!("theta3({v}+0.2i, 0) = {t}, want exactly 1"));
        }
    }

    for k in 1..=8 {
        let q = k as f64 / 10.0;
        let d = jacobi_dn(re(0.0), q, &ctl).unwrap().value;
        if (d.re - 1.0).abs() > 1e-9 || d.im.abs() > 1e-12 {
            failures.push(format!("dn(0, {q}) = {d}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let z = re(rng.gen_range(-8.0..8.0));
        let plus = riemann_xi(z, &ctl).unwrap().value;
        let minus = riemann_xi(-z, &ctl).unwrap().value;
        let scale = plus.norm().max(1.0);
        if (plus - minus).norm() > 1e-12 * scale {
            failures.push(format!(
                "xi not even at z={}: {:.3e}",
                z.re,
                (plus - minus).norm()
            ));
        }
    }

    let h = hurwitz_zeta(re(2.0), 0.5, &ctl).unwrap().value;
    if (h.re - PI * PI / 2.0).abs() > 1e-10 {
        failures.push(format!("hurwitz_zeta(2, 1/2) = {}", h.re));
    }

    verdict("criterion 7 (scalar regressions)", failures);
}

#[test]
fn criterion_8_eigensolver_oracle() {
    let mut failures = Vec::new();
    let i = Complex64::i();

    // Small matrices with characteristic-polynomial roots known in closed
    // form: (matrix rows, sorted eigenvalues).
    let fixed: Vec<(Vec<Vec<Complex64>>, Vec<f64>)> = vec![
        (vec![vec![re(1.0), re(0.0)], vec![re(0.0), re(1.0)]], vec![1.0, 1.0]),
        (vec![vec![re(2.0), re(1.0)], vec![re(1.0), re(2.0)]], vec![1.0, 3.0]),
        (vec![vec![re(1.0), i], vec![-i, re(1.0)]], vec![0.0, 2.0]),
        (
            vec![
                vec![re(1.0), re(0.0), re(0.0)],
                vec![re(0.0), re(1.0), re(0.0)],
                vec![re(0.0), re(0.0), re(1.0)],
            ],
            vec![1.0, 1.0, 1.0],
        ),
        (vec![vec![re(1.0), re(1.0)], vec![re(1.0), re(1.0)]], vec![0.0, 2.0]),
        (vec![vec![re(1.0), re(2.0)], vec![re(2.0), re(1.0)]], vec![-1.0, 3.0]),
        (vec![vec![re(0.0), re(0.0)], vec![re(0.0), re(1.0)]], vec![0.0, 1.0]),
        (vec![vec![re(3.0), re(1.0)], vec![re(1.0), re(3.0)]], vec![2.0, 4.0]),
        (vec![vec![re(6.0), re(1.0)], vec![re(1.0), re(6.0)]], vec![5.0, 7.0]),
    ];
    for (idx, (rows, want)) in fixed.iter().enumerate() {
        let m = HermitianMatrix::from_rows(rows.clone()).unwrap();
        let got = eigenvalues_hermitian(&m).unwrap().eigenvalues;
        for (g, w) in got.iter().zip(want) {
            if (g - w).abs() > 1e-10 {
                failures.push(format!("fixed case {idx}: got {got:?}, want {want:?}"));
                break;
            }
        }
    }

    // Trace and determinant invariants on random Hermitian matrices.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..200 {
        let n = 2 + trial % 7;
        let mut rows = vec![vec![re(0.0); n]; n];
        for j in 0..n {
            rows[j][j] = re(rng.gen_range(-2.0..2.0));
            for k in (j + 1)..n {
                let e = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                rows[j][k] = e;
                rows[k][j] = e.conj();
            }
        }
        let m = HermitianMatrix::from_rows(rows).unwrap();
        let eigs = eigenvalues_hermitian(&m).unwrap().eigenvalues;
        let trace: f64 = (0..n).map(|j| m.get(j, j).re).sum();
        let eig_sum: f64 = eigs.iter().sum();
        let scale: f64 = eigs.iter().map(|e| e.abs()).sum::<f64>().max(1.0);
        if (trace - eig_sum).abs() > 1e-10 * scale {
            failures.push(format!(
                "trial {trial} n={n}: trace {trace} vs eig sum {eig_sum}"
            ));
        }
        let det = lu_det(&m);
        let eig_prod: f64 = eigs.iter().product();
        let det_scale = eigs.iter().map(|e| e.abs().max(1e-3)).product::<f64>();
        if (det - eig_prod).abs() > 1e-8 * det_scale.max(1.0) {
            failures.push(format!(
                "trial {trial} n={n}: det {det} vs eig product {eig_prod}"
            ));
        }
    }

    verdict("criterion 8 (eigensolver against closed forms)", failures);
}
