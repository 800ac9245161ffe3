use num_complex::Complex64;
use proptest::prelude::*;

use tue_core::potentials::{
    bulk_limit, conditional_normalizer, conditional_product_expectation, continuant_solve, edge_limit,
    expected_diag_overlap_tue1, gamma_v, ln_e_v_partial, moment_determinant_oracle, product_parameters,
    Potential,
};

/// Composite Simpson rule on `[a, b]` with `2k` panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, k: usize) -> f64 {
    let h = (b - a) / (2 * k) as f64;
    let mut s = f(a) + f(b);
    for i in 1..2 * k {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn gaussian_gamma_against_quadrature() {
    let p = Potential::gaussian();
    for &alpha in &[1.0, 2.5, 3.0, 6.0] {
        let quad = simpson(|t| t.powf(alpha - 1.0) * (-t).exp(), 0.0, 60.0, 20_000);
        assert!(rel(gamma_v(&p, alpha).unwrap(), quad) < 1e-9, "alpha={alpha}");
    }
    assert!((gamma_v(&p, 3.0).unwrap() - 2.0).abs() < 1e-13);
}

#[test]
fn spherical_gamma_against_quadrature() {
    // t = s/(1-s) maps [0, inf) onto [0, 1)
    let p = Potential::spherical(6.0);
    for &alpha in &[1.0, 2.0, 3.5] {
        let quad = simpson(
            |s| {
                if s >= 1.0 {
                    return 0.0;
                }
                let t = s / (1.0 - s);
                t.powf(alpha - 1.0) * (1.0 + t).powf(-6.0) / ((1.0 - s) * (1.0 - s))
            },
            0.0,
            1.0,
            20_000,
        );
        assert!(rel(gamma_v(&p, alpha).unwrap(), quad) < 1e-8, "alpha={alpha}");
    }
}

#[test]
fn oracle_hand_value() {
    let p = Potential::truncated_unitary();
    let d = moment_determinant_oracle(&p, 2, Complex64::new(0.5, 0.0), 0.0, 0.0).unwrap();
    assert!((d - 0.75f64.ln()).abs() < 1e-15);
}

#[test]
fn rank_one_product_special_alpha() {
    let p = Potential::truncated_unitary();
    for n in [2usize, 5, 30] {
        for &z in &[0.2, 0.7] {
            let got = conditional_product_expectation(&p, n, z, 1.0 / z).unwrap();
            let m = n - 1;
            let want = (m as f64 * z.ln() + ln_e_v_partial(&p, m, 1.0 / z).unwrap() - ln_e_v_partial(&p, m, z).unwrap()).exp();
            assert!(rel(got, want) < 1e-12);
        }
    }
}

#[test]
fn edge_and_bulk_regimes() {
    let n = 10_000;
    for &kappa in &[0.5, 1.0, 2.0, 5.0] {
        let e = expected_diag_overlap_tue1(n, 1.0 - kappa / n as f64).unwrap();
        assert!((e - edge_limit(kappa).unwrap()).abs() <= 5e-3, "kappa={kappa}");
    }
    for &r in &[0.3f64, 0.5, 0.7] {
        let e = expected_diag_overlap_tue1(n, r * r).unwrap() / n as f64;
        assert!((e - bulk_limit(r * r).unwrap()).abs() < 1e-3, "r={r}");
    }
    let e = expected_diag_overlap_tue1(2000, 0.25).unwrap() / 2000.0;
    assert!((e - 0.75).abs() < 0.0075);
}

#[test]
fn edge_limit_asymptote() {
    for &k in &[30.0, 100.0] {
        assert!((edge_limit(k).unwrap() - (k - 1.0)).abs() < 1e-9);
    }
}

#[test]
fn decreasing_in_radius() {
    for n in 1..=100 {
        let mut prev = f64::INFINITY;
        for step in 0..200 {
            let x = step as f64 / 200.0;
            let e = expected_diag_overlap_tue1(n, x).unwrap();
            if n == 1 {
                assert!((e - 1.0).abs() < 1e-12);
            } else {
                assert!(e < prev, "n={n} x={x}");
            }
            prev = e;
        }
    }
}

#[test]
fn crossover_band_branches_agree() {
    // the closed form is used outside 1e-4, direct sums inside; compare each
    // side against the direct log-sum-exp of a custom potential with the same
    // Gamma function
    let tue = Potential::truncated_unitary();
    let same = Potential::custom("reciprocal", Some(1.0), |a| 1.0 / a);
    for m in [3usize, 40, 500] {
        for &d in &[1.1e-5, 5e-5, 2e-4, 9e-4] {
            for x in [1.0 - d, 1.0 + d] {
                let a = ln_e_v_partial(&tue, m, x).unwrap();
                let b = ln_e_v_partial(&same, m, x).unwrap();
                assert!((a.exp() - b.exp()).abs() <= 1e-9 * b.exp(), "m={m} x={x}");
            }
        }
    }
}

fn alpha_choice(z: f64, which: usize) -> f64 {
    [0.5, 2.0, 1.0 / z][which]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recursion_matches_closed_form(n in 1usize..=12, z in 0.01f64..0.99, which in 0usize..3) {
        let p = Potential::truncated_unitary();
        let alpha = alpha_choice(z, which);
        let (a, b) = product_parameters(z, alpha);
        let rec = continuant_solve(&p, n, z, a, b).unwrap();
        let closed = conditional_product_expectation(&p, n, z, alpha).unwrap().ln() + conditional_normalizer(&p, n, z).unwrap();
        prop_assert!(rel(rec.exp(), closed.exp()) <= 1e-10, "rec {} closed {}", rec, closed);
    }

    #[test]
    fn oracle_matches_recursion(n in 3usize..=6, re in -0.7f64..0.7, im in -0.7f64..0.7, alpha in 0.3f64..3.0) {
        let z1 = Complex64::new(re, im);
        prop_assume!(z1.norm() < 0.99);
        let z = z1.norm_sqr();
        let (a, b) = product_parameters(z, alpha);
        for p in [Potential::truncated_unitary(), Potential::gaussian()] {
            let oracle = moment_determinant_oracle(&p, n, z1, a, b).unwrap();
            let rec = continuant_solve(&p, n, z, a, b).unwrap();
            prop_assert!(rel(oracle.exp(), rec.exp()) < 1e-10);
        }
    }

    #[test]
    fn unweighted_recursion_is_normalizer(n in 1usize..=6, z in 0.0f64..0.99) {
        for p in [Potential::truncated_unitary(), Potential::gaussian(), Potential::spherical(20.0)] {
            let rec = continuant_solve(&p, n, z, 0.0, 0.0).unwrap();
            prop_assert!((rec - conditional_normalizer(&p, n, z).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_is_product_statistic(n in 1usize..200, x in 0.001f64..0.999) {
        let p = Potential::truncated_unitary();
        let a = expected_diag_overlap_tue1(n, x).unwrap();
        let b = conditional_product_expectation(&p, n, x, 1.0 / x).unwrap();
        prop_assert!(rel(a, b) <= 1e-12, "{} vs {}", a, b);
    }
}
