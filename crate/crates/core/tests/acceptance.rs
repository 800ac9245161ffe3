//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tue_core::harness::output::{self, Table};
use tue_core::harness::{
    border_moduli_check, closed_form_check, conjecture_test, expectation_scan, figure1_data, kostlan_check,
    sample_spectra, verify_overlaps, ExperimentConfig, FactorMode,
};
use tue_core::potentials::{
    bulk_limit, conditional_normalizer, conditional_product_expectation, continuant_solve, edge_limit,
    expected_diag_overlap_tue1, moment_determinant_oracle, product_parameters, Potential,
};

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn cfg(n: usize, m: usize, trials: usize, seed: u64) -> ExperimentConfig {
    ExperimentConfig { n, m, trials, seed, ..Default::default() }
}

fn dual_pipeline() -> Outcome {
    let c = ExperimentConfig { gap_tol: 1e-4, random_cycles: 20, q_max: 3, workers: 1, ..cfg(10, 1, 200, 42) };
    let start = Instant::now();
    let r = verify_overlaps(&c).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let discard_rate = (r.samples_discarded_degenerate + r.solver_failures) as f64 / c.trials as f64;
    Outcome {
        name: "dual-pipeline q-overlaps (N=10, 200 samples)",
        passed: r.max_rel_error < 1e-6 && secs < 60.0,
        detail: format!(
            "max rel err {:.3e} over {} comparisons, {} used, discard rate {:.1}%, {:.2} s single-threaded",
            r.max_rel_error,
            r.comparisons,
            r.samples_used,
            100.0 * discard_rate,
            secs
        ),
    }
}

fn border_moduli() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut comparisons = 0;
    for n in [1, 4, 16, 32] {
        let r = border_moduli_check(&cfg(n, 1, 100, 100 + n as u64)).unwrap();
        worst = worst.max(r.max_rel_error);
        comparisons += r.comparisons;
    }
    Outcome {
        name: "border vector moduli (N in {1,4,16,32}, 100 samples each)",
        passed: worst < 1e-8,
        detail: format!("max rel err {worst:.3e} over {comparisons} moduli"),
    }
}

fn entry_formulas() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut comparisons = 0;
    let mut discarded = 0;
    for n in [2, 3, 5, 8] {
        let r = closed_form_check(&cfg(n, 1, 100, 200 + n as u64)).unwrap();
        worst = worst.max(r.max_rel_error);
        comparisons += r.comparisons;
        discarded += r.discards.total();
    }
    Outcome {
        name: "eigenvector entries and scalar products (N in {2,3,5,8}, 100 samples each)",
        passed: worst < 1e-8,
        detail: format!("max rel err {worst:.3e} over {comparisons} values, {discarded} samples discarded"),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn continuant_machinery() -> Outcome {
    let p = Potential::truncated_unitary();
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    let mut oracle_worst: f64 = 0.0;
    for n in 3..=6 {
        for _ in 0..50 {
            let z1 = loop {
                let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                if z.norm() < 0.99 {
                    break z;
                }
            };
            let alpha = rng.random_range(0.2..5.0);
            let (a, b) = product_parameters(z1.norm_sqr(), alpha);
            let oracle = moment_determinant_oracle(&p, n, z1, a, b).unwrap().exp();
            let rec = continuant_solve(&p, n, z1.norm_sqr(), a, b).unwrap().exp();
            oracle_worst = oracle_worst.max(rel(oracle, rec));
        }
    }
    let mut ratio_worst: f64 = 0.0;
    for n in 1..=12 {
        for _ in 0..50 {
            let z = rng.random_range(0.01..0.99);
            for alpha in [0.5, 2.0, 1.0 / z, rng.random_range(0.2..5.0)] {
                let (a, b) = product_parameters(z, alpha);
                let ratio = (continuant_solve(&p, n, z, a, b).unwrap() - conditional_normalizer(&p, n, z).unwrap()).exp();
                let closed = conditional_product_expectation(&p, n, z, alpha).unwrap();
                ratio_worst = ratio_worst.max(rel(closed, ratio));
            }
        }
    }
    Outcome {
        name: "continuant machinery (oracle N=3..6, ratio N<=12)",
        passed: oracle_worst < 1e-10 && ratio_worst < 1e-10,
        detail: format!("oracle vs recursion {oracle_worst:.3e}, closed form vs recursion ratio {ratio_worst:.3e}"),
    }
}

/// `rho(x) = sum_k k x^(k-1) / n`: density of `|lambda|^2` for one eigenvalue
/// of TUE(n, 1) picked uniformly.
fn radial_density(n: usize, x: f64) -> f64 {
    (1..=n).map(|k| k as f64 * x.powi(k as i32 - 1)).sum::<f64>() / n as f64
}

/// Density-weighted average of the exact expectation across `[a, b]`.
fn bin_average(n: usize, a: f64, b: f64) -> f64 {
    let panels = 400;
    let h = (b - a) / panels as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..=panels {
        let x = (a + i as f64 * h).min(1.0 - 1e-12);
        let w = if i == 0 || i == panels { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let r = radial_density(n, x);
        num += w * r * expected_diag_overlap_tue1(n, x).unwrap();
        den += w * r;
    }
    num / den
}

fn conditional_expectation_mc() -> (Outcome, String) {
    let c = ExperimentConfig { bins: 40, workers: 8, ..cfg(50, 1, 10_000, 7) };
    let start = Instant::now();
    let r = expectation_scan(&c).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let checked: Vec<_> = r.bins.iter().filter(|b| b.count >= 200).collect();
    let outside: Vec<String> = checked
        .iter()
        .filter(|b| !(0.95..=1.05).contains(&b.ratio))
        .map(|b| format!("bin {} ratio {:.3}", b.bin, b.ratio))
        .collect();
    let outcome = Outcome {
        name: "conditional expectation Monte Carlo (N=50, 10^4 samples, 40 bins)",
        passed: outside.is_empty() && secs < 300.0,
        detail: format!(
            "{} of {} bins with >=200 points outside [0.95, 1.05]{}{}; {:.1} s",
            outside.len(),
            checked.len(),
            if outside.is_empty() { "" } else { ": " },
            outside.join(", "),
            secs
        ),
    };

    // not a criterion: compare each bin with the density-weighted average of
    // the exact curve over the bin, in units of the bin's standard error
    let width = 1.0 / c.bins as f64;
    let mut within = 0;
    let mut worst_z: f64 = 0.0;
    for b in &checked {
        let avg = bin_average(c.n, b.bin as f64 * width, (b.bin + 1) as f64 * width);
        let z = (b.mean_overlap - avg) / b.std_error;
        worst_z = worst_z.max(z.abs());
        if z.abs() < 3.0 {
            within += 1;
        }
    }
    let note = format!(
        "{within} of {} bins within 3 standard errors of the bin-averaged exact curve (largest |z| = {worst_z:.2})",
        checked.len()
    );
    (outcome, note)
}

fn limits() -> Outcome {
    let n = 10_000;
    let mut edge_worst: f64 = 0.0;
    for kappa in [0.5, 1.0, 2.0, 5.0] {
        let e = expected_diag_overlap_tue1(n, 1.0 - kappa / n as f64).unwrap();
        edge_worst = edge_worst.max((e - edge_limit(kappa).unwrap()).abs());
    }
    let mut bulk_worst: f64 = 0.0;
    for r in [0.3f64, 0.5, 0.7] {
        let e = expected_diag_overlap_tue1(n, r * r).unwrap() / n as f64;
        bulk_worst = bulk_worst.max((e - bulk_limit(r * r).unwrap()).abs());
    }
    Outcome {
        name: "edge and bulk limits at N=10^4",
        passed: edge_worst < 5e-3 && bulk_worst < 1e-2,
        detail: format!("edge max abs err {edge_worst:.3e}, bulk max abs err {bulk_worst:.3e}"),
    }
}

fn kostlan() -> Outcome {
    let mut failures = Vec::new();
    let mut tests = 0;
    for m in [1, 2] {
        let r = kostlan_check(&cfg(8, m, 10_000, 1)).unwrap();
        for row in &r.rows {
            tests += 1;
            if !row.passed {
                failures.push(format!("M={m} k={} D={:.4} > {:.4}", row.k, row.ks.statistic, row.ks.critical_1pct));
            }
        }
    }
    Outcome {
        name: "Kostlan order statistics (N=8, M in {1,2}, 10^4 samples)",
        passed: failures.is_empty(),
        detail: format!("{} of {tests} KS tests rejected at 1%{}", failures.len(), if failures.is_empty() { String::new() } else { format!(": {}", failures.join(", ")) }),
    }
}

fn rank_one_product() -> (Outcome, String) {
    let c = ExperimentConfig { gap_tol: 1e-6, ..cfg(10, 1, 2000, 11) };
    let edge = conjecture_test(&c, FactorMode::EdgeCorrected).unwrap();
    let written = conjecture_test(&c, FactorMode::AsWritten).unwrap();
    let err = edge.per_sample_max_error.unwrap_or(f64::NAN);
    let outcome = Outcome {
        name: "synthetic product at M=1, edge-corrected factors",
        passed: err < 1e-10,
        detail: format!(
            "per-sample max rel err {err:.3e} over {} samples; KS {:.4} (1% critical {:.4})",
            edge.synthetic_samples, edge.ks.statistic, edge.ks.critical_1pct
        ),
    };
    let note = format!(
        "as-written factors at M=1: KS {:.4} (1% critical {:.4}), mean numeric {:.3}, mean synthetic {:.3}",
        written.ks.statistic, written.ks.critical_1pct, written.mean_numeric, written.mean_synthetic
    );
    (outcome, note)
}

fn bytes(t: &Table) -> Vec<u8> {
    let mut buf = Vec::new();
    output::write_csv(&mut buf, t).unwrap();
    buf
}

fn all_outputs(c: &ExperimentConfig) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let v = verify_overlaps(c).unwrap();
    out.push(bytes(&output::verification_table(&v)));
    let mut json = Vec::new();
    output::write_json(&mut json, c, &v, &v.discards(), None).unwrap();
    out.push(json);
    out.push(bytes(&output::expectation_table(&expectation_scan(c).unwrap())));
    for mode in [FactorMode::AsWritten, FactorMode::EdgeCorrected] {
        out.push(bytes(&output::conjecture_table(&conjecture_test(c, mode).unwrap())));
    }
    out.push(bytes(&output::kostlan_table(&kostlan_check(c).unwrap())));
    out.push(bytes(&output::sample_table(&sample_spectra(c).unwrap())));
    out.push(bytes(&output::figure1_table(&figure1_data(c.n, c.seed).unwrap())));
    out
}

fn determinism() -> Outcome {
    let base = ExperimentConfig { workers: 1, ..cfg(8, 1, 60, 99) };
    let first = all_outputs(&base);
    let again = all_outputs(&base);
    let parallel = all_outputs(&ExperimentConfig { workers: 4, ..base.clone() });
    let repeat_ok = first == again;
    let parallel_ok = first == parallel;
    Outcome {
        name: "determinism (reruns and 1 vs 4 workers)",
        passed: repeat_ok && parallel_ok,
        detail: format!("{} outputs compared; rerun identical: {repeat_ok}, worker-count identical: {parallel_ok}", first.len()),
    }
}

fn main() -> ExitCode {
    let mut notes = Vec::new();
    let (mc, mc_note) = conditional_expectation_mc();
    let (product, product_note) = rank_one_product();
    notes.push(mc_note);
    notes.push(product_note);
    let outcomes = [
        dual_pipeline(),
        border_moduli(),
        entry_formulas(),
        continuant_machinery(),
        mc,
        limits(),
        kostlan(),
        product,
        determinism(),
    ];
    println!();
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    for n in &notes {
        println!("NOTE {n}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("\nacceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
