use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::Serialize;

use super::config::{ExperimentConfig, FactorMode};
use super::ks::{ks_two_sample, KSResult};
use super::pool::run_trials;
use super::trial::{analyze_tue, schur_outcome, trial_stream, Discards, Outcome};
use crate::ensembles::sample_tue;
use crate::error::Result;
use crate::linalg::min_eigengap;
use crate::overlaps::{diagonal_overlap_formula, diagonal_overlap_numeric};

/// Salt of the stream that draws the synthetic sample's spectra.
const SYNTHETIC_SALT: u64 = 0x5359_4e54;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureSample {
    pub trial: u64,
    pub source: &'static str,
    pub index: usize,
    pub abs_sq: f64,
    pub overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub mode: FactorMode,
    pub ks: KSResult,
    pub numeric_samples: usize,
    pub synthetic_samples: usize,
    pub numeric_discards: Discards,
    pub synthetic_discards: Discards,
    pub mean_numeric: f64,
    pub mean_synthetic: f64,
    /// Largest relative gap between the synthetic product and the closed-form
    /// diagonal overlap; only computed when `m = 1` in edge-corrected mode.
    pub per_sample_max_error: Option<f64>,
    #[serde(skip)]
    pub samples: Vec<ConjectureSample>,
}

/// `prod_{k != i} (1 + c_k Y_k)` over the spectrum, with `Y_k ~ Beta(1, m-1)`
/// (identically 1 when `m = 1`).
fn synthetic_overlap<R: Rng + ?Sized>(
    eigs: &[Complex64],
    i: usize,
    m: usize,
    mode: FactorMode,
    rng: &mut R,
) -> f64 {
    let beta = (m > 1).then(|| Beta::new(1.0, (m - 1) as f64).expect("positive shape"));
    let li = eigs[i];
    let mut prod = 1.0;
    for (k, &lk) in eigs.iter().enumerate() {
        if k == i {
            continue;
        }
        let y = beta.as_ref().map_or(1.0, |b| b.sample(rng));
        let d = (li - lk).norm_sqr();
        let c = match mode {
            // (l_i - conj l_i)(l_k - conj l_k) = -4 Im l_i Im l_k
            FactorMode::AsWritten => 4.0 * li.im * lk.im / d,
            FactorMode::EdgeCorrected => (1.0 - li.norm_sqr()) * (1.0 - lk.norm_sqr()) / d,
        };
        prod *= 1.0 + c * y;
    }
    prod
}

struct Drawn {
    sample: ConjectureSample,
    formula_error: Option<f64>,
}

fn numeric_draw(cfg: &ExperimentConfig, t: u64) -> Result<Outcome<Drawn>> {
    let mut rng = trial_stream(cfg.seed, t).generator();
    let a = match analyze_tue(cfg.n, cfg.m, cfg.gap_tol, &mut rng)? {
        Outcome::Used(a) => a,
        Outcome::Degenerate => return Ok(Outcome::Degenerate),
        Outcome::SolverFailure => return Ok(Outcome::SolverFailure),
    };
    let i = rng.random_range(0..cfg.n);
    Ok(Outcome::Used(Drawn {
        sample: ConjectureSample {
            trial: t,
            source: "numeric",
            index: i,
            abs_sq: a.schur.eigenvalues[i].norm_sqr(),
            overlap: diagonal_overlap_numeric(&a.eigen, i)?,
        },
        formula_error: None,
    }))
}

fn synthetic_draw(cfg: &ExperimentConfig, mode: FactorMode, t: u64) -> Result<Outcome<Drawn>> {
    let mut rng = trial_stream(cfg.seed, t).derive(SYNTHETIC_SALT).generator();
    let ts = sample_tue(cfg.n, cfg.m, &mut rng)?;
    let sf = match schur_outcome(&ts.g)? {
        Outcome::Used(sf) => sf,
        Outcome::Degenerate => return Ok(Outcome::Degenerate),
        Outcome::SolverFailure => return Ok(Outcome::SolverFailure),
    };
    let eigs = &sf.eigenvalues;
    if min_eigengap(eigs).is_some_and(|(_, _, gap)| gap <= cfg.gap_tol) {
        return Ok(Outcome::Degenerate);
    }
    let i = rng.random_range(0..cfg.n);
    let overlap = synthetic_overlap(eigs, i, cfg.m, mode, &mut rng);
    let formula_error = if cfg.m == 1 && mode == FactorMode::EdgeCorrected {
        let exact = diagonal_overlap_formula(eigs, i)?;
        Some((overlap - exact).abs() / exact)
    } else {
        None
    };
    Ok(Outcome::Used(Drawn {
        sample: ConjectureSample {
            trial: t,
            source: "synthetic",
            index: i,
            abs_sq: eigs[i].norm_sqr(),
            overlap,
        },
        formula_error,
    }))
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Two-sample comparison of the diagonal overlap of a uniformly chosen
/// eigenvalue: (A) from eigenvectors of sampled matrices, (B) from the
/// product over independently sampled spectra.
pub fn conjecture_test(cfg: &ExperimentConfig, mode: FactorMode) -> Result<ConjectureReport> {
    cfg.validate()?;
    let pairs = run_trials(cfg.workers, cfg.trials, |t| Ok((numeric_draw(cfg, t)?, synthetic_draw(cfg, mode, t)?)))?;

    let mut numeric_discards = Discards::default();
    let mut synthetic_discards = Discards::default();
    let mut samples = Vec::with_capacity(2 * cfg.trials);
    let mut a = Vec::with_capacity(cfg.trials);
    let mut b = Vec::with_capacity(cfg.trials);
    let mut max_err: Option<f64> = None;
    for (na, sb) in pairs {
        numeric_discards.record(&na);
        synthetic_discards.record(&sb);
        if let Some(d) = na.used() {
            a.push(d.sample.overlap);
            samples.push(d.sample);
        }
        if let Some(d) = sb.used() {
            if let Some(e) = d.formula_error {
                max_err = Some(max_err.map_or(e, |m| if e > m || e.is_nan() { e } else { m }));
            }
            b.push(d.sample.overlap);
            samples.push(d.sample);
        }
    }
    let ks = ks_two_sample(&a, &b)?;
    Ok(ConjectureReport {
        mode,
        ks,
        numeric_samples: a.len(),
        synthetic_samples: b.len(),
        numeric_discards,
        synthetic_discards,
        mean_numeric: mean(&a),
        mean_synthetic: mean(&b),
        per_sample_max_error: max_err,
        samples,
    })
}
