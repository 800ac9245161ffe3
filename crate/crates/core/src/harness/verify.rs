use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::pool::run_trials;
use super::trial::{analyze_tue, schur_outcome, trial_stream, Discards, Outcome};
use crate::ensembles::{border_vector_v, border_vector_w, predicted_v_moduli, predicted_w_moduli, sample_tue};
use crate::error::{Error, Result};
use crate::logpolar::relative_error;
use crate::overlaps::{
    eigvec_entry_formulas, left_inner, q_overlap_formula, q_overlap_numeric, right_inner,
    scalar_product_formulas, OverlapCycle,
};

/// Moduli below this are too small for a meaningful relative comparison.
const MODULUS_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstCase {
    pub trial: u64,
    pub cycle: String,
    pub numeric: [f64; 2],
    pub formula: [f64; 2],
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialVerification {
    pub trial: u64,
    pub status: &'static str,
    pub comparisons: usize,
    pub max_rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub samples_used: usize,
    pub samples_discarded_degenerate: usize,
    pub solver_failures: usize,
    pub comparisons: usize,
    pub max_rel_error: f64,
    pub mean_rel_error: f64,
    pub worst_case: Option<WorstCase>,
    #[serde(skip)]
    pub per_trial: Vec<TrialVerification>,
}

impl VerificationReport {
    pub fn discards(&self) -> Discards {
        Discards {
            degenerate: self.samples_discarded_degenerate,
            solver_failures: self.solver_failures,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct ErrorStats {
    count: usize,
    sum: f64,
    max: f64,
    skipped: usize,
    worst: Option<WorstCase>,
}

impl ErrorStats {
    fn push(&mut self, err: f64) -> bool {
        self.count += 1;
        self.sum += err;
        // NaN counts as worse than anything
        if err > self.max || (err.is_nan() && !self.max.is_nan()) {
            self.max = err;
            true
        } else {
            false
        }
    }

    fn merge(&mut self, other: &ErrorStats) {
        self.count += other.count;
        self.sum += other.sum;
        self.skipped += other.skipped;
        if other.max > self.max || (other.max.is_nan() && !self.max.is_nan()) {
            self.max = other.max;
            self.worst = other.worst.clone();
        }
    }

    fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum / self.count as f64
        }
    }
}

fn random_cycle<R: Rng + ?Sized>(n: usize, q_max: usize, rng: &mut R) -> OverlapCycle {
    let q = rng.random_range(1..=q_max);
    let indices = (0..2 * q).map(|_| rng.random_range(0..n)).collect();
    OverlapCycle::new(indices).expect("even, non-empty")
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn degenerate_as_discard<T>(r: Result<T>) -> Result<Outcome<T>> {
    match r {
        Ok(x) => Ok(Outcome::Used(x)),
        Err(Error::DegenerateSpectrum { .. }) | Err(Error::ZeroComponent { .. }) => Ok(Outcome::Degenerate),
        Err(e) => Err(e),
    }
}

fn verify_trial(cfg: &ExperimentConfig, t: u64) -> Result<Outcome<ErrorStats>> {
    let mut rng = trial_stream(cfg.seed, t).generator();
    let a = match analyze_tue(cfg.n, 1, cfg.gap_tol, &mut rng)? {
        Outcome::Used(a) => a,
        Outcome::Degenerate => return Ok(Outcome::Degenerate),
        Outcome::SolverFailure => return Ok(Outcome::SolverFailure),
    };
    let mut cycles: Vec<OverlapCycle> = (0..cfg.n).map(OverlapCycle::diagonal).collect();
    cycles.extend((0..cfg.random_cycles).map(|_| random_cycle(cfg.n, cfg.q_max, &mut rng)));
    degenerate_as_discard((|| {
        let mut stats = ErrorStats::default();
        for cycle in &cycles {
            let numeric = q_overlap_numeric(&a.eigen, cycle)?;
            let formula = q_overlap_formula(&a.schur.eigenvalues, cycle)?;
            let err = relative_error(numeric, formula);
            if stats.push(err) {
                stats.worst = Some(WorstCase {
                    trial: t,
                    cycle: cycle.to_string(),
                    numeric: pair(numeric),
                    formula: pair(formula),
                    rel_error: err,
                });
            }
        }
        Ok(stats)
    })())
}

/// Compares `q_overlap_numeric` against `q_overlap_formula` over all diagonal
/// cycles and `cfg.random_cycles` random cycles per trial.
pub fn verify_overlaps(cfg: &ExperimentConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    cfg.require_rank_one()?;
    let outcomes = run_trials(cfg.workers, cfg.trials, |t| verify_trial(cfg, t))?;
    let mut discards = Discards::default();
    let mut total = ErrorStats::default();
    let mut per_trial = Vec::with_capacity(outcomes.len());
    for (t, outcome) in outcomes.into_iter().enumerate() {
        discards.record(&outcome);
        let row = match &outcome {
            Outcome::Used(s) => {
                total.merge(s);
                TrialVerification {
                    trial: t as u64,
                    status: "used",
                    comparisons: s.count,
                    max_rel_error: s.max,
                }
            }
            Outcome::Degenerate => TrialVerification {
                trial: t as u64,
                status: "degenerate",
                comparisons: 0,
                max_rel_error: 0.0,
            },
            Outcome::SolverFailure => TrialVerification {
                trial: t as u64,
                status: "solver_failure",
                comparisons: 0,
                max_rel_error: 0.0,
            },
        };
        per_trial.push(row);
    }
    Ok(VerificationReport {
        samples_used: cfg.trials - discards.total(),
        samples_discarded_degenerate: discards.degenerate,
        solver_failures: discards.solver_failures,
        comparisons: total.count,
        max_rel_error: total.max,
        mean_rel_error: total.mean(),
        worst_case: total.worst,
        per_trial,
    })
}

/// Error summary for the closed-form checks of border vectors and
/// eigenvector entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormReport {
    pub samples_used: usize,
    pub discards: Discards,
    pub comparisons: usize,
    pub skipped_small: usize,
    pub max_rel_error: f64,
    pub mean_rel_error: f64,
}

fn summarize(trials: usize, outcomes: Vec<Outcome<ErrorStats>>) -> ClosedFormReport {
    let mut discards = Discards::default();
    let mut total = ErrorStats::default();
    for outcome in outcomes {
        discards.record(&outcome);
        if let Some(s) = outcome.used() {
            total.merge(&s);
        }
    }
    ClosedFormReport {
        samples_used: trials - discards.total(),
        discards,
        comparisons: total.count,
        skipped_small: total.skipped,
        max_rel_error: total.max,
        mean_rel_error: total.mean(),
    }
}

fn moduli_errors(stats: &mut ErrorStats, observed: &[Complex64], predicted: &[f64]) {
    for (z, &p) in observed.iter().zip(predicted) {
        if p > MODULUS_FLOOR {
            stats.push((z.norm_sqr() - p).abs() / p);
        } else {
            stats.skipped += 1;
        }
    }
}

/// `|v_k|^2` and `|w_k|^2` from the border of the parent unitary against
/// their eigenvalue-only predictions.
pub fn border_moduli_check(cfg: &ExperimentConfig) -> Result<ClosedFormReport> {
    cfg.validate()?;
    cfg.require_rank_one()?;
    let outcomes = run_trials(cfg.workers, cfg.trials, |t| {
        let mut rng = trial_stream(cfg.seed, t).generator();
        let ts = sample_tue(cfg.n, 1, &mut rng)?;
        let sf = match schur_outcome(&ts.g)? {
            Outcome::Used(sf) => sf,
            Outcome::Degenerate => return Ok(Outcome::Degenerate),
            Outcome::SolverFailure => return Ok(Outcome::SolverFailure),
        };
        let mut stats = ErrorStats::default();
        moduli_errors(&mut stats, &border_vector_v(&ts, &sf)?, &predicted_v_moduli(&sf.eigenvalues)?);
        moduli_errors(&mut stats, &border_vector_w(&ts, &sf)?, &predicted_w_moduli(&sf.eigenvalues)?);
        Ok(Outcome::Used(stats))
    })?;
    Ok(summarize(cfg.trials, outcomes))
}

fn push_relative(stats: &mut ErrorStats, numeric: Complex64, formula: Complex64) {
    if formula.norm() > 0.0 {
        stats.push(relative_error(numeric, formula));
    } else {
        stats.skipped += 1;
    }
}

/// Eigenvector entries `l_ij`, `r_ji` and the scalar products
/// `<L_i|L_j>`, `<R_j|R_i>` from eigenvalues and `v`, against the numeric
/// eigenvectors.
pub fn closed_form_check(cfg: &ExperimentConfig) -> Result<ClosedFormReport> {
    cfg.validate()?;
    cfg.require_rank_one()?;
    let outcomes = run_trials(cfg.workers, cfg.trials, |t| {
        let mut rng = trial_stream(cfg.seed, t).generator();
        let a = match analyze_tue(cfg.n, 1, cfg.gap_tol, &mut rng)? {
            Outcome::Used(a) => a,
            Outcome::Degenerate => return Ok(Outcome::Degenerate),
            Outcome::SolverFailure => return Ok(Outcome::SolverFailure),
        };
        let v = border_vector_v(&a.sample, &a.schur)?;
        let eigs = &a.schur.eigenvalues;
        let es = &a.eigen;
        degenerate_as_discard((|| {
            let mut stats = ErrorStats::default();
            for i in 0..cfg.n {
                for j in 0..cfg.n {
                    if i < j {
                        let (l, r) = eigvec_entry_formulas(eigs, &v, i, j)?;
                        push_relative(&mut stats, es.left[i][j], l);
                        push_relative(&mut stats, es.right[j][i], r);
                    }
                    let (ll, rr) = scalar_product_formulas(eigs, &v, i, j)?;
                    push_relative(&mut stats, left_inner(es, i, j)?, ll);
                    push_relative(&mut stats, right_inner(es, j, i)?, rr);
                }
            }
            Ok(stats)
        })())
    })?;
    Ok(summarize(cfg.trials, outcomes))
}
