use serde::Serialize;

use super::config::ExperimentConfig;
use super::pool::run_trials;
use super::trial::{analyze_tue, trial_stream, Discards, Outcome};
use crate::error::Result;
use crate::overlaps::diagonal_overlap_numeric;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledEigenvalue {
    pub trial: u64,
    pub index: usize,
    pub re: f64,
    pub im: f64,
    pub abs_sq: f64,
    /// `O_ii` from the numeric eigenvectors.
    pub overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub rows: Vec<SampledEigenvalue>,
    pub discards: Discards,
}

/// Eigenvalues and diagonal overlaps of `cfg.trials` TUE(n, m) draws, in
/// Schur order.
pub fn sample_spectra(cfg: &ExperimentConfig) -> Result<SampleReport> {
    cfg.validate()?;
    let outcomes = run_trials(cfg.workers, cfg.trials, |t| {
        let mut rng = trial_stream(cfg.seed, t).generator();
        Ok(match analyze_tue(cfg.n, cfg.m, cfg.gap_tol, &mut rng)? {
            Outcome::Used(a) => Outcome::Used(
                a.schur
                    .eigenvalues
                    .iter()
                    .enumerate()
                    .map(|(index, z)| {
                        Ok(SampledEigenvalue {
                            trial: t,
                            index,
                            re: z.re,
                            im: z.im,
                            abs_sq: z.norm_sqr(),
                            overlap: diagonal_overlap_numeric(&a.eigen, index)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Outcome::Degenerate => Outcome::Degenerate,
            Outcome::SolverFailure => Outcome::SolverFailure,
        })
    })?;
    let mut discards = Discards::default();
    let mut rows = Vec::new();
    for outcome in outcomes {
        discards.record(&outcome);
        rows.extend(outcome.used().into_iter().flatten());
    }
    Ok(SampleReport { rows, discards })
}
