use serde::Serialize;

use super::config::ExperimentConfig;
use super::pool::run_trials;
use super::trial::{analyze_tue, trial_stream, Discards, Outcome};
use crate::error::Result;
use crate::overlaps::diagonal_overlap_numeric;
use crate::potentials::expected_diag_overlap_tue1;

/// Bins with fewer points than this are flagged as sparse.
pub const SPARSE_BIN_COUNT: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectationBin {
    pub bin: usize,
    pub center: f64,
    pub count: usize,
    pub mean_overlap: f64,
    /// Standard error of `mean_overlap` from the sample variance.
    pub std_error: f64,
    pub expected: f64,
    pub ratio: f64,
    pub sparse: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectationReport {
    pub bins: Vec<ExpectationBin>,
    pub discards: Discards,
}

#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    count: usize,
    sum: f64,
    sum_sq: f64,
}

fn bin_index(x: f64, bins: usize) -> usize {
    ((x * bins as f64) as usize).min(bins - 1)
}

/// Bins `(|lambda_i|^2, O_ii)` over every eigenvalue of every trial and
/// compares bin means with the exact conditional expectation at the bin
/// center.
pub fn expectation_scan(cfg: &ExperimentConfig) -> Result<ExpectationReport> {
    cfg.validate()?;
    cfg.require_rank_one()?;
    let outcomes = run_trials(cfg.workers, cfg.trials, |t| {
        let mut rng = trial_stream(cfg.seed, t).generator();
        Ok(match analyze_tue(cfg.n, 1, cfg.gap_tol, &mut rng)? {
            Outcome::Used(a) => {
                let points = (0..cfg.n)
                    .map(|i| Ok((a.schur.eigenvalues[i].norm_sqr(), diagonal_overlap_numeric(&a.eigen, i)?)))
                    .collect::<Result<Vec<_>>>()?;
                Outcome::Used(points)
            }
            Outcome::Degenerate => Outcome::Degenerate,
            Outcome::SolverFailure => Outcome::SolverFailure,
        })
    })?;

    let mut discards = Discards::default();
    let mut acc = vec![Acc::default(); cfg.bins];
    for outcome in outcomes {
        discards.record(&outcome);
        for (x, o) in outcome.used().into_iter().flatten() {
            let a = &mut acc[bin_index(x, cfg.bins)];
            a.count += 1;
            a.sum += o;
            a.sum_sq += o * o;
        }
    }

    let width = 1.0 / cfg.bins as f64;
    let bins = acc
        .iter()
        .enumerate()
        .map(|(b, a)| {
            let center = (b as f64 + 0.5) * width;
            let expected = expected_diag_overlap_tue1(cfg.n, center)?;
            let (mean, se) = if a.count == 0 {
                (f64::NAN, f64::NAN)
            } else {
                let c = a.count as f64;
                let mean = a.sum / c;
                let var = if a.count > 1 { (a.sum_sq - c * mean * mean).max(0.0) / (c - 1.0) } else { f64::NAN };
                (mean, (var / c).sqrt())
            };
            Ok(ExpectationBin {
                bin: b,
                center,
                count: a.count,
                mean_overlap: mean,
                std_error: se,
                expected,
                ratio: mean / expected,
                sparse: a.count < SPARSE_BIN_COUNT,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpectationReport { bins, discards })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_eigenvalue_means_are_one() {
        let cfg = ExperimentConfig { n: 1, trials: 200, bins: 8, seed: 3, ..Default::default() };
        let r = expectation_scan(&cfg).unwrap();
        assert_eq!(r.bins.iter().map(|b| b.count).sum::<usize>(), 200);
        for b in r.bins.iter().filter(|b| b.count > 0) {
            assert!((b.mean_overlap - 1.0).abs() < 1e-12);
            assert!((b.ratio - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bin_edges() {
        assert_eq!(bin_index(0.0, 40), 0);
        assert_eq!(bin_index(0.999_999, 40), 39);
        assert_eq!(bin_index(0.5, 4), 2);
    }
}
