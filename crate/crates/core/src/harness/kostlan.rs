use serde::Serialize;

use super::config::ExperimentConfig;
use super::ks::{ks_two_sample, KSResult};
use super::pool::run_trials;
use super::trial::{schur_outcome, trial_stream, Discards, Outcome};
use crate::ensembles::{kostlan_radii, sample_tue};
use crate::error::Result;

/// Salt of the stream that draws the reference Beta radii.
const REFERENCE_SALT: u64 = 0x4b4f_5354;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KostlanRow {
    /// 1-based order statistic of the squared radii.
    pub k: usize,
    pub ks: KSResult,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KostlanReport {
    pub rows: Vec<KostlanRow>,
    pub discards: Discards,
    /// Sample mean of `sum_i |lambda_i|^2`.
    pub sum_abs_sq_mean: f64,
    pub sum_abs_sq_std_error: f64,
    /// `sum_k k / (k + m)`.
    pub sum_abs_sq_expected: f64,
}

impl KostlanReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

fn sorted(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    xs
}

/// Per order statistic, KS between sorted squared eigenvalue moduli of
/// TUE(n, m) and sorted independent Beta(k, m) draws.
pub fn kostlan_check(cfg: &ExperimentConfig) -> Result<KostlanReport> {
    cfg.validate()?;
    let outcomes = run_trials(cfg.workers, cfg.trials, |t| {
        let stream = trial_stream(cfg.seed, t);
        let ts = sample_tue(cfg.n, cfg.m, &mut stream.generator())?;
        Ok(match schur_outcome(&ts.g)? {
            Outcome::Used(sf) => {
                let observed = sorted(sf.eigenvalues.iter().map(|z| z.norm_sqr()).collect());
                let reference = sorted(kostlan_radii(cfg.n, cfg.m, &mut stream.derive(REFERENCE_SALT).generator())?);
                Outcome::Used((observed, reference))
            }
            Outcome::Degenerate => Outcome::Degenerate,
            Outcome::SolverFailure => Outcome::SolverFailure,
        })
    })?;

    let mut discards = Discards::default();
    let mut observed = vec![Vec::new(); cfg.n];
    let mut reference = vec![Vec::new(); cfg.n];
    let mut sums = Vec::new();
    for outcome in outcomes {
        discards.record(&outcome);
        if let Some((o, r)) = outcome.used() {
            sums.push(o.iter().sum::<f64>());
            for k in 0..cfg.n {
                observed[k].push(o[k]);
                reference[k].push(r[k]);
            }
        }
    }
    let rows = (0..cfg.n)
        .map(|k| {
            let ks = ks_two_sample(&observed[k], &reference[k])?;
            Ok(KostlanRow { k: k + 1, ks, passed: ks.passes() })
        })
        .collect::<Result<Vec<_>>>()?;
    let c = sums.len() as f64;
    let mean = sums.iter().sum::<f64>() / c;
    let var = sums.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (c - 1.0).max(1.0);
    Ok(KostlanReport {
        rows,
        discards,
        sum_abs_sq_mean: mean,
        sum_abs_sq_std_error: (var / c).sqrt(),
        sum_abs_sq_expected: (1..=cfg.n).map(|k| k as f64 / (k + cfg.m) as f64).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_is_uniform() {
        let cfg = ExperimentConfig { n: 1, m: 1, trials: 2000, seed: 5, ..Default::default() };
        let r = kostlan_check(&cfg).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.all_passed());
        assert!((r.sum_abs_sq_expected - 0.5).abs() < 1e-15);
    }
}
