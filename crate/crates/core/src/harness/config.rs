use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Config(format!("unknown format {other:?}, expected csv or json"))),
        }
    }
}

/// Factor used in the synthetic product for the diagonal overlap at general M.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorMode {
    /// `1 - (l_i - conj l_i)(l_k - conj l_k) / |l_i - l_k|^2 * Y`
    AsWritten,
    /// `1 + (1 - |l_i|^2)(1 - |l_k|^2) / |l_i - l_k|^2 * Y`
    EdgeCorrected,
}

impl FromStr for FactorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_written" => Ok(Self::AsWritten),
            "edge_corrected" => Ok(Self::EdgeCorrected),
            other => Err(Error::Config(format!(
                "unknown factor mode {other:?}, expected as_written or edge_corrected"
            ))),
        }
    }
}

impl fmt::Display for FactorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AsWritten => "as_written",
            Self::EdgeCorrected => "edge_corrected",
        })
    }
}

/// Shared experiment parameters.
///
/// `workers` and `output_path` are not serialized: they do not affect results,
/// and leaving them out keeps report files identical across worker counts.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub q_max: usize,
    pub gap_tol: f64,
    pub bins: usize,
    /// Random cycles drawn per trial by the overlap verification, on top of
    /// the `n` diagonal cycles.
    pub random_cycles: usize,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    #[serde(skip)]
    pub workers: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 10,
            m: 1,
            trials: 100,
            seed: 0,
            q_max: 3,
            gap_tol: 1e-8,
            bins: 40,
            random_cycles: 20,
            output_path: None,
            format: OutputFormat::Csv,
            workers: 1,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Config(msg.to_string()));
        if self.n == 0 {
            return fail("n must be at least 1");
        }
        if self.m == 0 {
            return fail("m must be at least 1");
        }
        if self.trials == 0 {
            return fail("trials must be at least 1");
        }
        if self.bins == 0 {
            return fail("bins must be at least 1");
        }
        if self.q_max == 0 {
            return fail("q-max must be at least 1");
        }
        if !(self.gap_tol > 0.0) || !self.gap_tol.is_finite() {
            return fail("gap-tol must be a positive number");
        }
        if self.workers == 0 {
            return fail("workers must be at least 1");
        }
        Ok(())
    }

    pub(crate) fn require_rank_one(&self) -> Result<()> {
        if self.m == 1 {
            Ok(())
        } else {
            Err(Error::Config(format!("this experiment requires m = 1, got m = {}", self.m)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_values() {
        assert!(ExperimentConfig::default().validate().is_ok());
        for cfg in [
            ExperimentConfig { trials: 0, ..Default::default() },
            ExperimentConfig { bins: 0, ..Default::default() },
            ExperimentConfig { gap_tol: 0.0, ..Default::default() },
            ExperimentConfig { gap_tol: f64::NAN, ..Default::default() },
            ExperimentConfig { n: 0, ..Default::default() },
        ] {
            assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        }
    }

    #[test]
    fn parses_enums() {
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert_eq!("edge_corrected".parse::<FactorMode>().unwrap(), FactorMode::EdgeCorrected);
        assert!("xml".parse::<OutputFormat>().is_err());
        assert_eq!(FactorMode::AsWritten.to_string(), "as_written");
    }

    #[test]
    fn worker_count_not_serialized() {
        let a = ExperimentConfig { workers: 1, ..Default::default() };
        let b = ExperimentConfig { workers: 8, ..Default::default() };
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
