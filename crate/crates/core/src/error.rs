use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// Indices carried by variants are 0-based, matching the slices they refer to.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("QR iteration did not deflate active block [{lo}, {hi}] within {sweeps} sweeps")]
    NonConvergence { lo: usize, hi: usize, sweeps: usize },

    #[error("eigenvalues {i} and {j} are separated by {gap:e}, not above the gap tolerance")]
    DegenerateSpectrum { i: usize, j: usize, gap: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("operation requires a rank-one defect (m = 1), got m = {m}")]
    Rank { m: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("off-diagonal formula requires distinct indices, got ({0}, {0})")]
    SameIndex(usize),

    #[error("border component v[{index}] vanishes (|v| = {modulus:e})")]
    ZeroComponent { index: usize, modulus: f64 },

    #[error("generalized Gamma integral diverges for {potential} at alpha = {alpha}")]
    Divergence { potential: String, alpha: f64 },

    #[error("continuant D_{k} = {value:e} is not positive")]
    SignChange { k: usize, value: f64 },

    #[error("moment determinant oracle limited to n <= 8, got n = {0}")]
    Scale(usize),

    #[error("empty sample")]
    EmptySample,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.to_string())
    }
}
