//! Eigenvector overlaps of truncated Haar unitary matrices: sampling, Schur
//! decomposition, exact overlap formulas for rank-one truncations, and the
//! determinantal conditional expectations behind them.

// guards such as `!(x > 0.0)` are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ensembles;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod logpolar;
pub mod overlaps;
pub mod potentials;

pub use error::{Error, Result};
