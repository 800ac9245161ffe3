//! Experiment drivers behind the `tue` command line tool.
//!
//! Every driver is a pure function of an [`ExperimentConfig`]: trial `t` draws
//! from stream `t` of the master seed, trials may run on any number of worker
//! threads, and results are reduced in trial order.

mod config;
mod conjecture;
mod expectation;
mod figure1;
mod kostlan;
mod ks;
pub mod output;
mod pool;
mod sample;
mod trial;
mod verify;

pub use config::{ExperimentConfig, FactorMode, OutputFormat};
pub use conjecture::{conjecture_test, ConjectureReport, ConjectureSample};
pub use expectation::{expectation_scan, ExpectationBin, ExpectationReport, SPARSE_BIN_COUNT};
pub use figure1::{figure1_data, Figure1Data, Figure1Point};
pub use kostlan::{kostlan_check, KostlanReport, KostlanRow};
pub use ks::{ks_two_sample, KSResult, KS_C_1PCT};
pub use sample::{sample_spectra, SampleReport, SampledEigenvalue};
pub use trial::Discards;
pub use verify::{
    border_moduli_check, closed_form_check, verify_overlaps, ClosedFormReport, TrialVerification,
    VerificationReport, WorstCase,
};
