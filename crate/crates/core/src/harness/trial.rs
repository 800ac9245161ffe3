use serde::Serialize;

use crate::ensembles::{sample_tue, RngStream, TruncationSample};
use crate::error::{Error, Result};
use crate::linalg::{min_eigengap, schur, triangular_eigenvectors, EigenSystem, SchurForm};

/// Trials left out of an aggregate, by cause.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Discards {
    pub degenerate: usize,
    pub solver_failures: usize,
}

impl Discards {
    pub fn total(&self) -> usize {
        self.degenerate + self.solver_failures
    }

    pub(crate) fn record<T>(&mut self, outcome: &Outcome<T>) {
        match outcome {
            Outcome::Used(_) => {}
            Outcome::Degenerate => self.degenerate += 1,
            Outcome::SolverFailure => self.solver_failures += 1,
        }
    }

    pub fn solver_failure_rate(&self, trials: usize) -> f64 {
        self.solver_failures as f64 / trials.max(1) as f64
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Outcome<T> {
    Used(T),
    Degenerate,
    SolverFailure,
}

impl<T> Outcome<T> {
    pub(crate) fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Used(x) => Outcome::Used(f(x)),
            Outcome::Degenerate => Outcome::Degenerate,
            Outcome::SolverFailure => Outcome::SolverFailure,
        }
    }

    pub(crate) fn used(self) -> Option<T> {
        match self {
            Outcome::Used(x) => Some(x),
            _ => None,
        }
    }
}

/// Turns the expected failure modes into discard outcomes.
fn classify<T>(r: Result<T>) -> Result<Outcome<T>> {
    match r {
        Ok(x) => Ok(Outcome::Used(x)),
        Err(Error::NonConvergence { .. }) => Ok(Outcome::SolverFailure),
        Err(Error::DegenerateSpectrum { .. }) => Ok(Outcome::Degenerate),
        Err(e) => Err(e),
    }
}

/// Schur form of a matrix, with non-convergence turned into a discard.
pub(crate) fn schur_outcome(g: &crate::linalg::ComplexMatrix) -> Result<Outcome<SchurForm>> {
    classify(schur(g))
}

pub(crate) struct Analyzed {
    pub sample: TruncationSample,
    pub schur: SchurForm,
    pub eigen: EigenSystem,
}

/// Samples TUE(n, m), Schur-decomposes it and extracts eigenvectors, discarding
/// the trial when two eigenvalues are within `gap_tol`.
pub(crate) fn analyze_tue<R: rand::Rng + ?Sized>(n: usize, m: usize, gap_tol: f64, rng: &mut R) -> Result<Outcome<Analyzed>> {
    let sample = sample_tue(n, m, rng)?;
    let sf = match schur_outcome(&sample.g)? {
        Outcome::Used(sf) => sf,
        Outcome::Degenerate => return Ok(Outcome::Degenerate),
        Outcome::SolverFailure => return Ok(Outcome::SolverFailure),
    };
    if let Some((_, _, gap)) = min_eigengap(&sf.eigenvalues) {
        if gap <= gap_tol {
            return Ok(Outcome::Degenerate);
        }
    }
    Ok(classify(triangular_eigenvectors(&sf.t, gap_tol))?.map(|eigen| Analyzed { sample, schur: sf, eigen }))
}

pub(crate) fn trial_stream(seed: u64, t: u64) -> RngStream {
    RngStream::new(seed, t)
}
