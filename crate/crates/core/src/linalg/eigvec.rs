use num_complex::Complex64;

use super::matrix::{bilinear, ComplexMatrix, ONE, ZERO};
use crate::error::{Error, Result};

/// Default minimum separation between eigenvalues.
pub const DEFAULT_GAP_TOL: f64 = 1e-8;

/// Bi-orthogonal left/right eigenvectors of an upper-triangular matrix.
///
/// `left[i]` is the row vector `L_i` with `L_i t = lambda_i L_i`, zero before
/// position `i` and `L_i[i] = 1`. `right[j]` holds the entries of the column
/// vector `R_j` with `t R_j = lambda_j R_j`, zero after position `j` and
/// `R_j[j] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub left: Vec<Vec<Complex64>>,
    pub right: Vec<Vec<Complex64>>,
    pub eigenvalues: Vec<Complex64>,
}

impl EigenSystem {
    /// Assembles a system from raw parts, checking shapes only.
    pub fn from_parts(
        left: Vec<Vec<Complex64>>,
        right: Vec<Vec<Complex64>>,
        eigenvalues: Vec<Complex64>,
    ) -> Result<Self> {
        let n = eigenvalues.len();
        let ok = n > 0
            && left.len() == n
            && right.len() == n
            && left.iter().chain(right.iter()).all(|v| v.len() == n);
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "eigen system for {n} eigenvalues needs {n} left and right vectors of length {n}"
            )));
        }
        Ok(Self {
            left,
            right,
            eigenvalues,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Rows `L_i` stacked into a matrix.
    pub fn left_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, k| self.left[i][k])
    }

    /// Columns `R_j` stacked into a matrix.
    pub fn right_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |k, j| self.right[j][k])
    }
}

/// Smallest pairwise eigenvalue distance, with the pair achieving it.
pub fn min_eigengap(eigenvalues: &[Complex64]) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..eigenvalues.len() {
        for j in i + 1..eigenvalues.len() {
            let gap = (eigenvalues[i] - eigenvalues[j]).norm();
            if best.is_none_or(|(_, _, g)| gap < g) {
                best = Some((i, j, gap));
            }
        }
    }
    best
}

pub(crate) fn check_gaps(eigenvalues: &[Complex64], gap_tol: f64) -> Result<()> {
    match min_eigengap(eigenvalues) {
        Some((i, j, gap)) if !(gap > gap_tol) => Err(Error::DegenerateSpectrum { i, j, gap }),
        _ => Ok(()),
    }
}

/// Eigenvectors of an upper-triangular `t` by back-substitution.
///
/// For `i < j`: `L_i[j] = (sum_{k=i}^{j-1} L_i[k] t[k,j]) / (lambda_i - lambda_j)` and
/// `R_j[i] = (sum_{k=i+1}^{j} t[i,k] R_j[k]) / (lambda_j - lambda_i)`.
pub fn triangular_eigenvectors(t: &ComplexMatrix, gap_tol: f64) -> Result<EigenSystem> {
    if !t.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square triangular matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if t.max_abs_below_diagonal() != 0.0 {
        return Err(Error::Domain("matrix is not upper triangular".into()));
    }
    let n = t.rows();
    let lambda = t.diagonal();
    check_gaps(&lambda, gap_tol)?;

    let mut left = vec![vec![ZERO; n]; n];
    for (i, li) in left.iter_mut().enumerate() {
        li[i] = ONE;
        for j in i + 1..n {
            let s: Complex64 = (i..j).map(|k| li[k] * t[(k, j)]).sum();
            li[j] = s / (lambda[i] - lambda[j]);
        }
    }

    let mut right = vec![vec![ZERO; n]; n];
    for (j, rj) in right.iter_mut().enumerate() {
        rj[j] = ONE;
        for i in (0..j).rev() {
            let s: Complex64 = (i + 1..=j).map(|k| t[(i, k)] * rj[k]).sum();
            rj[i] = s / (lambda[j] - lambda[i]);
        }
    }

    Ok(EigenSystem {
        left,
        right,
        eigenvalues: lambda,
    })
}

/// `max_{i,j} |L_i R_j - delta_ij|`.
pub fn biorthogonality_residual(es: &EigenSystem) -> f64 {
    let mut worst = 0.0f64;
    for (i, li) in es.left.iter().enumerate() {
        for (j, rj) in es.right.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((bilinear(li, rj) - target).norm());
        }
    }
    worst
}
