//! Dense complex linear algebra: QR, Hessenberg, Schur and triangular
//! eigenvectors.

mod eigvec;
mod matrix;
mod qr;
mod schur;

pub use eigvec::{
    biorthogonality_residual, min_eigengap, triangular_eigenvectors, EigenSystem, DEFAULT_GAP_TOL,
};
pub(crate) use eigvec::check_gaps;
pub use matrix::{bilinear, dot_conj, ComplexMatrix};
pub use qr::qr_decompose;
pub use schur::{hessenberg, schur_decompose, SchurForm, DEFAULT_MAX_SWEEPS, DEFAULT_TOL};

/// Schur form with the default tolerance and sweep budget.
pub fn schur(a: &ComplexMatrix) -> crate::Result<SchurForm> {
    schur_decompose(a, DEFAULT_TOL, DEFAULT_MAX_SWEEPS)
}
