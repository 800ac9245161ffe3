//! Eigenvector overlaps, computed two ways.
//!
//! [`q_overlap_numeric`] works from an [`EigenSystem`](crate::linalg::EigenSystem);
//! [`q_overlap_formula`] and the other closed forms use only the eigenvalues
//! (and, for individual eigenvector entries, the border vector `v`).
//!
//! # Indexing
//!
//! Mathematical write-ups of these formulas number eigenvalues `1..=N`. Every
//! function here takes 0-based indices instead: index `k` in this crate is
//! eigenvalue number `k + 1`, and products such as `prod_{l > j}` range over
//! `j + 1..n`. Eigenvalues are always taken in Schur diagonal order.
//!
//! # Scalar products
//!
//! `<L_a|L_b> = sum_k L_a[k] conj(L_b[k])` for the left row vectors and
//! `<R_a|R_b> = sum_k conj(R_a[k]) R_b[k]` for the right column vectors,
//! i.e. both are the standard product conjugate-linear in the bra once a row
//! vector `L` is identified with the bra of the ket `L*`.

mod cycle;
mod formula;
mod numeric;

pub use cycle::OverlapCycle;
pub use formula::{
    diagonal_overlap_formula, eigvec_entry_formulas, offdiag_overlap_formula, pi_products,
    q_overlap_formula, scalar_product_formulas, PiProducts,
};
pub use numeric::{diagonal_overlap_numeric, left_inner, q_overlap_numeric, right_inner};

/// Formulas refuse spectra whose minimal gap is at or below this value.
pub const FORMULA_GAP_TOL: f64 = crate::linalg::DEFAULT_GAP_TOL;
