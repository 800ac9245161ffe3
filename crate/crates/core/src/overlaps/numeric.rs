use num_complex::Complex64;

use super::OverlapCycle;
use crate::error::{Error, Result};
use crate::linalg::{dot_conj, EigenSystem};
use crate::logpolar::LogComplex;

fn check_index(es: &EigenSystem, k: usize) -> Result<()> {
    if k < es.dim() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: k, dim: es.dim() })
    }
}

/// `<L_a|L_b> = sum_k L_a[k] conj(L_b[k])`.
pub fn left_inner(es: &EigenSystem, a: usize, b: usize) -> Result<Complex64> {
    check_index(es, a)?;
    check_index(es, b)?;
    Ok(dot_conj(&es.left[b], &es.left[a]))
}

/// `<R_a|R_b> = sum_k conj(R_a[k]) R_b[k]`.
pub fn right_inner(es: &EigenSystem, a: usize, b: usize) -> Result<Complex64> {
    check_index(es, a)?;
    check_index(es, b)?;
    Ok(dot_conj(&es.right[a], &es.right[b]))
}

/// `O_ii = ||L_i||^2 ||R_i||^2`.
pub fn diagonal_overlap_numeric(es: &EigenSystem, i: usize) -> Result<f64> {
    check_index(es, i)?;
    let l: f64 = es.left[i].iter().map(|z| z.norm_sqr()).sum();
    let r: f64 = es.right[i].iter().map(|z| z.norm_sqr()).sum();
    Ok(l * r)
}

/// `prod_l <L_{i_l}|L_{j_l}> <R_{j_l}|R_{i_{l+1}}>`, accumulated in log-polar form.
pub fn q_overlap_numeric(es: &EigenSystem, cycle: &OverlapCycle) -> Result<Complex64> {
    cycle.check(es.dim())?;
    let mut acc = LogComplex::ONE;
    for (i, j, i_next) in cycle.steps() {
        acc *= LogComplex::from_complex(left_inner(es, i, j)?);
        acc *= LogComplex::from_complex(right_inner(es, j, i_next)?);
    }
    Ok(acc.to_complex())
}
