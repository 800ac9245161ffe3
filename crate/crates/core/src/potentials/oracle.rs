//! Brute-force route to the conditioned determinant: the Gram matrix of
//! monomials against the modified weight, expanded over all permutations.

use num_complex::Complex64;

use super::{gamma_v, Potential};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Largest `n` handled by the permutation expansion.
const MAX_ORACLE_N: usize = 8;

/// `int z^p conj(z)^q e^{-V(|z|^2)} d^2z / pi = delta_pq Gamma_V(p + 1)`.
fn monomial_moment(p: &Potential, zp: usize, zq: usize) -> Result<f64> {
    if zp == zq {
        gamma_v(p, zp as f64 + 1.0)
    } else {
        Ok(0.0)
    }
}

/// Entries `int z^(i-1) conj(z)^(j-1) W(z) e^{-V} d^2z / pi` for
/// `i, j = 1..n-1`, where
/// `W(z) = |z1 - z|^2 + a + b |z|^2`.
pub fn moment_matrix(p: &Potential, n: usize, z1: Complex64, a: f64, b: f64) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::Domain("moment matrix needs n >= 2".into()));
    }
    // W as monomials c z^dp conj(z)^dq
    let weight = [
        (Complex64::new(z1.norm_sqr() + a, 0.0), 0usize, 0usize),
        (-z1.conj(), 1, 0),
        (-z1, 0, 1),
        (Complex64::new(1.0 + b, 0.0), 1, 1),
    ];
    let dim = n - 1;
    let mut data = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut entry = Complex64::new(0.0, 0.0);
            for &(c, dp, dq) in &weight {
                entry += c * monomial_moment(p, i + dp, j + dq)?;
            }
            data.push(entry);
        }
    }
    ComplexMatrix::from_row_major(dim, dim, data)
}

/// `ln det` of [`moment_matrix`] by the Leibniz expansion, for `n <= 8`.
pub fn moment_determinant_oracle(p: &Potential, n: usize, z1: Complex64, a: f64, b: f64) -> Result<f64> {
    if n == 1 {
        return Ok(0.0);
    }
    if n > MAX_ORACLE_N {
        return Err(Error::Scale(n));
    }
    let m = moment_matrix(p, n, z1, a, b)?;
    let det = leibniz_det(&m);
    if !(det.re > 0.0) {
        return Err(Error::Domain(format!("moment determinant is not positive: {det}")));
    }
    Ok(det.re.ln())
}

fn leibniz_det(m: &ComplexMatrix) -> Complex64 {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Complex64::new(0.0, 0.0);
    permute(m, &mut perm, 0, 1.0, &mut total);
    total
}

fn permute(m: &ComplexMatrix, perm: &mut [usize], k: usize, sign: f64, total: &mut Complex64) {
    let n = perm.len();
    if k == n {
        let mut prod = Complex64::new(sign, 0.0);
        for (i, &j) in perm.iter().enumerate() {
            prod *= m[(i, j)];
        }
        *total += prod;
        return;
    }
    for s in k..n {
        perm.swap(k, s);
        let flipped = if s == k { sign } else { -sign };
        permute(m, perm, k + 1, flipped, total);
        perm.swap(k, s);
    }
}
