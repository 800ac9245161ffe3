use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// A Householder reflector `I - 2 u u* / (u* u)` acting on indices `offset..`.
pub(crate) struct Reflector {
    offset: usize,
    u: Vec<Complex64>,
    scale: f64,
}

impl Reflector {
    /// Reflector mapping `x` onto `alpha * e1`, or `None` when `x` already has
    /// nothing below its first entry.
    pub(crate) fn annihilating(offset: usize, x: &[Complex64]) -> Option<Self> {
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            return None;
        }
        let norm = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0] == ZERO {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * norm;
        let mut u = x.to_vec();
        u[0] -= alpha;
        let unorm2: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        Some(Self {
            offset,
            u,
            scale: 2.0 / unorm2,
        })
    }

    /// `A <- H A` restricted to columns `c0..`.
    pub(crate) fn apply_left(&self, a: &mut ComplexMatrix, c0: usize) {
        let k = self.offset;
        for j in c0..a.cols() {
            let mut s = ZERO;
            for (i, ui) in self.u.iter().enumerate() {
                s += ui.conj() * a[(k + i, j)];
            }
            s *= self.scale;
            for (i, ui) in self.u.iter().enumerate() {
                a[(k + i, j)] -= ui * s;
            }
        }
    }

    /// `A <- A H` restricted to rows `0..r1`.
    pub(crate) fn apply_right(&self, a: &mut ComplexMatrix, r1: usize) {
        let k = self.offset;
        for i in 0..r1 {
            let mut s = ZERO;
            for (l, ul) in self.u.iter().enumerate() {
                s += a[(i, k + l)] * ul;
            }
            s *= self.scale;
            for (l, ul) in self.u.iter().enumerate() {
                a[(i, k + l)] -= s * ul.conj();
            }
        }
    }
}

/// Householder QR of a square matrix: `a = q r` with `q` unitary and `r`
/// upper triangular. Columns that are already triangular are left untouched.
pub fn qr_decompose(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "QR expects a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let x: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        if let Some(h) = Reflector::annihilating(k, &x) {
            h.apply_left(&mut r, k);
            h.apply_right(&mut q, n);
        }
        for i in k + 1..n {
            r[(i, k)] = ZERO;
        }
    }
    Ok((q, r))
}
