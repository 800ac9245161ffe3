//! Complex Schur decomposition `a = q t q*`.
//!
//! Householder reduction to Hessenberg form, then single-shift QR sweeps with
//! a Wilkinson shift taken from the trailing 2x2 of the active block.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use super::qr::Reflector;
use crate::error::{Error, Result};

/// Relative deflation tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// QR sweeps allowed between two successive deflations.
pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Unitary `q` and upper-triangular `t` with `a = q t q*`.
///
/// `eigenvalues[k] == t[(k, k)]`, in the order deflation produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurForm {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
    pub eigenvalues: Vec<Complex64>,
}

impl SchurForm {
    /// `max |q t q* - a|`.
    pub fn reconstruction_residual(&self, a: &ComplexMatrix) -> f64 {
        let qtq = &(&self.q * &self.t) * &self.q.adjoint();
        qtq.sub(a).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }
}

/// Reduces `a` to upper Hessenberg form, returning `(q, h)` with `a = q h q*`.
pub fn hessenberg(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Hessenberg reduction expects a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        if let Some(refl) = Reflector::annihilating(k + 1, &x) {
            refl.apply_left(&mut h, k);
            refl.apply_right(&mut h, n);
            refl.apply_right(&mut q, n);
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    Ok((q, h))
}

/// Complex rotation `[[c, s], [-conj(s), c]]` with real `c`.
#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    /// Rotation sending `(a, b)` to `(r, 0)`.
    fn zeroing(a: Complex64, b: Complex64) -> Self {
        if b == ZERO {
            return Self { c: 1.0, s: ZERO };
        }
        let an = a.norm();
        let rho = an.hypot(b.norm());
        if an == 0.0 {
            return Self {
                c: 0.0,
                s: b.conj() / b.norm(),
            };
        }
        Self {
            c: an / rho,
            s: (a / an) * b.conj() / rho,
        }
    }

    fn apply_rows(&self, m: &mut ComplexMatrix, k: usize, c0: usize) {
        for j in c0..m.cols() {
            let x = m[(k, j)];
            let y = m[(k + 1, j)];
            m[(k, j)] = x * self.c + self.s * y;
            m[(k + 1, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// `M <- M G*` on columns `k, k+1`, rows `0..r1`.
    fn apply_cols_adjoint(&self, m: &mut ComplexMatrix, k: usize, r1: usize) {
        for i in 0..r1 {
            let x = m[(i, k)];
            let y = m[(i, k + 1)];
            m[(i, k)] = x * self.c + y * self.s.conj();
            m[(i, k + 1)] = -x * self.s + y * self.c;
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn negligible(h: &ComplexMatrix, k: usize, tol: f64, fallback: f64) -> bool {
    let sub = h[(k, k - 1)].norm();
    if sub == 0.0 {
        return true;
    }
    let scale = h[(k - 1, k - 1)].norm() + h[(k, k)].norm();
    let scale = if scale == 0.0 { fallback } else { scale };
    sub < tol * scale
}

/// Computes a complex Schur form of `a`.
///
/// `tol` is the relative deflation threshold; `max_sweeps` bounds the number
/// of QR sweeps spent on one active block before giving up.
pub fn schur_decompose(a: &ComplexMatrix, tol: f64, max_sweeps: usize) -> Result<SchurForm> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("Schur tolerance must be positive, got {tol}")));
    }
    let (mut q, mut h) = hessenberg(a)?;
    let n = h.rows();
    let fallback = h.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut hi = n - 1;
    let mut sweeps = 0usize;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            if negligible(&h, lo, tol, fallback) {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        if sweeps > max_sweeps {
            return Err(Error::NonConvergence { lo, hi, sweeps: max_sweeps });
        }

        let shift = if sweeps.is_multiple_of(11) {
            // exceptional shift to break cycles
            let sub = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + Complex64::new(0.75 * sub, 0.4375 * sub)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let g = Givens::zeroing(h[(k, k)], h[(k + 1, k)]);
            g.apply_rows(&mut h, k, k);
            h[(k + 1, k)] = ZERO;
            rotations.push(g);
        }
        for (offset, g) in rotations.iter().enumerate() {
            let k = lo + offset;
            g.apply_cols_adjoint(&mut h, k, (k + 2).min(hi + 1));
            g.apply_cols_adjoint(&mut q, k, n);
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }

    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    let eigenvalues = h.diagonal();
    Ok(SchurForm { q, t: h, eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn triangular_input_is_fixed() {
        let t = ComplexMatrix::from_row_major(
            3,
            3,
            vec![c(1.0, 0.0), c(2.0, 1.0), c(0.5, 0.0), ZERO, c(0.0, 1.0), c(3.0, 0.0), ZERO, ZERO, c(-2.0, 0.0)],
        )
        .unwrap();
        let sf = schur_decompose(&t, DEFAULT_TOL, DEFAULT_MAX_SWEEPS).unwrap();
        assert_eq!(sf.q, ComplexMatrix::identity(3));
        assert_eq!(sf.t, t);
    }

    #[test]
    fn rotation_generator_has_conjugate_pair() {
        let a = ComplexMatrix::from_row_major(2, 2, vec![ZERO, c(1.0, 0.0), c(-1.0, 0.0), ZERO]).unwrap();
        let sf = schur_decompose(&a, DEFAULT_TOL, DEFAULT_MAX_SWEEPS).unwrap();
        let mut ims: Vec<f64> = sf.eigenvalues.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-12 && (ims[1] - 1.0).abs() < 1e-12);
        assert!(sf.eigenvalues.iter().all(|z| z.re.abs() < 1e-12));
        assert!(sf.reconstruction_residual(&a) < 1e-13);
    }

    #[test]
    fn random_matrices_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1usize, 2, 3, 7, 20, 40] {
            let a = ComplexMatrix::from_fn(n, n, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            let sf = schur_decompose(&a, DEFAULT_TOL, DEFAULT_MAX_SWEEPS).unwrap();
            assert!(sf.q.unitarity_residual() < 1e-11, "n={n}");
            assert!(sf.reconstruction_residual(&a) <= 1e-10 * a.max_abs() * n as f64, "n={n}");
            assert_eq!(sf.t.max_abs_below_diagonal(), 0.0);
            for k in 0..n {
                assert_eq!(sf.eigenvalues[k], sf.t[(k, k)]);
            }
        }
    }

    #[test]
    fn trace_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = ComplexMatrix::from_fn(12, 12, |_, _| c(rng.random::<f64>(), rng.random::<f64>()));
        let sf = schur_decompose(&a, DEFAULT_TOL, DEFAULT_MAX_SWEEPS).unwrap();
        let tr_a: Complex64 = a.diagonal().iter().sum();
        let tr_t: Complex64 = sf.eigenvalues.iter().sum();
        assert!((tr_a - tr_t).norm() < 1e-11);
    }

    #[test]
    fn zero_sweeps_reports_block() {
        let a = ComplexMatrix::from_row_major(2, 2, vec![ZERO, c(1.0, 0.0), c(-1.0, 0.0), ZERO]).unwrap();
        let err = schur_decompose(&a, DEFAULT_TOL, 0).unwrap_err();
        assert_eq!(err, Error::NonConvergence { lo: 0, hi: 1, sweeps: 0 });
    }

    #[test]
    fn hessenberg_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = ComplexMatrix::from_fn(6, 6, |_, _| c(rng.random::<f64>(), rng.random::<f64>()));
        let (q, h) = hessenberg(&a).unwrap();
        for i in 2..6 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], ZERO);
            }
        }
        let back = &(&q * &h) * &q.adjoint();
        assert!(back.sub(&a).unwrap().max_abs() < 1e-13);
    }
}
