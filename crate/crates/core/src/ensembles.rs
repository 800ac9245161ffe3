//! Haar unitaries, truncated unitary samples, Kostlan radii and the
//! bordering vectors of a rank-one truncation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{qr_decompose, ComplexMatrix, SchurForm};

/// Names one reproducible random stream: `(master_seed, stream_index)`.
///
/// The generator is ChaCha8 keyed by the master seed, with the stream index
/// selecting ChaCha's native 64-bit stream, so distinct indices never
/// overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self {
            master_seed,
            stream_index,
        }
    }

    /// Fresh generator positioned at the start of the stream.
    pub fn generator(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }

    /// Same stream index under a master seed mixed with `salt`, for
    /// auxiliary draws that must not share randomness with the main stream.
    pub fn derive(&self, salt: u64) -> Self {
        Self {
            master_seed: splitmix64(self.master_seed ^ splitmix64(salt)),
            stream_index: self.stream_index,
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed `n x n` unitary: QR of a complex Gaussian matrix with the
/// phases of `diag(r)` moved into `q`.
pub fn sample_haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Domain("unitary dimension must be at least 1".into()));
    }
    let z = ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let (mut q, r) = qr_decompose(&z)?;
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    Ok(q)
}

/// A TUE(n, m) matrix `g` with the rest of its parent unitary
/// `[[g, border_cols], [border_rows, corner]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationSample {
    pub g: ComplexMatrix,
    pub border_cols: ComplexMatrix,
    pub border_rows: ComplexMatrix,
    pub corner: ComplexMatrix,
    pub n: usize,
    pub m: usize,
}

impl TruncationSample {
    /// Splits an `(n + m)`-dimensional unitary into its four blocks.
    pub fn from_parent(u: &ComplexMatrix, n: usize) -> Result<Self> {
        let size = u.rows();
        if !u.is_square() || n == 0 || n >= size {
            return Err(Error::DimensionMismatch(format!(
                "cannot truncate a {}x{} matrix to {n}x{n} with a non-empty border",
                u.rows(),
                u.cols()
            )));
        }
        Ok(Self {
            g: u.submatrix(0, n, 0, n),
            border_cols: u.submatrix(0, n, n, size),
            border_rows: u.submatrix(n, size, 0, n),
            corner: u.submatrix(n, size, n, size),
            n,
            m: size - n,
        })
    }

    pub fn parent(&self) -> ComplexMatrix {
        let n = self.n;
        ComplexMatrix::from_fn(n + self.m, n + self.m, |i, j| match (i < n, j < n) {
            (true, true) => self.g[(i, j)],
            (true, false) => self.border_cols[(i, j - n)],
            (false, true) => self.border_rows[(i - n, j)],
            (false, false) => self.corner[(i - n, j - n)],
        })
    }
}

pub fn sample_tue<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<TruncationSample> {
    if n == 0 || m == 0 {
        return Err(Error::Domain(format!("TUE(n, m) requires n, m >= 1, got ({n}, {m})")));
    }
    let u = sample_haar_unitary(n + m, rng)?;
    TruncationSample::from_parent(&u, n)
}

/// `n` independent draws, the k-th (1-based) from Beta(k, m).
///
/// Inverse CDF `u^(1/k)` when `m = 1`, Gamma ratio otherwise.
pub fn kostlan_radii<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 || m == 0 {
        return Err(Error::Domain(format!("Kostlan radii require n, m >= 1, got ({n}, {m})")));
    }
    let mut out = Vec::with_capacity(n);
    if m == 1 {
        for k in 1..=n {
            let u: f64 = rng.random();
            out.push(u.powf(1.0 / k as f64));
        }
    } else {
        let denom = Gamma::new(m as f64, 1.0).expect("positive shape");
        for k in 1..=n {
            let num = Gamma::new(k as f64, 1.0).expect("positive shape");
            let x: f64 = num.sample(rng);
            let y: f64 = denom.sample(rng);
            out.push(x / (x + y));
        }
    }
    Ok(out)
}

/// `v = q* b` for an m = 1 truncation, so that `t t* = I - v v*`.
pub fn border_vector_v(ts: &TruncationSample, sf: &SchurForm) -> Result<Vec<Complex64>> {
    if ts.m != 1 {
        return Err(Error::Rank { m: ts.m });
    }
    Ok(sf.q.adjoint().matmul(&ts.border_cols)?.column(0))
}

/// `w = c q` for an m = 1 truncation, so that `t* t = I - w* w`.
pub fn border_vector_w(ts: &TruncationSample, sf: &SchurForm) -> Result<Vec<Complex64>> {
    if ts.m != 1 {
        return Err(Error::Rank { m: ts.m });
    }
    Ok(ts.border_rows.matmul(&sf.q)?.row(0).to_vec())
}

fn check_inside_disk(eigenvalues: &[Complex64]) -> Result<Vec<f64>> {
    eigenvalues
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let r2 = z.norm_sqr();
            if r2 < 1.0 {
                Ok(r2)
            } else {
                Err(Error::Domain(format!("|lambda_{k}|^2 = {r2} is not inside the unit disk")))
            }
        })
        .collect()
}

/// `|v_k|^2 = (1 - |lambda_k|^2) prod_{l > k} |lambda_l|^2`.
pub fn predicted_v_moduli(eigenvalues: &[Complex64]) -> Result<Vec<f64>> {
    let r2 = check_inside_disk(eigenvalues)?;
    let mut out = vec![0.0; r2.len()];
    let mut tail = 1.0;
    for k in (0..r2.len()).rev() {
        out[k] = (1.0 - r2[k]) * tail;
        tail *= r2[k];
    }
    Ok(out)
}

/// `|w_k|^2 = (1 - |lambda_k|^2) prod_{l < k} |lambda_l|^2`.
pub fn predicted_w_moduli(eigenvalues: &[Complex64]) -> Result<Vec<f64>> {
    let r2 = check_inside_disk(eigenvalues)?;
    let mut out = Vec::with_capacity(r2.len());
    let mut head = 1.0;
    for x in r2 {
        out.push((1.0 - x) * head);
        head *= x;
    }
    Ok(out)
}
