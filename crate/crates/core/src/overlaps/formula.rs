use num_complex::Complex64;

use super::{OverlapCycle, FORMULA_GAP_TOL};
use crate::error::{Error, Result};
use crate::linalg::check_gaps;
use crate::logpolar::LogComplex;

const ZERO_COMPONENT_TOL: f64 = 1e-14;

fn check_spectrum(eigenvalues: &[Complex64]) -> Result<()> {
    if eigenvalues.is_empty() {
        return Err(Error::EmptySample);
    }
    check_gaps(eigenvalues, FORMULA_GAP_TOL)
}

fn check_disk(eigenvalues: &[Complex64]) -> Result<()> {
    match eigenvalues.iter().position(|z| z.norm_sqr() >= 1.0) {
        Some(k) => Err(Error::Domain(format!(
            "|lambda_{k}| = {} is not inside the unit disk",
            eigenvalues[k].norm()
        ))),
        None => Ok(()),
    }
}

fn check_index(k: usize, n: usize) -> Result<()> {
    if k < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: k, dim: n })
    }
}

/// `pi_{j+}`, `pi_{j-}` and `pi_j = pi_{j+} pi_{j-}`, in log-polar form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiProducts {
    pub plus: LogComplex,
    pub minus: LogComplex,
    pub total: LogComplex,
}

fn pi_factor(lj: Complex64, ll: Complex64) -> LogComplex {
    LogComplex::from_complex((lj * ll.conj() - 1.0) / (lj - ll))
}

fn pi_unchecked(eigenvalues: &[Complex64], j: usize) -> PiProducts {
    let lj = eigenvalues[j];
    let plus: LogComplex = eigenvalues[j + 1..].iter().map(|&l| pi_factor(lj, l)).product();
    let minus: LogComplex = eigenvalues[..j].iter().map(|&l| pi_factor(lj, l)).product();
    PiProducts {
        plus,
        minus,
        total: plus * minus,
    }
}

/// `pi_{j+} = prod_{l > j} (lambda_j conj(lambda_l) - 1) / (lambda_j - lambda_l)`,
/// `pi_{j-}` likewise over `l < j`.
pub fn pi_products(eigenvalues: &[Complex64], j: usize) -> Result<PiProducts> {
    check_spectrum(eigenvalues)?;
    check_index(j, eigenvalues.len())?;
    Ok(pi_unchecked(eigenvalues, j))
}

/// `O_ii = prod_{k != i} (1 + (1 - |lambda_k|^2)(1 - |lambda_i|^2) / |lambda_i - lambda_k|^2)`.
pub fn diagonal_overlap_formula(eigenvalues: &[Complex64], i: usize) -> Result<f64> {
    check_spectrum(eigenvalues)?;
    check_disk(eigenvalues)?;
    check_index(i, eigenvalues.len())?;
    let li = eigenvalues[i];
    let di = 1.0 - li.norm_sqr();
    let ln: f64 = eigenvalues
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, &lk)| ((1.0 - lk.norm_sqr()) * di / (li - lk).norm_sqr()).ln_1p())
        .sum();
    Ok(ln.exp())
}

/// Off-diagonal overlap `O_ij`, `i != j`.
pub fn offdiag_overlap_formula(eigenvalues: &[Complex64], i: usize, j: usize) -> Result<Complex64> {
    check_spectrum(eigenvalues)?;
    check_disk(eigenvalues)?;
    check_index(i, eigenvalues.len())?;
    check_index(j, eigenvalues.len())?;
    if i == j {
        return Err(Error::SameIndex(i));
    }
    let (li, lj) = (eigenvalues[i], eigenvalues[j]);
    let cross = 1.0 - li * lj.conj();
    let lead = (1.0 - li.norm_sqr()) * (1.0 - lj.norm_sqr()) / (li - lj).norm_sqr();
    let mut acc = LogComplex::from_complex(Complex64::new(-lead, 0.0));
    for (k, &lk) in eigenvalues.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let f = 1.0 + (1.0 - lk.norm_sqr()) * cross / ((li - lk) * (lj - lk).conj());
        acc *= LogComplex::from_complex(f);
    }
    Ok(acc.to_complex())
}

/// Closed-form q-overlap from the eigenvalues alone:
/// `prod_l (1-|l_i|^2)(1-|l_j|^2) / ((1 - l_i conj(l_j))(1 - l_i' conj(l_j))) * pi_i * conj(pi_j)`
/// with `i = i_l`, `j = j_l`, `i' = i_{l+1}`.
///
/// Only the diagonal cycle `(i, i)` is returned as an exact real.
pub fn q_overlap_formula(eigenvalues: &[Complex64], cycle: &OverlapCycle) -> Result<Complex64> {
    check_spectrum(eigenvalues)?;
    check_disk(eigenvalues)?;
    cycle.check(eigenvalues.len())?;
    let pis: Vec<PiProducts> = (0..eigenvalues.len()).map(|k| pi_unchecked(eigenvalues, k)).collect();
    let mut acc = LogComplex::ONE;
    for (i, j, i_next) in cycle.steps() {
        let (li, lj, ln) = (eigenvalues[i], eigenvalues[j], eigenvalues[i_next]);
        let num = (1.0 - li.norm_sqr()) * (1.0 - lj.norm_sqr());
        let den = (1.0 - li * lj.conj()) * (1.0 - ln * lj.conj());
        acc *= LogComplex::from_ln(num.ln()) * LogComplex::from_complex(den).recip();
        acc *= pis[i].total * pis[j].total.conj();
    }
    if cycle.is_diagonal() {
        Ok(Complex64::new(acc.ln_abs.exp(), 0.0))
    } else {
        Ok(acc.to_complex())
    }
}

fn check_components(v: &[Complex64], n: usize, idx: &[usize]) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "border vector has length {}, expected {n}",
            v.len()
        )));
    }
    for &k in idx {
        let modulus = v[k].norm();
        if modulus < ZERO_COMPONENT_TOL {
            return Err(Error::ZeroComponent { index: k, modulus });
        }
    }
    Ok(())
}

/// Closed-form eigenvector entries `(l_ij, r_ji)` for `i < j`, where
/// `l_ij = L_i[j]` and `r_ji = R_j[i]`, given the border vector `v` with
/// `t t* = I - v v*`.
pub fn eigvec_entry_formulas(
    eigenvalues: &[Complex64],
    v: &[Complex64],
    i: usize,
    j: usize,
) -> Result<(Complex64, Complex64)> {
    let n = eigenvalues.len();
    check_spectrum(eigenvalues)?;
    check_index(i, n)?;
    check_index(j, n)?;
    if i >= j {
        return Err(Error::Domain(format!("entry formulas need i < j, got ({i}, {j})")));
    }
    check_components(v, n, &[i, j])?;
    let (li, lj) = (eigenvalues[i], eigenvalues[j]);

    let mut l = LogComplex::from_complex(v[i] / v[j])
        * LogComplex::from_complex(Complex64::new(lj.norm_sqr() - 1.0, 0.0))
        * LogComplex::from_complex(lj.conj() * li - 1.0).recip();
    for &ll in &eigenvalues[i + 1..=j] {
        l *= LogComplex::from_complex((ll.conj() * li - 1.0) / (ll.conj() * (li - ll)));
    }

    let mut r = LogComplex::from_complex(v[j].conj() / v[i].conj())
        * LogComplex::from_complex(Complex64::new(li.norm_sqr() - 1.0, 0.0))
        * LogComplex::from_complex(li.conj() * lj - 1.0).recip();
    for &ll in &eigenvalues[i + 1..=j] {
        r *= LogComplex::from_complex(ll);
    }
    for &ll in &eigenvalues[i..j] {
        r *= LogComplex::from_complex((ll.conj() * lj - 1.0) / (lj - ll));
    }
    Ok((l.to_complex(), r.to_complex()))
}

fn scalar_products_ordered(
    eigenvalues: &[Complex64],
    v: &[Complex64],
    i: usize,
    j: usize,
) -> (LogComplex, LogComplex) {
    debug_assert!(i <= j);
    let (li, lj) = (eigenvalues[i], eigenvalues[j]);
    let pi_i = pi_unchecked(eigenvalues, i);
    let pi_j = pi_unchecked(eigenvalues, j);
    let cross = LogComplex::from_complex(li * lj.conj() - 1.0).recip();
    let between: LogComplex = eigenvalues[i + 1..=j]
        .iter()
        .map(|&l| LogComplex::from_complex(l.conj()))
        .product();

    let ll = LogComplex::from_complex(v[i] / v[j])
        * LogComplex::from_complex(Complex64::new(lj.norm_sqr() - 1.0, 0.0))
        * cross
        * between.recip()
        * pi_i.plus
        * pi_j.plus.conj();
    let rr = LogComplex::from_complex(v[j] / v[i])
        * LogComplex::from_complex(Complex64::new(li.norm_sqr() - 1.0, 0.0))
        * cross
        * between
        * pi_i.minus
        * pi_j.minus.conj();
    (ll, rr)
}

/// Closed forms of `<L_i|L_j>` and `<R_j|R_i>`.
///
/// The product formulas hold for `i <= j`; the case `i > j` is obtained by
/// conjugate symmetry of the two scalar products.
pub fn scalar_product_formulas(
    eigenvalues: &[Complex64],
    v: &[Complex64],
    i: usize,
    j: usize,
) -> Result<(Complex64, Complex64)> {
    let n = eigenvalues.len();
    check_spectrum(eigenvalues)?;
    check_index(i, n)?;
    check_index(j, n)?;
    check_components(v, n, &[i, j])?;
    if i <= j {
        let (ll, rr) = scalar_products_ordered(eigenvalues, v, i, j);
        Ok((ll.to_complex(), rr.to_complex()))
    } else {
        let (ll, rr) = scalar_products_ordered(eigenvalues, v, j, i);
        Ok((ll.conj().to_complex(), rr.conj().to_complex()))
    }
}
