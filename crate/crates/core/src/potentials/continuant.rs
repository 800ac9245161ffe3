use super::{big_g_v, ln_e_v_partial, Potential};
use crate::error::{Error, Result};

const RESCALE_HIGH: f64 = 1e150;
const RESCALE_LOW: f64 = 1e-150;

/// Two consecutive terms of the continuant recursion, carried as mantissas
/// times `exp(ln_scale)`.
///
/// Terms are normalized as `D_k / G_V(k+1)` so the coefficients stay O(1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuantState {
    pub d_prev: f64,
    pub d_curr: f64,
    pub k: usize,
    pub ln_scale: f64,
}

impl ContinuantState {
    /// `D_{-1} = 0`, `D_0 = 1`.
    fn start(p: &Potential) -> Result<Self> {
        Ok(Self {
            d_prev: 0.0,
            d_curr: (-p.ln_gamma_v(1.0)?).exp(),
            k: 0,
            ln_scale: 0.0,
        })
    }

    /// Advances to `D_{k+1}`:
    /// `D_k = ((a + |z1|^2) Gamma_V(k) + (b + 1) Gamma_V(k+1)) D_{k-1} - |z1|^2 Gamma_V(k)^2 D_{k-2}`.
    fn step(&mut self, p: &Potential, z1sq: f64, a: f64, b: f64) -> Result<()> {
        let k = self.k + 1;
        let ratio = (p.ln_gamma_v(k as f64)? - p.ln_gamma_v(k as f64 + 1.0)?).exp();
        let next = ((a + z1sq) * ratio + (b + 1.0)) * self.d_curr - z1sq * ratio * self.d_prev;
        self.d_prev = self.d_curr;
        self.d_curr = next;
        self.k = k;
        if !(next > 0.0) {
            return Err(Error::SignChange { k, value: next });
        }
        if !(RESCALE_LOW..=RESCALE_HIGH).contains(&next) {
            let s = next.ln();
            self.d_prev /= next;
            self.d_curr = 1.0;
            self.ln_scale += s;
        }
        Ok(())
    }

    fn ln_value(&self, p: &Potential) -> Result<f64> {
        Ok(big_g_v(p, self.k + 1)? + self.ln_scale + self.d_curr.ln())
    }
}

/// `ln D_{n-1}` of the nested tridiagonal determinant with diagonal
/// `(a + z1sq) Gamma_V(k) + (b + 1) Gamma_V(k+1)` and squared off-diagonal
/// `z1sq Gamma_V(k)^2`.
pub fn continuant_solve(p: &Potential, n: usize, z1sq: f64, a: f64, b: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("continuant needs n >= 1".into()));
    }
    if !(z1sq >= 0.0) {
        return Err(Error::Domain(format!("|z1|^2 must be non-negative, got {z1sq}")));
    }
    let mut state = ContinuantState::start(p)?;
    for _ in 1..n {
        state.step(p, z1sq, a, b)?;
    }
    state.ln_value(p)
}

/// `ln Z_N^(1) = ln G_V(n) + ln e_V^(n-1)(z1sq)`.
pub fn conditional_normalizer(p: &Potential, n: usize, z1sq: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("normalizer needs n >= 1".into()));
    }
    Ok(big_g_v(p, n)? + ln_e_v_partial(p, n - 1, z1sq)?)
}

/// `(A, B) = ((alpha - 1) z1sq, 1/alpha - 1)`, the weight parameters for which
/// the conditioned product statistic has a closed form.
pub fn product_parameters(z1sq: f64, alpha: f64) -> (f64, f64) {
    ((alpha - 1.0) * z1sq, 1.0 / alpha - 1.0)
}

/// `E[prod_{k>=2} (1 + (A + B |lambda_k|^2) / |z1 - lambda_k|^2) | lambda_1 = z1]`
/// `= e_V^(n-1)(alpha^2 z1sq) / (alpha^(n-1) e_V^(n-1)(z1sq))`.
pub fn conditional_product_expectation(p: &Potential, n: usize, z1sq: f64, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("product statistic needs n >= 1".into()));
    }
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be finite and non-zero, got {alpha}")));
    }
    let m = n - 1;
    let ln = ln_e_v_partial(p, m, alpha * alpha * z1sq)? - m as f64 * alpha.abs().ln() - ln_e_v_partial(p, m, z1sq)?;
    let sign = if alpha < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * ln.exp())
}
