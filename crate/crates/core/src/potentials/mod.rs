//! Radially symmetric weights `e^{-V(|z|^2)}` described by their generalized
//! Gamma function `Gamma_V(alpha) = int_0^inf t^(alpha-1) e^{-V(t)} dt`, and
//! the determinantal machinery built on it.
//!
//! Determinant-sized quantities are returned as natural logarithms.

mod continuant;
mod oracle;
mod tue;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use continuant::{
    conditional_normalizer, conditional_product_expectation, continuant_solve, product_parameters,
    ContinuantState,
};
pub use oracle::{moment_determinant_oracle, moment_matrix};
pub use tue::{bulk_limit, edge_limit, expected_diag_overlap_tue1};

/// Below this distance from `x = 1` the TUE partial sum is summed directly.
const CLOSED_FORM_BAND: f64 = 1e-4;

#[derive(Clone)]
enum Family {
    /// `V = 0` on `[0, 1)`, `+inf` beyond: `Gamma_V(alpha) = 1 / alpha`.
    TruncatedUnitary,
    /// `V(t) = t`: the classical Gamma function.
    Gaussian,
    /// `e^{-V(t)} = (1 + t)^(-p)`: `Gamma_V(alpha) = B(alpha, p - alpha)`, finite for `alpha < p`.
    Spherical(f64),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

#[derive(Clone)]
pub struct Potential {
    name: String,
    support_radius: Option<f64>,
    family: Family,
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Potential")
            .field("name", &self.name)
            .field("support_radius", &self.support_radius)
            .finish()
    }
}

impl Potential {
    /// Weight of the TUE(N, 1) eigenvalue process (unit disk, flat).
    pub fn truncated_unitary() -> Self {
        Self {
            name: "tue1".into(),
            support_radius: Some(1.0),
            family: Family::TruncatedUnitary,
        }
    }

    /// Ginibre-type weight `V(t) = t`.
    pub fn gaussian() -> Self {
        Self {
            name: "gaussian".into(),
            support_radius: None,
            family: Family::Gaussian,
        }
    }

    /// Heavy-tailed weight `(1 + t)^(-exponent)`.
    pub fn spherical(exponent: f64) -> Self {
        Self {
            name: format!("spherical({exponent})"),
            support_radius: None,
            family: Family::Spherical(exponent),
        }
    }

    /// A weight given directly by its `Gamma_V`. Non-finite or non-positive
    /// values are reported as divergence.
    pub fn custom(
        name: impl Into<String>,
        support_radius: Option<f64>,
        gamma_v: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            support_radius,
            family: Family::Custom(Arc::new(gamma_v)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn support_radius(&self) -> Option<f64> {
        self.support_radius
    }

    pub(crate) fn is_truncated_unitary(&self) -> bool {
        matches!(self.family, Family::TruncatedUnitary)
    }

    fn divergence(&self, alpha: f64) -> Error {
        Error::Divergence {
            potential: self.name.clone(),
            alpha,
        }
    }

    /// `ln Gamma_V(alpha)`.
    pub fn ln_gamma_v(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0) {
            return Err(Error::Domain(format!("Gamma_V needs alpha > 0, got {alpha}")));
        }
        match &self.family {
            Family::TruncatedUnitary => Ok(-alpha.ln()),
            Family::Gaussian => Ok(libm::lgamma(alpha)),
            Family::Spherical(p) => {
                if alpha < *p {
                    Ok(libm::lgamma(alpha) + libm::lgamma(p - alpha) - libm::lgamma(*p))
                } else {
                    Err(self.divergence(alpha))
                }
            }
            Family::Custom(f) => {
                let g = f(alpha);
                if g.is_finite() && g > 0.0 {
                    Ok(g.ln())
                } else {
                    Err(self.divergence(alpha))
                }
            }
        }
    }
}

/// `Gamma_V(alpha)`.
pub fn gamma_v(p: &Potential, alpha: f64) -> Result<f64> {
    if p.is_truncated_unitary() && alpha > 0.0 {
        return Ok(1.0 / alpha);
    }
    let ln = p.ln_gamma_v(alpha)?;
    let g = ln.exp();
    if g.is_finite() {
        Ok(g)
    } else {
        Err(p.divergence(alpha))
    }
}

/// `ln G_V(k) = sum_{j=1}^k ln Gamma_V(j)`, with `G_V(0) = 1`.
pub fn big_g_v(p: &Potential, k: usize) -> Result<f64> {
    (1..=k).map(|j| p.ln_gamma_v(j as f64)).sum()
}

/// `e_V^(m)(x) = sum_{k=0}^m x^k / Gamma_V(k+1)`.
pub fn e_v_partial(p: &Potential, m: usize, x: f64) -> Result<f64> {
    Ok(ln_e_v_partial(p, m, x)?.exp())
}

/// `ln e_V^(m)(x)`.
pub fn ln_e_v_partial(p: &Potential, m: usize, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("partial sum needs finite x >= 0, got {x}")));
    }
    if p.is_truncated_unitary() && (1.0 - x).abs() > CLOSED_FORM_BAND {
        return Ok(ln_tue_partial_closed(m, x));
    }
    ln_partial_direct(p, m, x)
}

/// Log-sum-exp of `k ln x - ln Gamma_V(k+1)`.
pub(crate) fn ln_partial_direct(p: &Potential, m: usize, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(-p.ln_gamma_v(1.0)?);
    }
    let lx = x.ln();
    let terms = (0..=m)
        .map(|k| Ok(k as f64 * lx - p.ln_gamma_v(k as f64 + 1.0)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(log_sum_exp(&terms))
}

pub(crate) fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// `ln sum_{k=0}^m (k+1) x^k` from the closed form of the derivative of the
/// geometric sum, arranged with `expm1`/`ln_1p` to avoid cancellation.
fn ln_tue_partial_closed(m: usize, x: f64) -> f64 {
    let m = m as f64;
    if x < 1.0 {
        // (1 - x^{m+1} (1 + (m+1) y)) / y^2, y = 1 - x
        let y = 1.0 - x;
        let a = (m + 1.0) * (-y).ln_1p();
        let num = -a.exp_m1() - (m + 1.0) * y * a.exp();
        num.ln() - 2.0 * y.ln()
    } else {
        // x^m ((m+2) y + X^{m+2} - 1) / y^2 with X = 1/x, y = 1 - X
        let big_x = 1.0 / x;
        let y = 1.0 - big_x;
        let num = (m + 2.0) * y + ((m + 2.0) * (-y).ln_1p()).exp_m1();
        m * x.ln() + num.ln() - 2.0 * y.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tue_gamma_is_reciprocal() {
        let p = Potential::truncated_unitary();
        assert_eq!(gamma_v(&p, 1.0).unwrap(), 1.0);
        assert_eq!(gamma_v(&p, 2.0).unwrap(), 0.5);
        assert!(gamma_v(&p, 0.0).is_err());
    }

    #[test]
    fn spherical_diverges_past_exponent() {
        let p = Potential::spherical(4.0);
        assert!(gamma_v(&p, 3.0).is_ok());
        assert!(matches!(gamma_v(&p, 4.0), Err(Error::Divergence { .. })));
        // B(1, 3) = 1/3
        assert!((gamma_v(&p, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        let bad = Potential::custom("flat-on-half-line", None, |_| f64::INFINITY);
        assert!(matches!(gamma_v(&bad, 1.0), Err(Error::Divergence { .. })));
    }

    #[test]
    fn big_g_hand_values() {
        let p = Potential::truncated_unitary();
        assert_eq!(big_g_v(&p, 0).unwrap(), 0.0);
        assert!((big_g_v(&p, 3).unwrap() - (1.0f64 / 6.0).ln()).abs() < 1e-15);
        let g = Potential::gaussian();
        for k in 1..10 {
            let d = big_g_v(&g, k).unwrap() - big_g_v(&g, k - 1).unwrap();
            assert!((d - g.ln_gamma_v(k as f64).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_sum_hand_values() {
        let p = Potential::truncated_unitary();
        assert!((e_v_partial(&p, 1, 1.0).unwrap() - 3.0).abs() < 1e-14);
        assert!((e_v_partial(&p, 2, 0.5).unwrap() - 2.75).abs() < 1e-14);
        assert!((ln_partial_direct(&p, 2, 0.5).unwrap().exp() - 2.75).abs() < 1e-14);
        for pot in [Potential::truncated_unitary(), Potential::gaussian(), Potential::spherical(9.0)] {
            let expected = 1.0 / gamma_v(&pot, 1.0).unwrap();
            assert!((e_v_partial(&pot, 5, 0.0).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_above_one() {
        let p = Potential::truncated_unitary();
        for &(m, x) in &[(3usize, 2.0f64), (10, 1.5), (40, 4.0), (7, 1.001)] {
            let direct = ln_partial_direct(&p, m, x).unwrap();
            let closed = ln_tue_partial_closed(m, x);
            assert!((direct - closed).abs() < 1e-11, "m={m} x={x}");
        }
        // far beyond double range, still finite in log form
        let big = ln_e_v_partial(&p, 10_000, 4.0).unwrap();
        assert!(big.is_finite() && big > 10_000.0 * 4.0f64.ln());
    }
}
