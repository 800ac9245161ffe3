use crate::error::{Error, Result};

/// Distance from `|z1|^2 = 1` below which the ratio of sums is used instead
/// of the closed form.
const SERIES_BAND: f64 = 1e-4;

/// Below this `kappa` the edge profile is evaluated from its Taylor series.
const EDGE_SERIES_CUTOFF: f64 = 1e-3;

/// `E[O_11 | lambda_1 = z1]` for TUE(N, 1) with `X = |z1|^2`:
/// `((N+1)(1-X) + X^{N+1} - 1) / (1 - X^{N+1} - (N+1)(1-X) X^N)`.
pub fn expected_diag_overlap_tue1(n: usize, z1sq: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("expected overlap needs n >= 1".into()));
    }
    if !(0.0..1.0).contains(&z1sq) {
        return Err(Error::Domain(format!("|z1|^2 must lie in [0, 1), got {z1sq}")));
    }
    if 1.0 - z1sq < SERIES_BAND {
        Ok(overlap_ratio_of_sums(n, z1sq))
    } else {
        Ok(overlap_closed(n, z1sq))
    }
}

/// `sum (k+1) X^{N-1-k} / sum (k+1) X^k`.
fn overlap_ratio_of_sums(n: usize, x: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut pow = 1.0;
    for k in 0..n {
        den += (k + 1) as f64 * pow;
        num += (n - k) as f64 * pow;
        pow *= x;
    }
    num / den
}

fn overlap_closed(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    let y = 1.0 - x;
    let l = (-y).ln_1p();
    let tail = ((nf + 1.0) * l).exp_m1();
    let num = (nf + 1.0) * y + tail;
    let den = -tail - (nf + 1.0) * y * (nf * l).exp();
    num / den
}

/// Bulk profile `1 - r1^2` of `E[O_11] / N`.
pub fn bulk_limit(r1sq: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r1sq) {
        return Err(Error::Domain(format!("r1^2 must lie in [0, 1), got {r1sq}")));
    }
    Ok(1.0 - r1sq)
}

/// Edge profile `(1 - (1-kappa) e^kappa) / (e^kappa - 1 - kappa)` for
/// `1 - |z1|^2 ~ kappa / N`.
pub fn edge_limit(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be finite and positive, got {kappa}")));
    }
    if kappa < EDGE_SERIES_CUTOFF {
        Ok(edge_series(kappa))
    } else {
        Ok(edge_closed(kappa))
    }
}

/// `sum_{n>=2} (n-1) k^{n-2} / n!  over  sum_{n>=2} k^{n-2} / n!`, truncated.
fn edge_series(kappa: f64) -> f64 {
    let (mut num, mut den, mut pow, mut fact) = (0.0, 0.0, 1.0, 2.0);
    for n in 2..8 {
        num += (n - 1) as f64 * pow / fact;
        den += pow / fact;
        pow *= kappa;
        fact *= (n + 1) as f64;
    }
    num / den
}

fn edge_closed(kappa: f64) -> f64 {
    let em = (-kappa).exp_m1();
    (em + kappa) / (-em - kappa * (-kappa).exp())
}
