use serde::Serialize;

use crate::error::{Error, Result};

/// Asymptotic 1% critical constant of the two-sample KS statistic.
pub const KS_C_1PCT: f64 = 1.6276;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KSResult {
    pub statistic: f64,
    pub n1: usize,
    pub n2: usize,
    pub critical_1pct: f64,
}

impl KSResult {
    pub fn passes(&self) -> bool {
        self.statistic < self.critical_1pct
    }
}

/// Two-sample Kolmogorov-Smirnov statistic `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KSResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n1, n2) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n1 && j < n2 {
        let x = if a[i].total_cmp(&b[j]).is_le() { a[i] } else { b[j] };
        while i < n1 && a[i].total_cmp(&x).is_le() {
            i += 1;
        }
        while j < n2 && b[j].total_cmp(&x).is_le() {
            j += 1;
        }
        d = d.max((i as f64 / n1 as f64 - j as f64 / n2 as f64).abs());
    }
    let (f1, f2) = (n1 as f64, n2 as f64);
    Ok(KSResult {
        statistic: d,
        n1,
        n2,
        critical_1pct: KS_C_1PCT * ((f1 + f2) / (f1 * f2)).sqrt(),
    })
}
