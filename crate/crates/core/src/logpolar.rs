//! Complex products carried as `(ln |z|, arg z)`.

use std::f64::consts::{PI, TAU};
use std::ops::{Mul, MulAssign};

use num_complex::Complex64;

/// A complex number in log-polar form. Zero is `ln_abs = -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub ln_abs: f64,
    /// Argument reduced to `(-pi, pi]`.
    pub phase: f64,
}

fn wrap(phase: f64) -> f64 {
    let p = (phase + PI).rem_euclid(TAU) - PI;
    if p == -PI {
        PI
    } else {
        p
    }
}

impl LogComplex {
    pub const ONE: Self = Self {
        ln_abs: 0.0,
        phase: 0.0,
    };

    pub fn from_complex(z: Complex64) -> Self {
        Self {
            ln_abs: z.norm().ln(),
            phase: z.arg(),
        }
    }

    /// A positive real `x` given through `ln x`.
    pub fn from_ln(ln_abs: f64) -> Self {
        Self { ln_abs, phase: 0.0 }
    }

    pub fn conj(self) -> Self {
        Self {
            ln_abs: self.ln_abs,
            phase: wrap(-self.phase),
        }
    }

    pub fn recip(self) -> Self {
        Self {
            ln_abs: -self.ln_abs,
            phase: wrap(-self.phase),
        }
    }

    /// `|z|^2` in log form.
    pub fn ln_norm_sqr(self) -> f64 {
        2.0 * self.ln_abs
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.ln_abs.exp(), self.phase)
    }
}

impl Mul for LogComplex {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self {
            ln_abs: self.ln_abs + rhs.ln_abs,
            phase: wrap(self.phase + rhs.phase),
        }
    }
}

impl MulAssign for LogComplex {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl std::iter::Product for LogComplex {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

/// Relative distance `|a - b| / |b|`, falling back to `|a - b|` when `b = 0`.
pub fn relative_error(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    let s = b.norm();
    if s == 0.0 {
        d
    } else {
        d / s
    }
}
