//! The problem instance `S(a; w) = sum_{n >= 1} exp(-a n^2) / n^w`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for recognising an integer exponent `w`.
pub const INTEGER_TOL: f64 = 1e-9;

/// A Gaussian parameter `a` with `Re(a) > 0` and an exponent `w >= 0`.
///
/// `w = 0` is admitted so the classical theta-sum identity can be checked
/// through the same machinery; the expansion routes reject it themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumSpec {
    a: Complex64,
    w: f64,
}

impl SumSpec {
    pub fn new(a: Complex64, w: f64) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::domain(format!("a must be finite (got a = {a})")));
        }
        if a.re <= 0.0 {
            return Err(Error::domain(format!("Re(a) > 0 (got a = {a})")));
        }
        if !w.is_finite() || w < 0.0 {
            return Err(Error::domain(format!("w >= 0 and finite (got w = {w})")));
        }
        Ok(Self { a, w })
    }

    /// Shorthand for a real parameter `a`.
    pub fn real(a: f64, w: f64) -> Result<Self> {
        Self::new(Complex64::new(a, 0.0), w)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    /// `Some(m)` when `w` is within [`INTEGER_TOL`] of the even integer `2m`.
    pub fn even_half(&self) -> Option<u32> {
        even_half(self.w)
    }

    /// `Some(m)` when `w` is within [`INTEGER_TOL`] of the odd integer `2m + 1`.
    pub fn odd_half(&self) -> Option<u32> {
        odd_half(self.w)
    }
}

pub fn even_half(w: f64) -> Option<u32> {
    let m = (w / 2.0).round();
    (m >= 0.0 && (w - 2.0 * m).abs() <= INTEGER_TOL).then_some(m as u32)
}

pub fn odd_half(w: f64) -> Option<u32> {
    let m = ((w - 1.0) / 2.0).round();
    (m >= 0.0 && (w - 2.0 * m - 1.0).abs() <= INTEGER_TOL).then_some(m as u32)
}

/// Distance from `w` to the nearest positive odd integer.
pub fn distance_to_odd(w: f64) -> f64 {
    let m = ((w - 1.0) / 2.0).round().max(0.0);
    (w - 2.0 * m - 1.0).abs()
}
