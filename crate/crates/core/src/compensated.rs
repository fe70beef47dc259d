//! Neumaier-compensated accumulators.
//!
//! Each addition is split with an error-free two-sum and the lost low-order
//! bits are carried in a separate correction, so the accumulated rounding
//! stays at a few ulp of the result regardless of the number of terms.

use std::ops::AddAssign;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    correction: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.correction += (self.sum - t) + x;
        } else {
            self.correction += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Componentwise compensated sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl AddAssign<Complex64> for ComplexSum {
    fn add_assign(&mut self, rhs: Complex64) {
        self.add(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_bits() {
        // Naive summation returns 0 here.
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn many_small_terms() {
        let mut s = NeumaierSum::new();
        for _ in 0..10_000_000 {
            s += 0.1;
        }
        assert!((s.value() - 1_000_000.0).abs() < 1e-9);
    }

    #[test]
    fn complex_components_independent() {
        let mut s = ComplexSum::new();
        s += Complex64::new(1.0, 1e100);
        s += Complex64::new(0.5, 1.0);
        s += Complex64::new(0.0, -1e100);
        let v = s.value();
        assert_eq!(v.im, 1.0);
        assert_eq!(v.re, 1.5);
    }
}
