//! Real-argument special functions: Γ, ln Γ, ψ at integers, ζ, Bernoulli
//! numbers, Pochhammer symbols and the inverse-factorial coefficients
//! `c_j(m) = (m)_j (m + 1/2)_j / j!` used by the even-exponent transform.
//!
//! Everything here is a pure function of its arguments; the only state is
//! a pair of lazily built, immutable tables.

mod bernoulli;
mod gamma;
mod zeta;

pub use bernoulli::{bernoulli_even, MAX_BERNOULLI_HALF_INDEX};
pub use gamma::{factorial, gamma_real, log_gamma};
pub use zeta::{zeta_real, zeta_sign_ln};

use std::f64::consts::PI;

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};

/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// Arguments closer than this to a pole are treated as the pole.
pub const POLE_TOL: f64 = 1e-12;

pub(crate) fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("argument must be finite (got {x})")))
    }
}

pub(crate) fn near_nonpositive_integer(x: f64) -> bool {
    x < 0.5 && (x - x.round()).abs() < POLE_TOL
}

/// `sin(πx)` with exact argument reduction, so it vanishes at integers.
pub fn sin_pi(x: f64) -> f64 {
    // r in [-1, 1]; both subtractions below are exact.
    let r = x - 2.0 * (0.5 * x).round();
    let s = if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r.abs() <= 0.75 {
        r.signum() * (PI * (0.5 - r.abs())).cos()
    } else {
        r.signum() * (PI * (1.0 - r.abs())).sin()
    };
    // sin(π·(±1)) and sin(0) must be an exact zero, not -0 vs +0 noise.
    if s == 0.0 {
        0.0
    } else {
        s
    }
}

/// `ψ(m + 1) = -γ + H_m`, the digamma function at a positive integer.
pub fn digamma_int(m: u32) -> f64 {
    let mut acc = NeumaierSum::new();
    acc += -EULER_GAMMA;
    for r in (1..=m).rev() {
        acc += 1.0 / r as f64;
    }
    acc.value()
}

/// Rising factorial `x (x+1) ... (x+j-1)`; 1 for `j = 0`.
pub fn pochhammer(x: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// Inverse-factorial coefficient `c_j = (m)_j (m + 1/2)_j / j!`.
///
/// The three products are interleaved factor by factor, which keeps the
/// value finite long after the individual Pochhammer symbols overflow.
pub fn coeff_c(m: u32, j: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("coeff_c needs m >= 1"));
    }
    let m = m as f64;
    Ok((0..j).fold(1.0, |acc, i| {
        let i = i as f64;
        acc * (m + i) * (m + 0.5 + i) / (i + 1.0)
    }))
}

/// The duplication form `c_j = 2^(-2j) (2m)_{2j} / j!`, evaluated as
/// separate whole products. Kept as an independent route for checking
/// [`coeff_c`]; overflows for `j` beyond roughly 70.
pub fn coeff_c_duplication(m: u32, j: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("coeff_c needs m >= 1"));
    }
    let num = pochhammer(2.0 * m as f64, 2 * j);
    Ok(num * 0.25f64.powi(j as i32) / factorial(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_exact_at_integers() {
        for k in -10..=10 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert!((sin_pi(1e6 + 0.25) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((sin_pi(-2.7) - (PI * -2.7).sin()).abs() < 1e-14);
    }

    #[test]
    fn digamma_values() {
        assert_eq!(digamma_int(0), -EULER_GAMMA);
        assert!((digamma_int(1) - (1.0 - EULER_GAMMA)).abs() < 1e-15);
        assert!((digamma_int(4) - (25.0 / 12.0 - EULER_GAMMA)).abs() < 1e-15);
    }

    #[test]
    fn digamma_recurrence() {
        for m in 1..=50 {
            let diff = digamma_int(m) - digamma_int(m - 1);
            assert!((diff - 1.0 / m as f64).abs() <= 1e-15, "m = {m}");
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(1.5, 0), 1.0);
        assert_eq!(pochhammer(1.5, 2), 3.75);
        assert_eq!(pochhammer(1.0, 6), 720.0);
    }

    #[test]
    fn coeff_values() {
        assert_eq!(coeff_c(3, 0).unwrap(), 1.0);
        assert_eq!(coeff_c(2, 1).unwrap(), 5.0);
        assert_eq!(coeff_c_duplication(2, 1).unwrap(), 5.0);
        for j in 0..20 {
            let want = pochhammer(1.5, j);
            assert!((coeff_c(1, j).unwrap() / want - 1.0).abs() < 1e-14);
        }
        assert!(coeff_c(0, 3).is_err());
        assert!(coeff_c(2, 80).unwrap().is_finite());
    }

    #[test]
    fn coeff_two_forms_agree() {
        for m in 1..=5 {
            for j in 0..=30 {
                let a = coeff_c(m, j).unwrap();
                let b = coeff_c_duplication(m, j).unwrap();
                assert!(((a - b) / b).abs() <= 1e-12, "m = {m}, j = {j}");
            }
        }
    }

    #[test]
    fn zeta_reflection_consistency() {
        for s in [-5.5, -2.3, -0.7, 0.3] {
            let lhs = zeta_real(s).unwrap();
            let rhs = 2f64.powf(s)
                * PI.powf(s - 1.0)
                * zeta_real(1.0 - s).unwrap()
                * gamma_real(1.0 - s).unwrap()
                * (0.5 * PI * s).sin();
            assert!(((lhs - rhs) / rhs).abs() <= 1e-10, "s = {s}");
        }
    }

    #[test]
    fn bernoulli_zeta_identity() {
        for n in 1..=15u32 {
            let z = zeta_real(2.0 * n as f64).unwrap();
            let b = bernoulli_even(n).unwrap().abs();
            let rhs = (2.0 * PI).powi(2 * n as i32) * b / (2.0 * factorial(2 * n));
            assert!(((z - rhs) / z).abs() <= 1e-10, "n = {n}");
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn gamma_recurrence(x in -10.0f64..10.0) {
                let near_pole = |y: f64| y <= 0.5 && (y - y.round()).abs() < 1e-3;
                prop_assume!(!near_pole(x) && !near_pole(x + 1.0));
                let lhs = gamma_real(x + 1.0).unwrap();
                let rhs = x * gamma_real(x).unwrap();
                prop_assert!(((lhs - rhs) / rhs).abs() <= 1e-12, "x = {}", x);
            }

            #[test]
            fn log_gamma_matches_gamma(x in 0.01f64..150.0) {
                let lg = log_gamma(x).unwrap();
                let g = gamma_real(x).unwrap();
                prop_assert!((lg - g.ln()).abs() <= 1e-13 * lg.abs().max(1.0));
            }
        }
    }
}
