//! Ground truth by direct summation.
//!
//! Terms are accumulated with compensated summation and the loop stops at
//! the first `n` whose tail bound
//!
//! ```text
//! T(n) = |exp(-a (n+1)^2)| / ((n+1)^w (1 - exp(-Re(a) (2n+3))))
//! ```
//!
//! drops below the requested tolerance. The ratio of consecutive terms
//! beyond `n + 1` is at most `exp(-Re(a) (2n+3))` for any `w >= 0`, so the
//! omitted tail is dominated by a geometric series and `T(n)` is rigorous.

use num_complex::Complex64;

use crate::compensated::{ComplexSum, NeumaierSum};
use crate::error::{Error, Result};
use crate::problem::SumSpec;

/// Direct summation gives up past this many terms.
pub const MAX_ORACLE_TERMS: usize = 10_000_000;

/// Smallest tolerance binary64 can meaningfully certify.
pub const MIN_ORACLE_EPS: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: Complex64,
    pub n_terms: usize,
    /// Rigorous bound on the omitted tail.
    pub tail_bound: f64,
    /// `n_terms * eps * sum |term|`.
    pub rounding_bound: f64,
}

impl OracleResult {
    /// Total error budget of the oracle value.
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }
}

/// `exp(-a n^2) / n^w` with the phase reduced from the exact `n^2`.
pub fn term(spec: &SumSpec, n: usize) -> Complex64 {
    let a = spec.a();
    let n2 = (n as f64) * (n as f64);
    let magnitude = (-a.re * n2).exp() * (n as f64).powf(-spec.w());
    Complex64::from_polar(magnitude, -a.im * n2)
}

/// Rigorous bound on `sum_{k > n} |term(k)|`.
pub fn tail_bound(spec: &SumSpec, n: usize) -> f64 {
    let re_a = spec.a().re;
    let next = (n + 1) as f64;
    let lead = (-re_a * next * next).exp() * next.powf(-spec.w());
    let ratio_gap = -(-re_a * (2.0 * n as f64 + 3.0)).exp_m1();
    lead / ratio_gap
}

/// Plain partial sum of the first `n_terms` terms (compensated).
pub fn partial_sum(spec: &SumSpec, n_terms: usize) -> Complex64 {
    let mut acc = ComplexSum::new();
    for n in 1..=n_terms {
        acc += term(spec, n);
    }
    acc.value()
}

pub fn direct_sum(spec: &SumSpec, eps: f64) -> Result<OracleResult> {
    if !(eps >= MIN_ORACLE_EPS) || !eps.is_finite() {
        return Err(Error::domain(format!(
            "oracle tolerance eps >= {MIN_ORACLE_EPS:e} (got {eps:e})"
        )));
    }
    let mut acc = ComplexSum::new();
    let mut abs_acc = NeumaierSum::new();
    let mut n = 0;
    loop {
        n += 1;
        if n > MAX_ORACLE_TERMS {
            return Err(Error::Convergence {
                limit: MAX_ORACLE_TERMS,
                re_a: spec.a().re,
            });
        }
        let t = term(spec, n);
        acc += t;
        abs_acc += t.norm();
        let bound = tail_bound(spec, n);
        if bound <= eps {
            let value = acc.value();
            if !(value.re.is_finite() && value.im.is_finite()) {
                return Err(Error::NonFinite(format!("direct sum at a = {}", spec.a())));
            }
            return Ok(OracleResult {
                value,
                n_terms: n,
                tail_bound: bound,
                rounding_bound: n as f64 * f64::EPSILON * abs_acc.value(),
            });
        }
    }
}

/// `|value - S(a; w)|` against the oracle at its finest tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsError {
    pub error: f64,
    pub oracle: OracleResult,
}

pub fn abs_error(value: Complex64, spec: &SumSpec) -> Result<AbsError> {
    let oracle = direct_sum(spec, MIN_ORACLE_EPS)?;
    Ok(AbsError {
        error: (value - oracle.value).norm(),
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta_real;

    #[test]
    fn table_value_at_one() {
        let r = direct_sum(&SumSpec::real(1.0, 4.0).unwrap(), 1e-16).unwrap();
        assert_eq!(format!("{:.6}", r.value.re), "0.369026");
        assert_eq!(r.value.im, 0.0);
        assert!(r.tail_bound <= 1e-16);
    }

    #[test]
    fn dominant_first_term() {
        let r = direct_sum(&SumSpec::real(50.0, 4.0).unwrap(), 1e-16).unwrap();
        assert_eq!(r.n_terms, 1);
        assert!((r.value.re / (-50f64).exp() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        let spec = SumSpec::real(1.0, 2.0).unwrap();
        assert!(direct_sum(&spec, 1e-17).is_err());
        assert!(direct_sum(&spec, f64::NAN).is_err());
        assert!(SumSpec::real(0.0, 2.0).is_err());
    }

    #[test]
    fn too_small_a_is_a_convergence_error() {
        let spec = SumSpec::real(1e-14, 0.5).unwrap();
        assert!(matches!(
            direct_sum(&spec, 1e-16),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn approaches_zeta_as_a_vanishes() {
        let r = direct_sum(&SumSpec::real(1e-6, 6.0).unwrap(), 1e-16).unwrap();
        assert!((r.value.re - zeta_real(6.0).unwrap()).abs() <= 1e-5);
    }

    #[test]
    fn self_error_is_zero() {
        let spec = SumSpec::real(0.3, 1.5).unwrap();
        let r = direct_sum(&spec, 1e-16).unwrap();
        assert_eq!(abs_error(r.value, &spec).unwrap().error, 0.0);
    }

    #[test]
    fn partial_sums_increase_for_real_a() {
        let spec = SumSpec::real(0.05, 2.5).unwrap();
        let r = direct_sum(&spec, 1e-16).unwrap();
        let mut prev = 0.0;
        for n in 1..=r.n_terms {
            let p = partial_sum(&spec, n).re;
            assert!(p > prev);
            assert!(p <= r.value.re + r.tail_bound);
            prev = p;
        }
    }

    #[test]
    fn tail_bound_decreases() {
        let spec = SumSpec::new(Complex64::new(0.2, 0.7), 3.0).unwrap();
        for n in 1..40 {
            assert!(tail_bound(&spec, n + 1) < tail_bound(&spec, n));
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(50))]
            #[test]
            fn tail_bound_is_sound(
                re in 0.05f64..5.0,
                im in -3.0f64..3.0,
                w in 0.001f64..6.0,
            ) {
                let spec = SumSpec::new(Complex64::new(re, im), w).unwrap();
                let r = direct_sum(&spec, 1e-16).unwrap();
                let doubled = partial_sum(&spec, 2 * r.n_terms);
                let change = (doubled - r.value).norm();
                prop_assert!(change <= r.tail_bound + r.rounding_bound,
                    "change {} vs tail {}", change, r.tail_bound);
            }
        }
    }
}
