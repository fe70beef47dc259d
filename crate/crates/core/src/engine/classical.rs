use std::f64::consts::PI;

use num_complex::Complex64;

use crate::compensated::ComplexSum;
use crate::error::{Error, Result};

/// Relative size below which the first omitted dual term is negligible.
const CLASSICAL_REL_TOL: f64 = 1e-17;

fn check_half_plane(a: Complex64) -> Result<()> {
    if a.re > 0.0 && a.re.is_finite() && a.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("Re(a) > 0 (got a = {a})")))
    }
}

fn dual_term(a: Complex64, n: usize) -> Complex64 {
    let n2 = (n as f64) * (n as f64);
    (-PI * PI * n2 / a).exp()
}

/// Right-hand side of the theta transformation
/// `sum exp(-a n^2) = ½ sqrt(π/a) - ½ + sqrt(π/a) sum exp(-π² n² / a)`,
/// with the dual sum cut after `n_max` terms.
pub fn classical_pj_rhs(a: Complex64, n_max: usize) -> Result<Complex64> {
    check_half_plane(a)?;
    if n_max == 0 {
        return Err(Error::domain("n_max >= 1"));
    }
    let root = (PI / a).sqrt();
    let mut acc = ComplexSum::new();
    acc += 0.5 * root;
    acc += Complex64::new(-0.5, 0.0);
    let mut dual = ComplexSum::new();
    for n in 1..=n_max {
        dual += dual_term(a, n);
    }
    acc += root * dual.value();
    Ok(acc.value())
}

/// Smallest `n_max` whose first omitted dual term is below 1e-17 of the
/// retained value.
pub fn classical_pj_terms(a: Complex64) -> Result<usize> {
    check_half_plane(a)?;
    let root = (PI / a).sqrt();
    let scale = 0.5 * root.norm() + 0.5;
    let mut n = 1;
    while (root * dual_term(a, n + 1)).norm() >= CLASSICAL_REL_TOL * scale {
        n += 1;
        if n > 1_000_000 {
            return Err(Error::Convergence {
                limit: 1_000_000,
                re_a: a.re,
            });
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::direct_sum;
    use crate::problem::SumSpec;

    fn real(a: f64) -> Complex64 {
        Complex64::new(a, 0.0)
    }

    #[test]
    fn self_dual_point() {
        let a = real(PI);
        let n = classical_pj_terms(a).unwrap();
        let rhs = classical_pj_rhs(a, n).unwrap();
        let lhs: f64 = (1..20).map(|k| (-PI * (k * k) as f64).exp()).sum();
        assert!((rhs.re - lhs).abs() < 1e-16);
        assert!((lhs - 0.043_217_405_606_654_02).abs() < 1e-15);
    }

    #[test]
    fn large_a_limit() {
        // The dual side cancels down from O(1), so only absolute accuracy
        // survives once exp(-a) drops far below one ulp.
        let a = real(10.0);
        let rhs = classical_pj_rhs(a, classical_pj_terms(a).unwrap()).unwrap();
        assert!((rhs.re / (-10f64).exp() - 1.0).abs() < 1e-9);
        let a = real(50.0);
        let rhs = classical_pj_rhs(a, classical_pj_terms(a).unwrap()).unwrap();
        assert!((rhs.re - (-50f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn identity_is_exact() {
        for a in [0.5, 1.0, 2.0, PI, 0.01] {
            let spec = SumSpec::real(a, 0.0).unwrap();
            let oracle = direct_sum(&spec, 1e-16).unwrap();
            let rhs = classical_pj_rhs(real(a), classical_pj_terms(real(a)).unwrap()).unwrap();
            assert!((rhs - oracle.value).norm() <= 1e-13, "a = {a}");
        }
    }

    #[test]
    fn complex_a() {
        let a = Complex64::new(0.3, 0.4);
        let spec = SumSpec::new(a, 0.0).unwrap();
        let oracle = direct_sum(&spec, 1e-16).unwrap();
        let rhs = classical_pj_rhs(a, classical_pj_terms(a).unwrap()).unwrap();
        assert!((rhs - oracle.value).norm() <= 1e-13);
    }

    #[test]
    fn domain() {
        assert!(classical_pj_rhs(real(-1.0), 3).is_err());
        assert!(classical_pj_rhs(real(1.0), 0).is_err());
        assert!(classical_pj_terms(Complex64::new(0.0, 1.0)).is_err());
    }
}
