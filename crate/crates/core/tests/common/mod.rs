//! Hand-written closed forms of the even transform for w = 2 and w = 4,
//! sharing nothing with the library except the oracle-free constants.

#![allow(dead_code)]

use std::f64::consts::PI;

use theta_sum::Complex64;

fn dual_block(
    a: Complex64,
    n: usize,
    w: i32,
    m_terms: usize,
    coeff: impl Fn(usize) -> f64,
) -> Complex64 {
    let nf = n as f64;
    let x = -a / (PI * PI * nf * nf);
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for j in 0..m_terms {
        series += coeff(j) * power;
        power *= x;
    }
    (-PI * PI * nf * nf / a).exp() / nf.powi(w) * series
}

/// `(3/2)_j`.
fn rising_three_halves(j: usize) -> f64 {
    (0..j).map(|i| 1.5 + i as f64).product()
}

/// `(5/2)_j (2)_j / j!` = `(5/2)_j (j + 1)`.
fn c2(j: usize) -> f64 {
    (0..j).map(|i| 2.5 + i as f64).product::<f64>() * (j as f64 + 1.0)
}

/// `S(a; 2) = π²/6 + a/2 − (πa)^½ − (a/π)^{3/2} Σ_n e^{−π²n²/a}/n² Σ_j (3/2)_j (−a/π²n²)^j`.
pub fn literal_m1(a: Complex64, m_terms: usize, n_terms: usize) -> Complex64 {
    let mut dual = Complex64::new(0.0, 0.0);
    for n in 1..=n_terms {
        dual += dual_block(a, n, 2, m_terms, rising_three_halves);
    }
    PI * PI / 6.0 + a / 2.0 - (PI * a).sqrt() - (a / PI).powf(1.5) * dual
}

/// `S(a; 4) = π⁴/90 − π²a/6 − a²/4 + (2/3)π^½ a^{3/2} + (a/π)^{7/2} Σ_n … `.
pub fn literal_m2(a: Complex64, m_terms: usize, n_terms: usize) -> Complex64 {
    let mut dual = Complex64::new(0.0, 0.0);
    for n in 1..=n_terms {
        dual += dual_block(a, n, 4, m_terms, c2);
    }
    PI.powi(4) / 90.0 - PI * PI * a / 6.0 - a * a / 4.0
        + 2.0 / 3.0 * PI.sqrt() * a.powf(1.5)
        + (a / PI).powf(3.5) * dual
}
