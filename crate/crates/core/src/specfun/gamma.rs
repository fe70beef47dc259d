use std::f64::consts::{E, PI};

use super::{check_finite, near_nonpositive_integer, sin_pi};
use crate::error::{Error, Result};

// Lanczos approximation, g = 10.900511, 11 terms (Pugh 2004, table p. 116).
const LANCZOS_G: f64 = 10.900511;

const LANCZOS_COEFFS: [f64; 11] = [
    2.485_740_891_387_535_655_46e-5,
    1.051_423_785_817_219_742_10,
    -3.456_870_972_220_162_354_69,
    4.512_277_094_668_948_237_00,
    -2.982_852_253_235_766_557_21,
    1.056_397_115_771_267_130_77,
    -1.954_287_731_916_458_695_83e-1,
    1.709_705_434_044_412_243_07e-2,
    -5.719_261_174_043_057_812_83e-4,
    4.633_994_733_599_056_367_08e-6,
    -2.719_949_084_886_077_039_10e-9,
];

// 2 * sqrt(e / pi)
const TWO_SQRT_E_OVER_PI: f64 =
    1.860_382_734_205_265_717_336_249_247_266_663_112_059_421_841_408_575_5;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_617_639_861_397_473_637_783_4;

/// Largest `n` with `n!` representable.
const MAX_FACTORIAL: u32 = 170;

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_COEFFS[0], |s, (i, &c)| s + c / (x + i as f64 - 1.0))
}

/// Γ(x) for x >= 1/2.
fn gamma_lanczos(x: f64) -> f64 {
    let base = (x - 0.5 + LANCZOS_G) / E;
    // Split the power so the intermediate does not overflow before Γ does.
    let half = base.powf(0.5 * (x - 0.5));
    lanczos_sum(x) * TWO_SQRT_E_OVER_PI * half * half
}

fn factorial_f64(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// The gamma function on the real line.
///
/// Positive integers up to 170 are returned as exact products, arguments
/// below 1/2 go through the reflection `Γ(x) Γ(1-x) = π / sin(πx)`.
pub fn gamma_real(x: f64) -> Result<f64> {
    check_finite(x)?;
    if near_nonpositive_integer(x) {
        return Err(Error::Pole { x });
    }
    if x.fract() == 0.0 && x > 0.0 && x <= (MAX_FACTORIAL + 1) as f64 {
        return Ok(factorial_f64(x as u32 - 1));
    }
    if x < 0.5 {
        Ok(PI / (sin_pi(x) * gamma_positive(1.0 - x)))
    } else {
        Ok(gamma_positive(x))
    }
}

/// Above this argument Stirling's series beats the Lanczos sum.
const STIRLING_FROM: f64 = 10.0;

fn gamma_positive(x: f64) -> f64 {
    if x < STIRLING_FROM {
        gamma_lanczos(x)
    } else {
        // sqrt(2π/x) (x/e)^x exp(correction), power split against overflow.
        let half = (x / E).powf(0.5 * x);
        (2.0 * PI / x).sqrt() * half * (half * stirling_correction(x).exp())
    }
}

/// `n!` as a float; exact for `n <= 22`, infinite beyond 170.
pub fn factorial(n: u32) -> f64 {
    if n > MAX_FACTORIAL {
        f64::INFINITY
    } else {
        factorial_f64(n)
    }
}

/// ln Γ(x) for x > 0, usable far beyond the overflow threshold of Γ.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_finite(x)?;
    if x <= 0.0 {
        return Err(Error::domain(format!("log_gamma needs x > 0 (got {x})")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 0.5 {
        // ln Γ(x) = ln Γ(1 + x) - ln x keeps tiny x away from overflow.
        return Ok(gamma_lanczos(1.0 + x).ln() - x.ln());
    }
    if x < 15.0 {
        return Ok(gamma_lanczos(x).ln());
    }
    Ok(stirling(x))
}

fn stirling_correction(x: f64) -> f64 {
    // B_{2k} / (2k (2k-1)) for k = 1..7.
    const SERIES: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    SERIES.iter().rev().fold(0.0, |acc, &c| acc * inv2 + c) * inv
}

fn stirling(x: f64) -> f64 {
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_correction(x)
}
