use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use super::gamma::{gamma_real, log_gamma};
use super::{check_finite, sin_pi, POLE_TOL};
use crate::error::{Error, Result};

/// Number of terms in the accelerated alternating series. The truncation
/// error is below `3 / (3 + sqrt 8)^n`, about 1e-30 here.
const ETA_TERMS: usize = 40;

/// Below this argument the reflection factors are evaluated in log space.
const REFLECTION_LOG_THRESHOLD: f64 = -120.0;

/// Normalised Borwein weights `(d_n - d_k) / d_n`, built from tail sums so
/// no cancellation occurs near `k = n`.
fn eta_weights() -> &'static [f64; ETA_TERMS] {
    static WEIGHTS: OnceLock<[f64; ETA_TERMS]> = OnceLock::new();
    WEIGHTS.get_or_init(|| {
        let n = ETA_TERMS;
        // term_i = n (n+i-1)! 4^i / ((n-i)! (2i)!)
        let mut terms = [0.0f64; ETA_TERMS + 1];
        terms[0] = 1.0;
        for i in 0..n {
            let (fi, fnn) = (i as f64, n as f64);
            terms[i + 1] =
                terms[i] * 4.0 * (fnn + fi) * (fnn - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        }
        let total: f64 = terms.iter().sum();
        let mut weights = [0.0; ETA_TERMS];
        let mut tail = 0.0;
        for k in (0..n).rev() {
            tail += terms[k + 1];
            weights[k] = tail / total;
        }
        weights
    })
}

/// Dirichlet eta `η(s) = Σ (-1)^(k) (k+1)^(-s)` for real `s >= 0`.
fn eta(s: f64) -> f64 {
    let weights = eta_weights();
    // Sum from the small end so the tail does not get absorbed.
    let mut acc = 0.0;
    for k in (0..ETA_TERMS).rev() {
        let t = weights[k] * ((k + 1) as f64).powf(-s);
        if k % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// `ζ(s)` for `s >= 1/2`, `s != 1`.
fn zeta_right(s: f64) -> f64 {
    // 1 - 2^(1-s), accurate near s = 1.
    let denom = -((1.0 - s) * LN_2).exp_m1();
    eta(s) / denom
}

fn is_trivial_zero(s: f64) -> bool {
    let k = (s / 2.0).round();
    k <= -1.0 && (s - 2.0 * k).abs() < POLE_TOL
}

/// The Riemann zeta function on the real line.
///
/// Arguments below 1/2 are mapped through the functional equation
/// `ζ(s) = 2^s π^(s-1) sin(πs/2) Γ(1-s) ζ(1-s)`; trivial zeros are exact.
pub fn zeta_real(s: f64) -> Result<f64> {
    check_finite(s)?;
    if (s - 1.0).abs() < POLE_TOL {
        return Err(Error::Pole { x: s });
    }
    if s.abs() < POLE_TOL {
        return Ok(-0.5);
    }
    if s >= 0.5 {
        return Ok(zeta_right(s));
    }
    if is_trivial_zero(s) {
        return Ok(0.0);
    }
    if s < REFLECTION_LOG_THRESHOLD {
        let (sign, ln_abs) = zeta_sign_ln(s)?;
        return Ok(sign * ln_abs.exp());
    }
    let reflected = zeta_right(1.0 - s);
    let factor = (2.0 * PI).powf(s) / PI;
    Ok(factor * sin_pi(0.5 * s) * gamma_real(1.0 - s)? * reflected)
}

/// Sign and natural log of `|ζ(s)|` for `s < 1/2`, computed from the
/// functional equation so arguments far below `-170` stay finite.
///
/// Returns `(0.0, -inf)` at the trivial zeros.
pub fn zeta_sign_ln(s: f64) -> Result<(f64, f64)> {
    check_finite(s)?;
    if s >= 0.5 {
        return Err(Error::domain(format!(
            "zeta_sign_ln needs s < 1/2 (got {s})"
        )));
    }
    if s.abs() < POLE_TOL {
        return Ok((-1.0, 0.5f64.ln()));
    }
    if is_trivial_zero(s) {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    let sine = sin_pi(0.5 * s);
    let reflected = zeta_right(1.0 - s);
    let ln_abs = s * (2.0 * PI).ln() - PI.ln()
        + sine.abs().ln()
        + log_gamma(1.0 - s)?
        + reflected.abs().ln();
    Ok((sine.signum() * reflected.signum(), ln_abs))
}
