use num_complex::Complex64;

use super::policy::{sum_series, LeastTerm};
use super::{Engine, Evaluation, MethodChoice, TermLog, TruncationPolicy, Warning};
use crate::error::{Error, Result};
use crate::oracle::{direct_sum, MIN_ORACLE_EPS};
use crate::problem::{distance_to_odd, even_half, SumSpec};
use crate::specfun::{
    digamma_int, factorial, gamma_real, log_gamma, zeta_real, zeta_sign_ln, EULER_GAMMA,
};

/// Distance to an odd integer below which the generic expansion is flagged.
pub const NEAR_ODD_WARN: f64 = 0.05;

/// Below this zeta argument the algebraic terms are assembled in log space.
const LOG_SPACE_BELOW: f64 = -40.0;

/// Remainders must exceed the oracle error budget by this factor.
const NOISE_MARGIN: f64 = 1e2;

fn check_generic(spec: &SumSpec) -> Result<()> {
    if even_half(spec.w()).is_some() {
        return Err(Error::EvenExponent { w: spec.w() });
    }
    Ok(())
}

/// The non-algebraic leading term `J(a; w)`:
///
/// * `w = 2m + 1`: `(-a)^m / m! * (γ - ½ log a + ½ ψ(m + 1))`, from the
///   double pole of `Γ(s) ζ(2s + w)` at `s = -m`;
/// * otherwise: `½ Γ(½ - ½w) a^((w-1)/2)`.
pub fn j_term(spec: &SumSpec) -> Result<Complex64> {
    check_generic(spec)?;
    let a = spec.a();
    match spec.odd_half() {
        Some(m) => {
            let bracket = EULER_GAMMA - 0.5 * a.ln() + 0.5 * digamma_int(m);
            Ok((-a).powu(m) / factorial(m) * bracket)
        }
        None => {
            let w = spec.w();
            let g = gamma_real(0.5 - 0.5 * w)?;
            Ok(0.5 * g * a.powf(0.5 * (w - 1.0)))
        }
    }
}

/// `(-1)^k ζ(w - 2k) a^k / k!`.
fn algebraic_term(a: Complex64, w: f64, k: usize) -> Result<Complex64> {
    let s = w - 2.0 * k as f64;
    let parity = if k % 2 == 0 { 1.0 } else { -1.0 };
    if s >= LOG_SPACE_BELOW {
        let z = zeta_real(s)?;
        return Ok(parity * z / factorial(k as u32) * a.powu(k as u32));
    }
    let (sign, ln_zeta) = zeta_sign_ln(s)?;
    if sign == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ln_mag = ln_zeta - log_gamma(k as f64 + 1.0)?;
    let exponent = Complex64::new(ln_mag, 0.0) + k as f64 * a.ln();
    Ok(parity * sign * exponent.exp())
}

pub(super) fn eval_generic(
    engine: &Engine,
    spec: &SumSpec,
    policy: TruncationPolicy,
) -> Result<Evaluation> {
    check_generic(spec)?;
    let (a, w) = (spec.a(), spec.w());
    let lead = j_term(spec)?;
    let skip = spec.odd_half().map(|m| m as usize);

    let mut log = TermLog::default();
    let series = sum_series(
        policy,
        engine.caps.k_terms,
        skip,
        LeastTerm::Omit,
        "k",
        &mut log,
        |k| algebraic_term(a, w, k),
    )?;

    let mut ev = Evaluation::new(lead + series.sum, MethodChoice::Generic);
    ev.terms_used.insert("k", series.count);
    ev.err_estimate = series.first_omitted;
    ev.term_log = log;
    let distance = distance_to_odd(w);
    if skip.is_none() && distance < NEAR_ODD_WARN {
        ev.warnings.push(Warning::NearOdd { w, distance });
    }
    ev.ensure_finite()
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn check_grid(a_grid: &[f64]) -> Result<()> {
    if a_grid.len() < 4 {
        return Err(Error::domain("a_grid needs at least 4 points"));
    }
    if a_grid.iter().any(|&a| !(a > 0.0 && a <= 0.2)) {
        return Err(Error::domain("a_grid must lie in (0, 0.2]"));
    }
    let ratio = a_grid[1] / a_grid[0];
    let geometric = a_grid
        .windows(2)
        .all(|p| ((p[1] / p[0]) / ratio - 1.0).abs() < 1e-6);
    if !geometric || ratio == 1.0 {
        return Err(Error::domain("a_grid must be geometrically spaced"));
    }
    Ok(())
}

/// Least-squares slope of `log |R_N(a)|` against `log a`, where `R_N` is the
/// oracle value minus `J(a; w)` and the first `N` algebraic terms.
///
/// Fails with [`Error::Precision`] as soon as a remainder is within a
/// factor 100 of the oracle's own error budget.
pub fn remainder_slope(w: f64, n_terms: usize, a_grid: &[f64]) -> Result<f64> {
    if even_half(w).is_some() {
        return Err(Error::EvenExponent { w });
    }
    if !(n_terms as f64 > 0.5 * w + 0.5) {
        return Err(Error::domain(format!(
            "N > w/2 + 1/2 (got N = {n_terms}, w = {w})"
        )));
    }
    check_grid(a_grid)?;
    let engine = Engine::default();
    let mut xs = Vec::with_capacity(a_grid.len());
    let mut ys = Vec::with_capacity(a_grid.len());
    for &a in a_grid {
        let spec = SumSpec::real(a, w)?;
        let oracle = direct_sum(&spec, MIN_ORACLE_EPS)?;
        let partial = engine.eval_generic(&spec, TruncationPolicy::Fixed(n_terms))?;
        let remainder = (oracle.value - partial.value).norm();
        let floor = NOISE_MARGIN * oracle.error_bound();
        if !(remainder >= floor) {
            return Err(Error::Precision {
                a,
                remainder,
                floor,
            });
        }
        xs.push(a.ln());
        ys.push(remainder.ln());
    }
    Ok(least_squares_slope(&xs, &ys))
}
