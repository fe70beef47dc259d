use std::f64::consts::PI;

use num_complex::Complex64;

use super::policy::{sum_series, LeastTerm};
use super::{Engine, Evaluation, MethodChoice, TermLog, TruncationPolicy, UpsilonUse};
use crate::compensated::ComplexSum;
use crate::error::{Error, Result};
use crate::problem::{SumSpec, INTEGER_TOL};
use crate::specfun::{factorial, zeta_real};

/// Auto mode stops once the bare dual factor drops below this fraction of
/// the running value.
const AUTO_N_REL_TOL: f64 = 1e-18;

/// How many dual terms `n` to include.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NTerms {
    /// `n = 1 ..= N` where `N` is the first index whose factor
    /// `|exp(-π² n² / a)| / n^(2m)` is below 1e-18 of the value so far.
    Auto,
    Fixed(usize),
}

/// A truncated `Υ_n(a; m) = sum_j c_j (-a / (π² n²))^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Upsilon {
    pub value: Complex64,
    /// Index of the last included term (`j0` under optimal truncation).
    pub j0: usize,
    /// Number of included terms, `j0 + 1`.
    pub terms: usize,
    pub first_omitted: f64,
    pub term_log: TermLog,
}

fn check_half_plane(a: Complex64) -> Result<()> {
    if a.re > 0.0 && a.re.is_finite() && a.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("Re(a) > 0 (got a = {a})")))
    }
}

pub(super) fn upsilon(
    engine: &Engine,
    a: Complex64,
    m: u32,
    n: usize,
    policy: TruncationPolicy,
) -> Result<Upsilon> {
    check_half_plane(a)?;
    if m == 0 || n == 0 {
        return Err(Error::domain("upsilon needs m >= 1 and n >= 1"));
    }
    let x = -a / (PI * PI * (n as f64) * (n as f64));
    let mf = m as f64;
    // Terms are generated by the ratio c_{j+1} / c_j = (m+j)(m+½+j)/(j+1),
    // which keeps them finite long after c_j itself would overflow.
    let mut current = Complex64::new(1.0, 0.0);
    let mut next_j = 0usize;
    let mut log = TermLog::default();
    let t = sum_series(
        policy,
        engine.caps.j_terms,
        None,
        LeastTerm::Include,
        "j",
        &mut log,
        |j| {
            while next_j < j {
                let jf = next_j as f64;
                current *= x * ((mf + jf) * (mf + 0.5 + jf) / (jf + 1.0));
                next_j += 1;
            }
            Ok(current)
        },
    )?;
    Ok(Upsilon {
        value: t.sum,
        j0: t.last_index.unwrap_or(0),
        terms: t.count,
        first_omitted: t.first_omitted,
        term_log: log,
    })
}

/// `Γ(½ - m)` by downward recurrence from `Γ(½) = sqrt(π)`.
fn gamma_half_minus(m: u32) -> f64 {
    (1..=m).fold(PI.sqrt(), |g, i| g / (0.5 - i as f64))
}

pub(super) fn eval_even(
    engine: &Engine,
    spec: &SumSpec,
    m: u32,
    policy: TruncationPolicy,
    n_max: NTerms,
) -> Result<Evaluation> {
    policy.validate()?;
    let w = spec.w();
    if m == 0 || (w - 2.0 * m as f64).abs() > INTEGER_TOL {
        return Err(Error::Mismatch { w, m });
    }
    if let NTerms::Fixed(0) = n_max {
        return Err(Error::domain("n_max >= 1"));
    }
    let a = spec.a();
    let mut log = TermLog::default();

    // Algebraic part: ½ Γ(½ - m) a^(m - ½) + sum_{k=0}^{m} (-1)^k ζ(2m - 2k) a^k / k!
    let mut total = ComplexSum::new();
    total += 0.5 * gamma_half_minus(m) * a.powu(m) / a.sqrt();
    for k in 0..=m {
        let parity = if k % 2 == 0 { 1.0 } else { -1.0 };
        let t = parity * zeta_real(2.0 * (m - k) as f64)? / factorial(k) * a.powu(k);
        log.push("k", k as usize, t.norm());
        total += t;
    }

    // Dual part: (-1)^m (a/π)^(2m - ½) sum_n Υ_n exp(-π² n² / a) / n^(2m)
    let scaled = a / PI;
    let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
    let prefactor = parity * scaled.powu(2 * m) / scaled.sqrt();
    let bare = |n: usize| {
        let nf = n as f64;
        (-PI * PI * nf * nf / a).exp() / nf.powi(2 * m as i32)
    };
    let n_limit = match n_max {
        NTerms::Auto => engine.caps.n_terms,
        NTerms::Fixed(n) => n.min(engine.caps.n_terms),
    };

    let mut upsilons = Vec::new();
    let mut j_total = 0;
    let mut err = 0.0;
    let mut n_used = 0;
    for n in 1..=n_limit {
        let factor = bare(n);
        let stop_after =
            matches!(n_max, NTerms::Auto) && factor.norm() < AUTO_N_REL_TOL * total.value().norm();
        let ups = upsilon(engine, a, m, n, policy)?;
        log.push("n", n, factor.norm());
        if factor != Complex64::new(0.0, 0.0) {
            total += prefactor * ups.value * factor;
        }
        if n == 1 {
            err += (prefactor * factor).norm() * ups.first_omitted;
        }
        j_total += ups.terms;
        upsilons.push(UpsilonUse {
            n,
            j0: ups.j0,
            terms: ups.terms,
        });
        n_used = n;
        log.extend(relabel(ups.term_log, n));
        if stop_after {
            break;
        }
    }
    err += (prefactor * bare(n_used + 1)).norm();

    let mut ev = Evaluation::new(total.value(), MethodChoice::EvenTransform);
    ev.terms_used.insert("k", m as usize + 1);
    ev.terms_used.insert("j", j_total);
    ev.terms_used.insert("n", n_used);
    ev.err_estimate = err;
    ev.term_log = log;
    ev.upsilon = upsilons;
    ev.ensure_finite()
}

const UPSILON_SERIES: [&str; 8] = [
    "upsilon[1]",
    "upsilon[2]",
    "upsilon[3]",
    "upsilon[4]",
    "upsilon[5]",
    "upsilon[6]",
    "upsilon[7]",
    "upsilon[8]",
];

/// Name the `j` series by its `n`; beyond `n = 8` the terms are far below
/// resolution and share one label.
fn upsilon_series_name(n: usize) -> &'static str {
    UPSILON_SERIES.get(n - 1).copied().unwrap_or("upsilon[>8]")
}

fn relabel(log: TermLog, n: usize) -> TermLog {
    let name = upsilon_series_name(n);
    let mut out = TermLog::default();
    if name == "upsilon[>8]" {
        // Indices restart per n, so only keep these in the aggregate count.
        return out;
    }
    for r in log.records() {
        out.push(name, r.index, r.magnitude);
    }
    out
}

/// Predicted least-term index of `Υ_n(a; m)`: `π² n² / |a| - (2m + ½)`.
/// A heuristic extrapolation; only the search in [`super::Engine::upsilon`]
/// is authoritative.
pub fn optimal_index_heuristic(a: f64, m: u32, n: usize) -> f64 {
    let nf = n as f64;
    PI * PI * nf * nf / a.abs() - (2.0 * m as f64 + 0.5)
}

/// The rule of thumb `j0 ≈ π² / a - 5/2`, stated for `m = 2`, `n = 1`.
pub fn optimal_index_m2(a: f64) -> f64 {
    PI * PI / a.abs() - 2.5
}
