//! Expansion routes for `S(a; w)`.
//!
//! * [`classical_pj_rhs`]: the exact theta-function identity (`w = 0`).
//! * [`Engine::eval_generic`]: the algebraic small-`a` expansion for any
//!   `w > 0` that is not an even integer, including the odd-integer case
//!   where a double pole brings in `log a` and `ψ(m + 1)`.
//! * [`Engine::eval_even`]: the Poisson-Jacobi-type transformation for
//!   `w = 2m`, a finite algebraic part plus a rapidly convergent sum in
//!   `exp(-π² n² / a)` whose terms carry the asymptotic factors `Υ_n(a; m)`.
//!
//! All complex powers and logarithms use the principal branch; with
//! `Re(a) > 0` that is unambiguous.

mod classical;
mod even;
mod generic;
mod policy;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

pub use classical::{classical_pj_rhs, classical_pj_terms};
pub use even::{optimal_index_heuristic, optimal_index_m2, NTerms, Upsilon};
pub use generic::{j_term, remainder_slope, NEAR_ODD_WARN};
pub use policy::TruncationPolicy;

use crate::error::{Error, Result};
use crate::oracle::{direct_sum, MIN_ORACLE_EPS};
use crate::problem::{SumSpec, INTEGER_TOL};

/// Environment variable that replaces every engine cap with one value.
pub const MAX_TERMS_ENV: &str = "THETA_SUM_MAX_TERMS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodChoice {
    Direct,
    Generic,
    EvenTransform,
    ClassicalPJ,
}

impl MethodChoice {
    pub const ALL: [MethodChoice; 4] = [
        MethodChoice::Direct,
        MethodChoice::Generic,
        MethodChoice::EvenTransform,
        MethodChoice::ClassicalPJ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodChoice::Direct => "direct",
            MethodChoice::Generic => "generic",
            MethodChoice::EvenTransform => "even",
            MethodChoice::ClassicalPJ => "classical",
        }
    }

    /// `EvenTransform` when `w` is within 1e-9 of an even integer `2m`,
    /// `m >= 1`; `Generic` otherwise.
    pub fn auto(w: f64) -> MethodChoice {
        match crate::problem::even_half(w) {
            Some(m) if m >= 1 => MethodChoice::EvenTransform,
            _ => MethodChoice::Generic,
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MethodChoice::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain(format!("unknown method '{s}'")))
    }
}

/// One computed term of a named series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermRecord {
    pub series: &'static str,
    pub index: usize,
    pub magnitude: f64,
}

/// Ordered record of every term magnitude an evaluation computed,
/// including the look-ahead terms that decided where to truncate.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TermLog {
    records: Vec<TermRecord>,
}

impl TermLog {
    pub fn push(&mut self, series: &'static str, index: usize, magnitude: f64) {
        debug_assert!(
            self.series(series).last().is_none_or(|r| r.index < index),
            "indices must increase within series {series}"
        );
        self.records.push(TermRecord {
            series,
            index,
            magnitude,
        });
    }

    pub fn records(&self) -> &[TermRecord] {
        &self.records
    }

    pub fn series<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a TermRecord> + 'a {
        self.records.iter().filter(move |r| r.series == name)
    }

    /// Whether `index` is a local minimum of `name`'s magnitudes, judged
    /// from the log alone (non-strict on the right, strict on the left).
    pub fn is_local_min(&self, name: &str, index: usize) -> bool {
        let recs: Vec<_> = self.series(name).collect();
        let Some(p) = recs.iter().position(|r| r.index == index) else {
            return false;
        };
        let here = recs[p].magnitude;
        let right_ok = recs.get(p + 1).is_some_and(|r| here <= r.magnitude);
        let left_ok = p == 0 || here < recs[p - 1].magnitude;
        right_ok && left_ok
    }

    pub fn extend(&mut self, other: TermLog) {
        self.records.extend(other.records);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// `w` is within [`NEAR_ODD_WARN`] of an odd integer without being one;
    /// Γ/ζ pole cancellation makes the generic expansion ill-conditioned.
    NearOdd { w: f64, distance: f64 },
}

/// Truncation counts for one `Υ_n` series of the even transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpsilonUse {
    pub n: usize,
    /// Index of the last included term.
    pub j0: usize,
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub method: MethodChoice,
    /// Terms summed per series: `k` (algebraic), `j` (all `Υ_n` terms),
    /// `n` (dual exponentials or direct terms).
    pub terms_used: BTreeMap<&'static str, usize>,
    /// Magnitude of the first omitted term(s).
    pub err_estimate: f64,
    pub term_log: TermLog,
    /// Per-`n` truncation of the `Υ_n` series (even transform only).
    pub upsilon: Vec<UpsilonUse>,
    pub warnings: Vec<Warning>,
}

impl Evaluation {
    fn new(value: Complex64, method: MethodChoice) -> Self {
        Self {
            value,
            method,
            terms_used: BTreeMap::new(),
            err_estimate: 0.0,
            term_log: TermLog::default(),
            upsilon: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn ensure_finite(self) -> Result<Self> {
        let ok = self.value.re.is_finite() && self.value.im.is_finite();
        if ok && self.err_estimate.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(format!(
                "{} evaluation produced {} (err {})",
                self.method, self.value, self.err_estimate
            )))
        }
    }

    pub fn terms(&self, series: &str) -> Option<usize> {
        self.terms_used.get(series).copied()
    }
}

/// Upper bounds on the series lengths the engine will compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Algebraic `k` series.
    pub k_terms: usize,
    /// Each `Υ_n` series.
    pub j_terms: usize,
    /// Dual exponential sum over `n`.
    pub n_terms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            k_terms: 400,
            j_terms: 2000,
            n_terms: 50,
        }
    }
}

impl Caps {
    pub fn uniform(limit: usize) -> Self {
        Caps {
            k_terms: limit,
            j_terms: limit,
            n_terms: limit,
        }
    }

    /// Defaults, or [`Caps::uniform`] from `THETA_SUM_MAX_TERMS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_TERMS_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .map(Caps::uniform)
                .ok_or_else(|| {
                    Error::domain(format!(
                        "{MAX_TERMS_ENV} must be a positive integer (got '{raw}')"
                    ))
                }),
            Err(_) => Ok(Caps::default()),
        }
    }
}

/// The expansion routes bound to a set of caps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Engine {
    pub caps: Caps,
}

impl Engine {
    pub fn new(caps: Caps) -> Self {
        Engine { caps }
    }

    /// Dispatch on `method`. `Direct` runs the oracle at its finest
    /// tolerance; `ClassicalPJ` needs `w = 0`.
    pub fn eval(
        &self,
        spec: &SumSpec,
        method: MethodChoice,
        policy: TruncationPolicy,
    ) -> Result<Evaluation> {
        match method {
            MethodChoice::Direct => {
                let r = direct_sum(spec, MIN_ORACLE_EPS)?;
                let mut ev = Evaluation::new(r.value, MethodChoice::Direct);
                ev.terms_used.insert("n", r.n_terms);
                ev.err_estimate = r.error_bound();
                Ok(ev)
            }
            MethodChoice::Generic => self.eval_generic(spec, policy),
            MethodChoice::EvenTransform => {
                let m = spec
                    .even_half()
                    .filter(|&m| m >= 1)
                    .ok_or(Error::Mismatch {
                        w: spec.w(),
                        m: (spec.w() / 2.0).round() as u32,
                    })?;
                self.eval_even(spec, m, policy, NTerms::Auto)
            }
            MethodChoice::ClassicalPJ => {
                if spec.w().abs() > INTEGER_TOL {
                    return Err(Error::domain(format!(
                        "the classical identity needs w = 0 (got w = {})",
                        spec.w()
                    )));
                }
                let n_max = classical_pj_terms(spec.a())?;
                let value = classical_pj_rhs(spec.a(), n_max)?;
                let mut ev = Evaluation::new(value, MethodChoice::ClassicalPJ);
                ev.terms_used.insert("n", n_max);
                Evaluation::ensure_finite(ev)
            }
        }
    }

    pub fn eval_generic(&self, spec: &SumSpec, policy: TruncationPolicy) -> Result<Evaluation> {
        generic::eval_generic(self, spec, policy)
    }

    pub fn eval_even(
        &self,
        spec: &SumSpec,
        m: u32,
        policy: TruncationPolicy,
        n_max: NTerms,
    ) -> Result<Evaluation> {
        even::eval_even(self, spec, m, policy, n_max)
    }

    pub fn upsilon(
        &self,
        a: Complex64,
        m: u32,
        n: usize,
        policy: TruncationPolicy,
    ) -> Result<Upsilon> {
        even::upsilon(self, a, m, n, policy)
    }
}

/// [`Engine::eval`] with default caps.
pub fn eval(spec: &SumSpec, method: MethodChoice, policy: TruncationPolicy) -> Result<Evaluation> {
    Engine::default().eval(spec, method, policy)
}

/// [`Engine::eval_generic`] with default caps.
pub fn eval_generic(spec: &SumSpec, policy: TruncationPolicy) -> Result<Evaluation> {
    Engine::default().eval_generic(spec, policy)
}

/// [`Engine::eval_even`] with default caps.
pub fn eval_even(
    spec: &SumSpec,
    m: u32,
    policy: TruncationPolicy,
    n_max: NTerms,
) -> Result<Evaluation> {
    Engine::default().eval_even(spec, m, policy, n_max)
}

/// [`Engine::upsilon`] with default caps.
pub fn upsilon(a: Complex64, m: u32, n: usize, policy: TruncationPolicy) -> Result<Upsilon> {
    Engine::default().upsilon(a, m, n, policy)
}
