use num_complex::Complex64;

use crate::compensated::ComplexSum;
use crate::error::{Error, Result};

use super::TermLog;

/// How many terms of an asymptotic series to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationPolicy {
    /// Keep indices `0..count`.
    Fixed(usize),
    /// Stop at the first local minimum of the term magnitudes.
    OptimalFirstMin,
    /// Keep terms while their magnitude is at least `eps`, at most `cap` of them.
    ErrorTarget { eps: f64, cap: usize },
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TruncationPolicy::Fixed(0) => {
                Err(Error::InvalidPolicy("fixed count must be >= 1".into()))
            }
            TruncationPolicy::ErrorTarget { eps, cap } if !(eps > 0.0) || cap == 0 => {
                Err(Error::InvalidPolicy(format!(
                    "error target needs eps > 0 and cap >= 1 (got {eps}, {cap})"
                )))
            }
            _ => Ok(()),
        }
    }
}

/// Whether the least term found by `OptimalFirstMin` is kept or is the
/// first omitted one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LeastTerm {
    Include,
    Omit,
}

#[derive(Debug, Clone)]
pub(crate) struct Truncated {
    pub sum: Complex64,
    /// Number of terms actually summed.
    pub count: usize,
    /// Index of the last summed term.
    pub last_index: Option<usize>,
    /// Magnitude of the first term past the truncation point.
    pub first_omitted: f64,
}

#[derive(Default)]
struct Collected {
    indices: Vec<usize>,
    values: Vec<Complex64>,
    mags: Vec<f64>,
}

/// First local minimum of a magnitude sequence: `t[p] <= t[p+1]` and
/// (`p == 0` or `t[p] < t[p-1]`). Ties resolve toward the smaller index.
pub(crate) fn is_first_min_at(mags: &[f64], p: usize) -> bool {
    p + 1 < mags.len() && mags[p] <= mags[p + 1] && (p == 0 || mags[p] < mags[p - 1])
}

/// Sum a series `term(k)` over `k = 0, 1, ...`, skipping `skip`, under a
/// truncation policy. `cap` bounds the index range. Every computed term,
/// including the look-ahead that decided the cut, goes into `log`.
pub(crate) fn sum_series<F>(
    policy: TruncationPolicy,
    cap: usize,
    skip: Option<usize>,
    least: LeastTerm,
    series: &'static str,
    log: &mut TermLog,
    mut term: F,
) -> Result<Truncated>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    policy.validate()?;
    let mut c = Collected::default();
    let mut push = |c: &mut Collected, k: usize| -> Result<()> {
        let t = term(k)?;
        log.push(series, k, t.norm());
        c.indices.push(k);
        c.mags.push(t.norm());
        c.values.push(t);
        Ok(())
    };
    let index_iter = (0..).filter(|k| Some(*k) != skip);

    // Number of leading positions (in the skip-filtered sequence) to keep.
    let keep = match policy {
        TruncationPolicy::Fixed(count) => {
            let bound = count.min(cap);
            for k in index_iter.take_while(|&k| k <= bound) {
                push(&mut c, k)?;
            }
            c.indices.iter().filter(|&&k| k < bound).count()
        }
        TruncationPolicy::ErrorTarget {
            eps,
            cap: target_cap,
        } => {
            let bound = target_cap.min(cap);
            let mut keep = None;
            for k in index_iter.take_while(|&k| k <= bound) {
                push(&mut c, k)?;
                let p = c.mags.len() - 1;
                if c.mags[p] < eps || k == bound {
                    keep = Some(p);
                    break;
                }
            }
            keep.unwrap_or(c.mags.len())
        }
        TruncationPolicy::OptimalFirstMin => {
            let mut keep = None;
            for k in index_iter.take_while(|&k| k <= cap) {
                push(&mut c, k)?;
                let len = c.mags.len();
                if len >= 2 && is_first_min_at(&c.mags, len - 2) {
                    let p = len - 2;
                    keep = Some(match least {
                        LeastTerm::Include => p + 1,
                        LeastTerm::Omit => p,
                    });
                    break;
                }
            }
            // No minimum below the cap: keep everything below it.
            keep.unwrap_or_else(|| c.indices.iter().filter(|&&k| k < cap).count())
        }
    };

    // Make sure the first omitted term has been computed.
    if keep >= c.values.len() {
        let next = c.indices.last().map_or(0, |&k| k + 1);
        let next = if Some(next) == skip { next + 1 } else { next };
        push(&mut c, next)?;
    }

    let mut acc = ComplexSum::new();
    for &t in &c.values[..keep] {
        acc += t;
    }
    Ok(Truncated {
        sum: acc.value(),
        count: keep,
        last_index: keep.checked_sub(1).map(|p| c.indices[p]),
        first_omitted: c.mags[keep],
    })
}
