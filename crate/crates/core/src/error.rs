use thiserror::Error;

/// Everything that can go wrong while evaluating the sum or one of its
/// special-function ingredients.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The argument sits on (or within 1e-12 of) a pole.
    #[error("pole at x = {x}")]
    Pole { x: f64 },

    /// A precondition on the inputs failed; the message names it.
    #[error("precondition failed: {0}")]
    Domain(String),

    /// Index outside the tabulated range.
    #[error("index {index} outside supported range {min}..={max}")]
    Range { index: u32, min: u32, max: u32 },

    /// `w` is an even integer: the generic expansion does not apply.
    #[error("w = {w} is an even integer; use the even-exponent transform")]
    EvenExponent { w: f64 },

    /// `w` does not equal `2m` for the requested `m`.
    #[error("w = {w} does not match 2m with m = {m}")]
    Mismatch { w: f64, m: u32 },

    /// Direct summation would need more than the allowed number of terms.
    #[error("direct summation needs more than {limit} terms (Re(a) = {re_a:e})")]
    Convergence { limit: usize, re_a: f64 },

    /// A measured quantity fell into floating-point noise.
    #[error("remainder {remainder:.3e} at a = {a} is below the noise floor {floor:.3e}")]
    Precision { a: f64, remainder: f64, floor: f64 },

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),

    #[error("non-finite result: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
