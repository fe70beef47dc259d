//! Evaluation of the Gaussian-smoothed Dirichlet series
//!
//! ```text
//! S(a; w) = sum_{n >= 1} exp(-a n^2) / n^w,     Re(a) > 0,
//! ```
//!
//! by direct summation and by small-`a` expansions that stay accurate
//! exactly where direct summation becomes slow.
//!
//! ```
//! use theta_sum::{eval_even, direct_sum, NTerms, SumSpec, TruncationPolicy};
//!
//! let spec = SumSpec::real(1.0, 4.0)?;
//! let fast = eval_even(&spec, 2, TruncationPolicy::OptimalFirstMin, NTerms::Auto)?;
//! let slow = direct_sum(&spec, 1e-16)?;
//! assert!((fast.value - slow.value).norm() < 1e-7);
//! # Ok::<(), theta_sum::Error>(())
//! ```
//!
//! The guide under `book/` walks through each route; its code listings are
//! compiled as doctests of this crate.

pub mod compensated;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod problem;
pub mod specfun;

pub use engine::{
    classical_pj_rhs, classical_pj_terms, eval, eval_even, eval_generic, j_term,
    optimal_index_heuristic, optimal_index_m2, remainder_slope, upsilon, Caps, Engine, Evaluation,
    MethodChoice, NTerms, TermLog, TruncationPolicy, Upsilon, Warning,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use oracle::{abs_error, direct_sum, OracleResult};
pub use problem::SumSpec;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/direct.md")]
    mod direct {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    mod special_functions {}
    #[doc = include_str!("../../../book/src/small-a.md")]
    mod small_a {}
    #[doc = include_str!("../../../book/src/even.md")]
    mod even {}
    #[doc = include_str!("../../../book/src/truncation.md")]
    mod truncation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
