use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `n` for which `B_{2n}` is tabulated.
pub const MAX_BERNOULLI_HALF_INDEX: u32 = 60;

/// Exact `B_0 ..= B_{2 * MAX}` from `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
fn exact_table() -> Vec<BigRational> {
    let top = 2 * MAX_BERNOULLI_HALF_INDEX as usize;
    let mut b: Vec<BigRational> = Vec::with_capacity(top + 1);
    b.push(BigRational::from_integer(BigInt::from(1)));
    for n in 1..=top {
        if n > 1 && n % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        // Row n+1 of Pascal's triangle, built incrementally.
        let mut binom = BigInt::from(1);
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += BigRational::from_integer(binom.clone()) * bk;
            }
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

fn table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        exact_table()
            .iter()
            .step_by(2)
            .map(|r| {
                r.to_f64()
                    .expect("Bernoulli numbers up to B_120 fit in f64")
            })
            .collect()
    })
}

/// The even-index Bernoulli number `B_{2n}` for `1 <= n <= 60`.
pub fn bernoulli_even(n: u32) -> Result<f64> {
    if !(1..=MAX_BERNOULLI_HALF_INDEX).contains(&n) {
        return Err(Error::Range {
            index: n,
            min: 1,
            max: MAX_BERNOULLI_HALF_INDEX,
        });
    }
    Ok(table()[n as usize])
}
