//! Binomial coefficients with the zero convention for out-of-range arguments.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `binom(n, m)`, taken to be 0 when `n < m` or either argument is negative.
///
/// Uses the falling-factorial product over the smaller of `m` and `n - m`, so
/// huge `n` with small `m` (the campaign regime) stays cheap.
pub fn binomial(n: i64, m: i64) -> BigUint {
    if n < 0 || m < 0 || n < m {
        return BigUint::zero();
    }
    let m = m.min(n - m) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 1..=m {
        acc *= n - m + i;
        // exact: acc is now binom(n - m + i, i) * i
        acc /= i;
    }
    acc
}
