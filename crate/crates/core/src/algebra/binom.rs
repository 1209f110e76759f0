use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Generalized binomial coefficient `top choose k` for any integer `top`.
pub fn binomial(top: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= top - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `binomial` for small signed tops; negative `k` gives zero.
pub fn binom(top: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if top >= 0 && k > top {
        return BigInt::zero();
    }
    // symmetric shortcut for non-negative tops
    let k = if top >= 0 && 2 * k > top { top - k } else { k };
    binomial(&BigInt::from(top), k as u64)
}
