//! Binomial coefficients with the truncating convention: `C(n, k) = 0`
//! whenever `k < 0` or `k > n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(-1)^k` as a small integer.
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
