use num_bigint::BigInt;
use num_traits::One;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    // each partial product is itself a binomial coefficient, so the division is exact
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(2k - 1)!!`, with the empty product for `k = 0`.
pub fn odd_double_factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

pub fn catalan(k: u64) -> BigInt {
    binomial(2 * k, k) / (k + 1)
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}
