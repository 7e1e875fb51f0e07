//! Monic (probabilists') Hermite polynomials.
//!
//! `H_0 = 1`, `H_1 = x`, `H_{n+1} = x H_n - n H_{n-1}`. The three-term
//! recursion is the only constructor; the closed-form coefficients and the
//! matching counts of the complete graph are kept as independent verifiers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::combinatorics::{binomial, factorial, odd_double_factorial, pow2};
use crate::exact::{ExactPolynomial, Var};

/// `H_n` in `x` together with its reversal `Ĥ_n(z) = z^n H_n(1/z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitePair {
    pub n: usize,
    pub h: ExactPolynomial,
    pub h_hat: ExactPolynomial,
}

impl HermitePair {
    fn from_h(n: usize, h: ExactPolynomial) -> Self {
        let h_hat = h.conjugate(n).expect("H_n has degree n").with_var(Var::Z);
        HermitePair { n, h, h_hat }
    }

    /// Coefficient `a_{n-k}` of `x^{n-k}` in `H_n`.
    pub fn coeff_from_top(&self, k: usize) -> BigInt {
        self.h_hat.coeff(k)
    }
}

/// Streams `H_0, H_1, H_2, ...` without recomputing the recursion.
#[derive(Debug, Clone)]
pub struct HermiteSequence {
    prev: Option<ExactPolynomial>,
    cur: Option<ExactPolynomial>,
    n: usize,
}

impl HermiteSequence {
    pub fn new() -> Self {
        HermiteSequence {
            prev: None,
            cur: None,
            n: 0,
        }
    }
}

impl Default for HermiteSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for HermiteSequence {
    type Item = HermitePair;

    fn next(&mut self) -> Option<HermitePair> {
        let next = match (&self.prev, &self.cur) {
            (_, None) => ExactPolynomial::one(Var::X),
            (None, Some(_)) => ExactPolynomial::identity(Var::X),
            (Some(prev), Some(cur)) => {
                // x H_m - m H_{m-1}, with m = n - 1
                let m = BigInt::from(self.n - 1);
                &cur.shift_up(1) - &prev.scale(&m)
            }
        };
        self.prev = self.cur.take();
        self.cur = Some(next.clone());
        let pair = HermitePair::from_h(self.n, next);
        self.n += 1;
        Some(pair)
    }
}

pub fn hermite_monic(n: usize) -> HermitePair {
    HermiteSequence::new().nth(n).expect("sequence is infinite")
}

/// Closed-form `a^{(n)}_{n-k}`: zero for odd `k`, otherwise
/// `(-1)^{k/2} C(n,k) k! / ((k/2)! 2^{k/2})`.
pub fn hermite_coeff_closed(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::usage(format!(
            "coefficient index k={k} exceeds n={n}"
        )));
    }
    if k % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let half = (k / 2) as u64;
    let mag = binomial(n as u64, k as u64) * factorial(k as u64) / (factorial(half) * pow2(half));
    Ok(if half.is_multiple_of(2) { mag } else { -mag })
}

/// Checks `Ĥ_{n+1} = Ĥ_n - n z^2 Ĥ_{n-1}` and `z Ĥ_n' = n (Ĥ_n - Ĥ_{n-1})` exactly.
pub fn conjugate_recursion_check(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::usage("conjugate recursion needs n >= 1"));
    }
    let pairs: Vec<HermitePair> = HermiteSequence::new().skip(n - 1).take(3).collect();
    let (prev, cur, next) = (&pairs[0].h_hat, &pairs[1].h_hat, &pairs[2].h_hat);
    let nn = BigInt::from(n);

    let z2_prev = prev.shift_up(2).scale(&nn);
    let three_term = *next == cur - &z2_prev;

    let lhs = cur.derivative().shift_up(1);
    let rhs = (cur - prev).scale(&nn);
    Ok(three_term && lhs == rhs)
}

/// Number of `k`-edge matchings of the complete graph `K_n`: `C(n,2k) (2k-1)!!`.
pub fn matching_count_complete(n: usize, k: usize) -> Result<BigInt> {
    if 2 * k > n {
        return Err(Error::usage(format!(
            "a {k}-edge matching needs 2k <= n, got n={n}"
        )));
    }
    Ok(binomial(n as u64, 2 * k as u64) * odd_double_factorial(k as u64))
}

/// Hermite coefficients `a_{n-k}` for `k = 0..=n`.
pub fn coefficient_table(n: usize) -> Vec<(usize, BigInt)> {
    let pair = hermite_monic(n);
    (0..=n).map(|k| (k, pair.coeff_from_top(k))).collect()
}

/// Whether `p` is monic.
pub fn is_monic(p: &ExactPolynomial) -> bool {
    p.leading().is_some_and(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn px(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_i64s(c, Var::X)
    }

    #[test]
    fn first_polynomials() {
        assert_eq!(hermite_monic(0).h, px(&[1]));
        assert_eq!(hermite_monic(1).h, px(&[0, 1]));
        assert_eq!(hermite_monic(3).h, px(&[0, -3, 0, 1]));
        assert_eq!(hermite_monic(4).h, px(&[3, 0, -6, 0, 1]));
    }

    #[test]
    fn conjugates() {
        let z = |c: &[i64]| ExactPolynomial::from_i64s(c, Var::Z);
        assert_eq!(hermite_monic(1).h_hat, z(&[1]));
        assert_eq!(hermite_monic(2).h_hat, z(&[1, 0, -1]));
        assert_eq!(hermite_monic(3).h_hat, z(&[1, 0, -3]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(hermite_coeff_closed(4, 2).unwrap(), BigInt::from(-6));
        assert_eq!(hermite_coeff_closed(5, 3).unwrap(), BigInt::zero());
        assert_eq!(hermite_coeff_closed(2, 2).unwrap(), BigInt::from(-1));
        assert!(matches!(hermite_coeff_closed(2, 3), Err(Error::Usage(_))));
    }

    #[test]
    fn closed_form_matches_recursion() {
        for pair in HermiteSequence::new().take(41) {
            assert!(is_monic(&pair.h));
            assert_eq!(pair.h.degree(), Some(pair.n));
            for k in 0..=pair.n {
                assert_eq!(
                    pair.h.coeff(pair.n - k),
                    hermite_coeff_closed(pair.n, k).unwrap(),
                    "n={} k={k}",
                    pair.n
                );
            }
        }
    }

    #[test]
    fn conjugate_is_even_with_unit_constant() {
        for pair in HermiteSequence::new().take(41) {
            assert!(pair.h_hat.coeff(0).is_one());
            for (j, c) in pair.h_hat.coeffs().iter().enumerate() {
                assert!(j % 2 == 0 || c.is_zero());
            }
            for j in 0..=pair.n {
                assert_eq!(pair.h_hat.coeff(j), pair.h.coeff(pair.n - j));
            }
        }
    }

    #[test]
    fn conjugate_recursions_hold() {
        for n in 1..=25 {
            assert!(conjugate_recursion_check(n).unwrap(), "n={n}");
        }
        assert!(conjugate_recursion_check(0).is_err());
    }

    fn brute_force_matchings(n: usize, k: usize) -> usize {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        fn go(edges: &[(usize, usize)], used: u32, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            let mut total = 0;
            for (i, &(a, b)) in edges.iter().enumerate() {
                if used & (1 << a) == 0 && used & (1 << b) == 0 {
                    total += go(&edges[i + 1..], used | (1 << a) | (1 << b), left - 1);
                }
            }
            total
        }
        go(&edges, 0, k)
    }

    #[test]
    fn matching_counts() {
        assert_eq!(matching_count_complete(4, 1).unwrap(), BigInt::from(6));
        assert_eq!(matching_count_complete(4, 2).unwrap(), BigInt::from(3));
        assert_eq!(matching_count_complete(6, 3).unwrap(), BigInt::from(15));
        assert_eq!(matching_count_complete(0, 0).unwrap(), BigInt::one());
        assert!(matching_count_complete(5, 3).is_err());
        for n in 0..=8 {
            for k in 0..=n / 2 {
                assert_eq!(
                    matching_count_complete(n, k).unwrap(),
                    BigInt::from(brute_force_matchings(n, k))
                );
            }
        }
    }

    #[test]
    fn matching_polynomial_is_hermite() {
        for pair in HermiteSequence::new().take(21) {
            for k in 0..=pair.n / 2 {
                let a = pair.coeff_from_top(2 * k);
                let signed = if k % 2 == 0 { a } else { -a };
                assert_eq!(signed, matching_count_complete(pair.n, k).unwrap());
            }
        }
    }
}
