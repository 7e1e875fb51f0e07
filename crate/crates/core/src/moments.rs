//! Power sums `M_n(k)` of the roots of `H_n`, exactly.
//!
//! Three routes to `M_n(2k)` as a polynomial in `n`:
//! interpolation of Newton-identity values, the unit-triangular determinant
//! with entries `a^{(n)}_{n-2j}` written as polynomials in `n`, and the
//! `A(k, 1)` recursion from [`crate::akl`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::akl;
use crate::error::{Error, Result};
use crate::exact::combinatorics::{binomial, catalan, factorial, pow2};
use crate::exact::{ExactPolynomial, RationalPolynomial, Var};
use crate::hermite::hermite_monic;
use crate::lattice;

/// `M_n(2k)` as an exact polynomial in `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentPolynomial {
    pub k: usize,
    pub poly: ExactPolynomial,
    /// Coefficient of `n^{k+1}`.
    pub leading: BigInt,
    /// Coefficient of `n^k`.
    pub second: BigInt,
}

impl MomentPolynomial {
    pub fn from_poly(k: usize, poly: ExactPolynomial) -> Result<Self> {
        if poly.degree() != Some(k + 1) {
            return Err(Error::consistency(format!(
                "M_n({}) should have degree {} in n, got {:?}",
                2 * k,
                k + 1,
                poly.degree()
            )));
        }
        Ok(MomentPolynomial {
            k,
            leading: poly.coeff(k + 1),
            second: poly.coeff(k),
            poly,
        })
    }

    pub fn eval(&self, n: u64) -> BigInt {
        self.poly
            .eval(&BigRational::from_integer(n.into()))
            .to_integer()
    }
}

/// Newton's identities `Σ_{j=0}^{k} m(k-j) b_{n-j} = (n-k) b_{n-k}` solved by
/// forward substitution. `top[j]` is `b_{n-j}`, with `top[0] = 1`.
fn newton_power_sums(n: usize, top: &[BigInt], kmax: usize) -> Vec<BigInt> {
    let b = |j: usize| top.get(j).cloned().unwrap_or_else(BigInt::zero);
    let mut m: Vec<BigInt> = Vec::with_capacity(kmax + 1);
    m.push(BigInt::from(n));
    for k in 1..=kmax {
        let mut v = -BigInt::from(k) * b(k);
        for j in 1..k {
            let bj = b(j);
            if !bj.is_zero() {
                v -= &m[k - j] * bj;
            }
        }
        m.push(v);
    }
    m
}

/// Exact power sums of the roots of `H_n`.
///
/// Entry `k` of the result is `M_n(k)` for `k = 0..=kmax`; entry 0 is `n`.
pub fn power_sums_exact(n: usize, kmax: usize) -> Result<Vec<BigInt>> {
    if kmax == 0 || kmax > n {
        return Err(Error::usage(format!(
            "power sums need 1 <= kmax <= n, got n={n} kmax={kmax}"
        )));
    }
    let pair = hermite_monic(n);
    Ok(newton_power_sums(n, pair.h_hat.coeffs(), kmax))
}

/// `M_n(2k)` interpolated through `n = 2k, ..., 3k+1`.
pub fn moment_polynomial(k: usize) -> Result<MomentPolynomial> {
    if k == 0 {
        return Err(Error::usage("moment polynomial needs k >= 1"));
    }
    let points: Vec<(BigRational, BigRational)> = (2 * k..=3 * k + 1)
        .map(|n| {
            let sums = power_sums_exact(n, 2 * k)?;
            Ok((
                BigRational::from_integer(n.into()),
                BigRational::from_integer(sums[2 * k].clone()),
            ))
        })
        .collect::<Result<_>>()?;
    let interp = RationalPolynomial::interpolate(&points, Var::N)?;
    let poly = interp.to_integer().ok_or_else(|| {
        Error::consistency(format!(
            "interpolated M_n({}) has non-integer coefficients",
            2 * k
        ))
    })?;
    MomentPolynomial::from_poly(k, poly)
}

/// `a^{(n)}_{n-2j} = (-1)^j (n)_{2j} / (2^j j!)` as a polynomial in `n`.
pub fn hermite_coeff_in_n(j: usize) -> RationalPolynomial {
    let ff = ExactPolynomial::shifted_falling_factorial(0, 2 * j, Var::N).to_rational();
    let denom = pow2(j as u64) * factorial(j as u64);
    let sign = if j.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    ff.scale(&BigRational::new(sign, denom))
}

/// Determinant of the `k x k` matrix obtained from the unit lower-triangular
/// Newton system by replacing its last column with the right-hand side.
pub fn moment_determinant(k: usize) -> Result<ExactPolynomial> {
    if k == 0 {
        return Err(Error::usage("moment determinant needs k >= 1"));
    }
    let a: Vec<RationalPolynomial> = (0..=k).map(hermite_coeff_in_n).collect();
    let one = RationalPolynomial::one(Var::N);
    let zero = RationalPolynomial::zero(Var::N);
    let matrix: Vec<Vec<RationalPolynomial>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if j == k - 1 {
                        let c = BigRational::from_integer(BigInt::from(-2 * (i as i64 + 1)));
                        a[i + 1].scale(&c)
                    } else if i == j {
                        one.clone()
                    } else if i > j {
                        a[i - j].clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    let det = laplace_determinant(&matrix);
    det.to_integer().ok_or_else(|| {
        Error::consistency(format!("determinant for M_n({}) is not integral", 2 * k))
    })
}

/// Cofactor expansion along rows, memoized on the set of columns still free.
fn laplace_determinant(m: &[Vec<RationalPolynomial>]) -> RationalPolynomial {
    let k = m.len();
    assert!(
        k <= 24,
        "cofactor expansion is only meant for small matrices"
    );
    let var = m[0][0].var();
    let mut memo: HashMap<u32, RationalPolynomial> = HashMap::new();

    fn go(
        m: &[Vec<RationalPolynomial>],
        free: u32,
        var: Var,
        memo: &mut HashMap<u32, RationalPolynomial>,
    ) -> RationalPolynomial {
        if free == 0 {
            return RationalPolynomial::one(var);
        }
        if let Some(v) = memo.get(&free) {
            return v.clone();
        }
        let row = m.len() - free.count_ones() as usize;
        let mut acc = RationalPolynomial::zero(var);
        let mut position = 0;
        for col in 0..m.len() {
            if free & (1 << col) == 0 {
                continue;
            }
            let entry = &m[row][col];
            if !entry.is_zero() {
                let minor = go(m, free & !(1 << col), var, memo);
                let term = entry * &minor;
                acc = if position % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            position += 1;
        }
        memo.insert(free, acc.clone());
        acc
    }

    go(m, (1u32 << k) - 1, var, &mut memo)
}

/// `(C_k, s_k)` with `s_k = -(2^{2k-1} - C(2k-1, k))`.
pub fn coefficient_targets(k: usize) -> (BigInt, BigInt) {
    let k = k as u64;
    let s = if k == 0 {
        BigInt::zero()
    } else {
        -(pow2(2 * k - 1) - binomial(2 * k - 1, k))
    };
    (catalan(k), s)
}

/// Which exact construction produces `M_n(2k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentRoute {
    Interpolation,
    Determinant,
    Akl,
    Paths,
}

impl MomentRoute {
    pub const ALL: [MomentRoute; 4] = [
        MomentRoute::Interpolation,
        MomentRoute::Determinant,
        MomentRoute::Akl,
        MomentRoute::Paths,
    ];

    pub fn compute(self, k: usize) -> Result<MomentPolynomial> {
        match self {
            MomentRoute::Interpolation => moment_polynomial(k),
            MomentRoute::Determinant => MomentPolynomial::from_poly(k, moment_determinant(k)?),
            MomentRoute::Akl => {
                if k == 0 {
                    return Err(Error::usage("A(k, 1) route needs k >= 1"));
                }
                MomentPolynomial::from_poly(k, akl::akl_poly(k, 1)?.with_var(Var::N))
            }
            MomentRoute::Paths => {
                MomentPolynomial::from_poly(k, lattice::reconstruct_a(k)?.with_var(Var::N))
            }
        }
    }
}

impl fmt::Display for MomentRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MomentRoute::Interpolation => "interp",
            MomentRoute::Determinant => "det",
            MomentRoute::Akl => "akl",
            MomentRoute::Paths => "paths",
        })
    }
}

impl FromStr for MomentRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interp" => Ok(MomentRoute::Interpolation),
            "det" => Ok(MomentRoute::Determinant),
            "akl" => Ok(MomentRoute::Akl),
            "paths" => Ok(MomentRoute::Paths),
            other => Err(Error::usage(format!("unknown moment route {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pn(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_i64s(c, Var::N)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn power_sums_of_h4() {
        let m = power_sums_exact(4, 4).unwrap();
        assert_eq!(m[0], big(4));
        assert_eq!(m[1], big(0));
        assert_eq!(m[2], big(12));
        assert_eq!(m[3], big(0));
        assert_eq!(m[4], big(60));
    }

    #[test]
    fn power_sums_reject_bad_ranges() {
        assert!(matches!(power_sums_exact(3, 4), Err(Error::Usage(_))));
        assert!(matches!(power_sums_exact(3, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn odd_power_sums_vanish() {
        for n in 1..=30 {
            let m = power_sums_exact(n, n).unwrap();
            for k in (1..=n).step_by(2) {
                assert!(m[k].is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn golden_moment_polynomials() {
        assert_eq!(moment_polynomial(1).unwrap().poly, pn(&[0, -1, 1]));
        assert_eq!(moment_polynomial(2).unwrap().poly, pn(&[0, 3, -5, 2]));
        assert_eq!(
            moment_polynomial(3).unwrap().poly,
            pn(&[0, -15, 32, -22, 5])
        );
        // sympy: interpolation of companion-matrix traces
        assert_eq!(
            moment_polynomial(4).unwrap().poly,
            pn(&[0, 105, -260, 234, -93, 14])
        );
    }

    #[test]
    fn determinant_route() {
        assert_eq!(moment_determinant(1).unwrap(), pn(&[0, -1, 1]));
        assert_eq!(moment_determinant(2).unwrap(), pn(&[0, 3, -5, 2]));
        assert_eq!(
            moment_determinant(4).unwrap(),
            moment_polynomial(4).unwrap().poly
        );
    }

    #[test]
    fn hermite_coefficients_in_n() {
        // a_{n-2} = -n(n-1)/2 evaluated at n = 4 is -6
        let v = hermite_coeff_in_n(1).eval(&BigRational::from_integer(4.into()));
        assert_eq!(v, BigRational::from_integer((-6).into()));
        let v = hermite_coeff_in_n(2).eval(&BigRational::from_integer(4.into()));
        assert_eq!(v, BigRational::from_integer(3.into()));
    }

    #[test]
    fn targets() {
        assert_eq!(coefficient_targets(1), (big(1), big(-1)));
        assert_eq!(coefficient_targets(2), (big(2), big(-5)));
        assert_eq!(coefficient_targets(3), (big(5), big(-22)));
    }

    #[test]
    fn polynomial_agrees_with_direct_power_sums() {
        let polys: Vec<_> = (1..=8).map(|k| moment_polynomial(k).unwrap()).collect();
        for n in 1..=40usize {
            let sums = power_sums_exact(n, n).unwrap();
            for mp in &polys {
                if 2 * mp.k <= n {
                    assert_eq!(mp.eval(n as u64), sums[2 * mp.k], "n={n} k={}", mp.k);
                }
            }
        }
    }

    #[test]
    fn no_constant_term() {
        for k in 1..=8 {
            assert!(moment_polynomial(k).unwrap().poly.coeff(0).is_zero());
        }
    }

    #[test]
    fn routes_parse() {
        for r in MomentRoute::ALL {
            assert_eq!(r.to_string().parse::<MomentRoute>().unwrap(), r);
        }
        assert!("qr".parse::<MomentRoute>().is_err());
    }
}
