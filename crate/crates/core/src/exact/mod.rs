//! Exact scalars, dense polynomials and truncated power series.

pub mod combinatorics;
pub mod poly;
pub mod series;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use poly::{ExactPolynomial, Polynomial, RationalPolynomial, Scalar, Var};
pub use series::TruncatedSeries;

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = ExactPolynomial> {
        prop::collection::vec(-20i64..20, 0..7).prop_map(|c| ExactPolynomial::from_i64s(&c, Var::X))
    }

    proptest! {
        #[test]
        fn distributive(p in poly(), q in poly(), r in poly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        }

        #[test]
        fn degree_of_product(p in poly(), q in poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let d = (&p * &q).degree().unwrap();
            prop_assert_eq!(d, p.degree().unwrap() + q.degree().unwrap());
        }

        #[test]
        fn conjugate_is_involution(mut c in prop::collection::vec(-20i64..20, 1..8), a in 1i64..9, b in 1i64..9) {
            c[0] = a;
            c.push(b);
            let p = ExactPolynomial::from_i64s(&c, Var::X);
            let n = p.degree().unwrap();
            prop_assert_eq!(p.conjugate(n).unwrap().conjugate(n).unwrap(), p);
        }

        #[test]
        fn division_undoes_multiplication(
            s in prop::collection::vec(-9i64..9, 6),
            mut b in prop::collection::vec(-9i64..9, 6),
            b0 in 1i64..5,
        ) {
            b[0] = b0;
            let s = TruncatedSeries::from_i64s(&s, 5);
            let b = TruncatedSeries::from_i64s(&b, 5);
            prop_assert_eq!(b.mul(&s).unwrap().div(&b).unwrap(), s);
        }
    }
}
