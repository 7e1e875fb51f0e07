use num_bigint::BigInt;
use semicircle_core::akl::{akl_a2l_closed, akl_poly, falling_factorial};
use semicircle_core::exact::{rat, ExactPolynomial, TruncatedSeries, Var};
use semicircle_core::hermite::{conjugate_recursion_check, hermite_monic};
use semicircle_core::lattice::{
    count_paths, enumerate_paths, reconstruct_a, second_coeff_recursion,
};
use semicircle_core::moments::{
    coefficient_targets, moment_determinant, moment_polynomial, power_sums_exact, MomentRoute,
};
use semicircle_core::Error;

fn px(c: &[i64]) -> ExactPolynomial {
    ExactPolynomial::from_i64s(c, Var::X)
}

fn pn(c: &[i64]) -> ExactPolynomial {
    ExactPolynomial::from_i64s(c, Var::N)
}

#[test]
fn polynomial_arithmetic_examples() {
    assert_eq!(&px(&[-1, 0, 1]) * &px(&[0, 1]), px(&[0, -1, 0, 1]));
    assert_eq!(px(&[3, 0, -6, 0, 1]).derivative(), px(&[0, -12, 0, 4]));
    assert_eq!(px(&[0, -1, 1]).eval(&rat(4)), rat(12));
    let err = px(&[1]).checked_add(&pn(&[1])).unwrap_err();
    assert!(matches!(err, Error::Usage(_)));
}

#[test]
fn conjugate_examples() {
    let z = |c: &[i64]| ExactPolynomial::from_i64s(c, Var::Z);
    assert_eq!(hermite_monic(2).h_hat, z(&[1, 0, -1]));
    assert_eq!(hermite_monic(3).h_hat, z(&[1, 0, -3]));
    assert_eq!(hermite_monic(1).h_hat, z(&[1]));
    assert!(px(&[0, 0, 1]).conjugate(1).is_err());
    for n in [1, 3, 10] {
        assert!(conjugate_recursion_check(n).unwrap());
    }
}

#[test]
fn series_division_examples() {
    let geo = TruncatedSeries::one(3)
        .div(&TruncatedSeries::from_i64s(&[1, -1], 3))
        .unwrap();
    assert_eq!(geo, TruncatedSeries::from_i64s(&[1, 1, 1, 1], 3));
    let q = TruncatedSeries::from_i64s(&[0, 0, 2], 4)
        .div(&TruncatedSeries::from_i64s(&[1, 0, -1], 4))
        .unwrap();
    assert_eq!(q, TruncatedSeries::from_i64s(&[0, 0, 2, 0, 2], 4));
    let zero_const = TruncatedSeries::from_i64s(&[0, 1], 4);
    assert!(matches!(
        TruncatedSeries::one(4).div(&zero_const),
        Err(Error::Division(_))
    ));
}

#[test]
fn power_sums_at_four() {
    let m = power_sums_exact(4, 4).unwrap();
    assert_eq!(m[2], BigInt::from(12));
    assert_eq!(m[3], BigInt::from(0));
    assert_eq!(m[4], BigInt::from(60));
    assert!(power_sums_exact(4, 5).is_err());
}

#[test]
fn golden_polynomials_by_every_route() {
    let golden = [
        pn(&[0, -1, 1]),
        pn(&[0, 3, -5, 2]),
        pn(&[0, -15, 32, -22, 5]),
    ];
    for (i, g) in golden.iter().enumerate() {
        let k = i + 1;
        for route in MomentRoute::ALL {
            assert_eq!(&route.compute(k).unwrap().poly, g, "k={k} route={route}");
        }
    }
    assert_eq!(
        moment_determinant(4).unwrap(),
        moment_polynomial(4).unwrap().poly
    );
}

#[test]
fn coefficient_targets_match_golden_values() {
    assert_eq!(coefficient_targets(1), (BigInt::from(1), BigInt::from(-1)));
    assert_eq!(coefficient_targets(2), (BigInt::from(2), BigInt::from(-5)));
    assert_eq!(coefficient_targets(3), (BigInt::from(5), BigInt::from(-22)));
    let s = second_coeff_recursion(3);
    assert_eq!(
        s[1..],
        [BigInt::from(-1), BigInt::from(-5), BigInt::from(-22)]
    );
}

#[test]
fn falling_factorials_and_akl() {
    assert_eq!(falling_factorial(0), px(&[1]));
    assert_eq!(falling_factorial(2), px(&[0, -1, 1]));
    assert_eq!(falling_factorial(3), px(&[0, 2, -3, 1]));
    assert_eq!(akl_poly(0, 1).unwrap(), px(&[0, 1]));
    assert_eq!(akl_poly(1, 1).unwrap(), px(&[0, -1, 1]));
    assert_eq!(akl_poly(2, 1).unwrap(), px(&[0, 3, -5, 2]));
    // 3x(x-1)(x-2)^2
    assert_eq!(akl_a2l_closed(2).unwrap(), px(&[0, -12, 24, -15, 3]));
    assert_eq!(akl_a2l_closed(3).unwrap(), akl_poly(2, 3).unwrap());
}

#[test]
fn lattice_paths_small_cases() {
    for (k, count) in [(1, 1), (2, 2), (3, 5)] {
        assert_eq!(enumerate_paths(k).unwrap().len(), count);
        assert_eq!(count_paths(k), BigInt::from(count));
    }
    let one = enumerate_paths(1).unwrap();
    assert_eq!(one[0].weight(), px(&[-1, 1]));
    let two = enumerate_paths(2).unwrap();
    let up = two.iter().find(|p| p.nodes()[1] == (1, 1)).unwrap();
    assert_eq!(up.weight(), px(&[2, -3, 1]));
    assert_eq!(reconstruct_a(3).unwrap(), px(&[0, -15, 32, -22, 5]));
}
