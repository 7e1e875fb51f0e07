use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Polynomial, Scalar};
use crate::error::{Error, Result};

/// Formal power series known exactly up to `z^order`.
///
/// Always holds `order + 1` coefficients. Binary operations require equal
/// orders and never extend them.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` terms.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    pub fn from_polynomial<R: Scalar>(p: &Polynomial<R>, order: usize) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .take(order + 1)
                .map(Scalar::to_rational)
                .collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let k = self.order();
        let coeffs = (0..=k)
            .map(|m| {
                (0..=m).fold(BigRational::zero(), |acc, i| {
                    acc + &self.coeffs[i] * &other.coeffs[m - i]
                })
            })
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `z`, dropping the term that falls past the order.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Long division by a series with invertible constant term.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_order(divisor)?;
        let b0 = &divisor.coeffs[0];
        if b0.is_zero() {
            return Err(Error::Division(
                "divisor series has zero constant term".into(),
            ));
        }
        let mut q: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        for m in 0..self.coeffs.len() {
            let mut r = self.coeffs[m].clone();
            for i in 1..=m {
                r -= &divisor.coeffs[i] * &q[m - i];
            }
            q.push(r / b0);
        }
        Ok(TruncatedSeries { coeffs: q })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{ExactPolynomial, Var};

    #[test]
    fn geometric_series() {
        let num = TruncatedSeries::one(3);
        let den = TruncatedSeries::from_i64s(&[1, -1], 3);
        assert_eq!(
            num.div(&den).unwrap(),
            TruncatedSeries::from_i64s(&[1, 1, 1, 1], 3)
        );
    }

    #[test]
    fn even_geometric_series() {
        let num = TruncatedSeries::from_i64s(&[0, 0, 2], 4);
        let den = TruncatedSeries::from_i64s(&[1, 0, -1], 4);
        assert_eq!(
            num.div(&den).unwrap(),
            TruncatedSeries::from_i64s(&[0, 0, 2, 0, 2], 4)
        );
        // (2 - 2z^2) / (1 - z^2) is the constant 2
        let num = TruncatedSeries::from_i64s(&[2, 0, -2], 4);
        assert_eq!(num.div(&den).unwrap(), TruncatedSeries::from_i64s(&[2], 4));
    }

    #[test]
    fn log_derivative_of_second_hermite_conjugate() {
        // n - z p'(z)/p(z) for p = 1 - z^2: the roots of x^2 - 1 are +-1.
        let p = ExactPolynomial::from_i64s(&[1, 0, -1], Var::Z);
        let zp = p.derivative().shift_up(1);
        let m = TruncatedSeries::from_i64s(&[2], 4)
            .sub(
                &TruncatedSeries::from_polynomial(&zp, 4)
                    .div(&TruncatedSeries::from_polynomial(&p, 4))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(m, TruncatedSeries::from_i64s(&[2, 0, 2, 0, 2], 4));
    }

    #[test]
    fn zero_constant_divisor_fails() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::from_i64s(&[0, 1], 2);
        assert!(matches!(a.div(&b), Err(Error::Division(_))));
    }

    #[test]
    fn orders_never_mix() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::one(3);
        assert!(matches!(a.mul(&b), Err(Error::Usage(_))));
        assert!(matches!(a.add(&b), Err(Error::Usage(_))));
        assert_eq!(a.mul_z().order(), 2);
    }

    #[test]
    fn from_polynomial_truncates() {
        let p = ExactPolynomial::from_i64s(&[1, 2, 3, 4], Var::Z);
        assert_eq!(
            TruncatedSeries::from_polynomial(&p, 1),
            TruncatedSeries::from_i64s(&[1, 2], 1)
        );
    }
}
