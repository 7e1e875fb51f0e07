use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring for [`Polynomial`].
///
/// Implemented for [`BigInt`] and [`BigRational`]; the in-place reference ops
/// let the generic arithmetic avoid cloning both operands on every product.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
{
    fn from_bigint(v: BigInt) -> Self;
    fn to_rational(&self) -> BigRational;
    fn is_negative_value(&self) -> bool;
}

impl Scalar for BigInt {
    fn from_bigint(v: BigInt) -> Self {
        v
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }
}

impl Scalar for BigRational {
    fn from_bigint(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }
}

/// Name of the indeterminate a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    N,
    Z,
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::X => "x",
            Var::N => "n",
            Var::Z => "z",
            Var::T => "t",
        };
        f.write_str(s)
    }
}

/// Dense univariate polynomial, lowest degree first.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all and [`Polynomial::degree`] returns `None` for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
    var: Var,
}

pub type ExactPolynomial = Polynomial<BigInt>;
pub type RationalPolynomial = Polynomial<BigRational>;

impl<R: Scalar> Polynomial<R> {
    pub fn new(mut coeffs: Vec<R>, var: Var) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            var,
        }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(R::one(), var)
    }

    pub fn constant(c: R, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    /// The polynomial `var` itself.
    pub fn identity(var: Var) -> Self {
        Self::monomial(R::one(), 1, var)
    }

    pub fn monomial(c: R, degree: usize, var: Var) -> Self {
        let mut coeffs = vec![R::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs, var)
    }

    /// `var - root`.
    pub fn linear_root(root: R, var: Var) -> Self {
        Self::new(vec![-root, R::one()], var)
    }

    pub fn from_i64s(coeffs: &[i64], var: Var) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| R::from_bigint(BigInt::from(c)))
                .collect(),
            var,
        )
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficients from the leading term down to the constant term.
    pub fn coeffs_high_to_low(&self) -> Vec<R> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Coefficient of `var^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    fn check_var(&self, other: &Self, op: &str) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "cannot {op} a polynomial in {} with one in {}",
                self.var, other.var
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other, "add")?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Ok(Self::new(coeffs, self.var))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other, "subtract")?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, R::zero());
        for (c, s) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= s;
        }
        Ok(Self::new(coeffs, self.var))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other, "multiply")?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let mut t = a.clone();
                t *= b;
                coeffs[i + j] += &t;
            }
        }
        Ok(Self::new(coeffs, self.var))
    }

    pub fn scale(&self, c: &R) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let mut t = a.clone();
                t *= c;
                t
            })
            .collect();
        Self::new(coeffs, self.var)
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial {
            coeffs,
            var: self.var,
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| {
                let mut t = c.clone();
                t *= &R::from_bigint(BigInt::from(j));
                t
            })
            .collect();
        Self::new(coeffs, self.var)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc *= at;
            acc += c.to_rational();
        }
        acc
    }

    /// Reversed polynomial `var^n p(1/var)`: coefficient `j` of the result is
    /// coefficient `n - j` of `self`.
    pub fn conjugate(&self, n: usize) -> Result<Self> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::usage(format!(
                    "conjugate: degree {d} exceeds requested length {n}"
                )));
            }
        }
        let coeffs = (0..=n).map(|j| self.coeff(n - j)).collect();
        Ok(Self::new(coeffs, self.var))
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(Scalar::to_rational).collect(),
            var: self.var,
        }
    }

    /// Pointwise sum of many polynomials in the same variable.
    pub fn sum<'a, I>(items: I, var: Var) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Self>,
        R: 'a,
    {
        items
            .into_iter()
            .try_fold(Self::zero(var), |acc, p| acc.checked_add(p))
    }
}

impl RationalPolynomial {
    /// Converts back to integer coefficients, or `None` if any coefficient is
    /// not an integer.
    pub fn to_integer(&self) -> Option<ExactPolynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::new(coeffs, self.var))
    }

    /// Lagrange interpolation through `(node, value)` pairs with distinct nodes.
    pub fn interpolate(points: &[(BigRational, BigRational)], var: Var) -> Result<Self> {
        let mut total = Self::zero(var);
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::one(var);
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                if xi == xj {
                    return Err(Error::usage("interpolation nodes must be distinct"));
                }
                basis = &basis * &Self::linear_root(xj.clone(), var);
                denom *= xi - xj;
            }
            total = &total + &basis.scale(&(yi / denom));
        }
        Ok(total)
    }
}

impl ExactPolynomial {
    /// Falling factorial `(v - shift)(v - shift - 1)...(v - shift - len + 1)`;
    /// the empty product is 1.
    pub fn shifted_falling_factorial(shift: i64, len: usize, var: Var) -> Self {
        (0..len).fold(Self::one(var), |acc, i| {
            &acc * &Self::linear_root(BigInt::from(shift + i as i64), var)
        })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: Scalar> $tr<&Polynomial<R>> for &Polynomial<R> {
            type Output = Polynomial<R>;
            /// Panics on a variable mismatch; use the `checked_*` form on
            /// untrusted input.
            fn $method(self, rhs: &Polynomial<R>) -> Polynomial<R> {
                self.$checked(rhs).expect("polynomial variable mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<R: Scalar> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        Polynomial {
            coeffs: self.coeffs.iter().cloned().map(Neg::neg).collect(),
            var: self.var,
        }
    }
}

impl<R: Scalar> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative_value();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "{}", self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn px(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_i64s(c, Var::X)
    }

    #[test]
    fn product_by_hand() {
        // (x^2 - 1) * x = x^3 - x
        assert_eq!(&px(&[-1, 0, 1]) * &px(&[0, 1]), px(&[0, -1, 0, 1]));
    }

    #[test]
    fn power_rule() {
        assert_eq!(px(&[3, 0, -6, 0, 1]).derivative(), px(&[0, -12, 0, 4]));
        assert!(px(&[7]).derivative().is_zero());
    }

    #[test]
    fn evaluates_at_rational() {
        let v = px(&[0, -1, 1]).eval(&BigRational::from_integer(4.into()));
        assert_eq!(v, BigRational::from_integer(12.into()));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            px(&[0, -1, 1]).eval(&half),
            BigRational::new((-1).into(), 4.into())
        );
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        let z = px(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.coeffs().len(), 0);
        assert_eq!((&px(&[1, 1]) - &px(&[1, 1])).degree(), None);
        assert!((&z * &px(&[1, 2, 3])).is_zero());
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let p = px(&[1, 1]);
        let q = ExactPolynomial::from_i64s(&[1, 1], Var::N);
        assert!(matches!(p.checked_add(&q), Err(Error::Usage(_))));
        assert!(matches!(p.checked_mul(&q), Err(Error::Usage(_))));
        assert!(matches!(p.checked_sub(&q), Err(Error::Usage(_))));
    }

    #[test]
    fn conjugate_reverses() {
        assert_eq!(px(&[-1, 0, 1]).conjugate(2).unwrap(), px(&[1, 0, -1]));
        assert_eq!(px(&[0, -3, 0, 1]).conjugate(3).unwrap(), px(&[1, 0, -3]));
        assert_eq!(px(&[0, 1]).conjugate(1).unwrap(), px(&[1]));
        assert!(matches!(px(&[0, 0, 1]).conjugate(1), Err(Error::Usage(_))));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(px(&[3, 0, -6, 0, 1]).to_string(), "x^4 - 6x^2 + 3");
        assert_eq!(px(&[0, -1]).to_string(), "-x");
        assert_eq!(px(&[]).to_string(), "0");
    }

    #[test]
    fn interpolation_recovers_quadratic() {
        let pts: Vec<_> = (2..5)
            .map(|n: i64| {
                (
                    BigRational::from_integer(n.into()),
                    BigRational::from_integer((n * n - n).into()),
                )
            })
            .collect();
        let p = RationalPolynomial::interpolate(&pts, Var::N).unwrap();
        assert_eq!(
            p.to_integer().unwrap(),
            ExactPolynomial::from_i64s(&[0, -1, 1], Var::N)
        );
    }

    #[test]
    fn falling_factorials() {
        let ff = |l| ExactPolynomial::shifted_falling_factorial(0, l, Var::X);
        assert_eq!(ff(0), px(&[1]));
        assert_eq!(ff(2), px(&[0, -1, 1]));
        assert_eq!(ff(3), px(&[0, 2, -3, 1]));
    }
}
