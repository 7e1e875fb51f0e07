//! The polynomial family `A(k, l)` with `M_n(2k) = A(k, 1)` at `x = n`.
//!
//! `A(0, 1) = x`, `A(0, l) = 0` for `l >= 2`, and for `k >= 1`
//! `A(k, l) = Σ_{i=1}^{l+1} A(k-1, i) (x-i)_{l-i+1}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{ExactPolynomial, Var};

/// `(x)_l = x (x-1) ... (x-l+1)`, `(x)_0 = 1`.
pub fn falling_factorial(l: usize) -> ExactPolynomial {
    ExactPolynomial::shifted_falling_factorial(0, l, Var::X)
}

/// `(x-shift)_len`.
fn shifted(shift: usize, len: usize) -> ExactPolynomial {
    ExactPolynomial::shifted_falling_factorial(shift as i64, len, Var::X)
}

/// Memo table for the recursion. Not shared between threads; build one per
/// worker if needed.
#[derive(Debug, Default)]
pub struct AklTable {
    memo: HashMap<(usize, usize), ExactPolynomial>,
}

impl AklTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, k: usize, l: usize) -> Result<ExactPolynomial> {
        if l == 0 {
            return Err(Error::usage("A(k, l) is defined for l >= 1"));
        }
        Ok(self.eval(k, l))
    }

    fn eval(&mut self, k: usize, l: usize) -> ExactPolynomial {
        if k == 0 {
            return if l == 1 {
                ExactPolynomial::identity(Var::X)
            } else {
                ExactPolynomial::zero(Var::X)
            };
        }
        if let Some(p) = self.memo.get(&(k, l)) {
            return p.clone();
        }
        let mut acc = ExactPolynomial::zero(Var::X);
        for i in 1..=l + 1 {
            let prev = self.eval(k - 1, i);
            if prev.is_zero() {
                continue;
            }
            acc = &acc + &(&prev * &shifted(i, l + 1 - i));
        }
        self.memo.insert((k, l), acc.clone());
        acc
    }
}

pub fn akl_poly(k: usize, l: usize) -> Result<ExactPolynomial> {
    AklTable::new().get(k, l)
}

/// `A(2, l) = (x)_{l+1} ((2l+2) x - (l+1)(l+2)) / 2`.
pub fn akl_a2l_closed(l: usize) -> Result<ExactPolynomial> {
    if l == 0 {
        return Err(Error::usage("A(2, l) closed form needs l >= 1"));
    }
    let l1 = BigInt::from(l + 1);
    let linear = ExactPolynomial::new(
        vec![-(&l1 * BigInt::from(l + 2)), BigInt::from(2) * &l1],
        Var::X,
    );
    let product = (&falling_factorial(l + 1) * &linear).to_rational();
    product
        .scale(&BigRational::new(1.into(), 2.into()))
        .to_integer()
        .ok_or_else(|| Error::consistency("A(2, l) closed form is not integral"))
}

/// `A(2, l) = Σ_{i=1}^{l+1} (x)_{i+1} (x-i)_{l-i+1}`.
pub fn akl_a2l_sum(l: usize) -> Result<ExactPolynomial> {
    if l == 0 {
        return Err(Error::usage("A(2, l) sum form needs l >= 1"));
    }
    let terms: Vec<ExactPolynomial> = (1..=l + 1)
        .map(|i| &falling_factorial(i + 1) * &shifted(i, l + 1 - i))
        .collect();
    ExactPolynomial::sum(&terms, Var::X)
}
