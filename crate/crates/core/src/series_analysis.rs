//! Generating functions of the Hermite power sums.
//!
//! Everything here is exact. The conjugates `Ĥ_m` are even, so
//! `Ĥ_m(z/√n)` depends only on `t = z²/n`, which stays rational whenever
//! `z` is; no square roots are ever taken. Comparisons against
//! `c(z²) = (1 - √(1 - 4z²)) / (2z²)` are decided by squaring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::combinatorics::catalan;
use crate::exact::{ExactPolynomial, TruncatedSeries, Var};
use crate::hermite::{hermite_monic, HermitePair, HermiteSequence};

/// `c(z) = Σ C_k z^k` to order `order`.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::new(
        (0..=order as u64)
            .map(|k| BigRational::from_integer(catalan(k)))
            .collect(),
        order,
    )
}

/// `c(z) - z c(z)² - 1`, which vanishes coefficient-wise.
pub fn catalan_quadratic_residual(order: usize) -> TruncatedSeries {
    let c = catalan_series(order);
    let zc2 = c.mul(&c).expect("same order").mul_z();
    c.sub(&zc2)
        .and_then(|s| s.sub(&TruncatedSeries::one(order)))
        .expect("same order")
}

/// `n - z Ĥ_n'(z) / Ĥ_n(z)`: the generating function of `M_n(k)`.
pub fn moment_series(n: usize, order: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::usage("moment series needs n >= 1"));
    }
    let pair = hermite_monic(n);
    moment_series_from(&pair, order)
}

fn moment_series_from(pair: &HermitePair, order: usize) -> Result<TruncatedSeries> {
    let p = &pair.h_hat;
    let zp = p.derivative().shift_up(1);
    let ratio = TruncatedSeries::from_polynomial(&zp, order)
        .div(&TruncatedSeries::from_polynomial(p, order))?;
    TruncatedSeries::new(vec![BigRational::from_integer(pair.n.into())], order).sub(&ratio)
}

/// `n Ĥ_{n-1}(z) / Ĥ_n(z)`, the same series through the derivative recursion.
pub fn moment_series_ratio(n: usize, order: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::usage("moment series needs n >= 1"));
    }
    let pairs: Vec<HermitePair> = HermiteSequence::new().skip(n - 1).take(2).collect();
    let num = TruncatedSeries::from_polynomial(&pairs[0].h_hat, order)
        .scale(&BigRational::from_integer(n.into()));
    num.div(&TruncatedSeries::from_polynomial(&pairs[1].h_hat, order))
}

/// `-z c(z) / (1 - 4z)`, whose coefficients are the second coefficients `s_k`.
pub fn second_coeff_series(order: usize) -> TruncatedSeries {
    let num = catalan_series(order).mul_z().scale(&-BigRational::one());
    let den = TruncatedSeries::from_i64s(&[1, -4], order);
    num.div(&den).expect("1 - 4z is invertible")
}

/// Even part of a conjugate Hermite polynomial: `E(t)` with `Ĥ(x) = E(x²)`.
fn even_part(h_hat: &ExactPolynomial) -> ExactPolynomial {
    let coeffs = h_hat.coeffs().iter().step_by(2).cloned().collect();
    ExactPolynomial::new(coeffs, Var::T)
}

/// `numer(t) q^deg` for `t = p/q`, as an integer, plus `deg`.
fn homogeneous_eval(poly: &ExactPolynomial, p: &BigInt, q: &BigInt) -> (BigInt, usize) {
    let Some(deg) = poly.degree() else {
        return (BigInt::zero(), 0);
    };
    let mut q_pow = BigInt::one();
    let mut acc = poly.coeff(deg);
    for j in (0..deg).rev() {
        q_pow *= q;
        acc = acc * p + &poly.coeffs()[j] * &q_pow;
    }
    (acc, deg)
}

/// `f_n` as a ratio of even parts in `t = z²/n`:
/// `f_n(z) = E_{n-1}(t) / E_n(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenRatio {
    pub n: usize,
    pub numer: ExactPolynomial,
    pub denom: ExactPolynomial,
}

impl EvenRatio {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("f_n needs n >= 1"));
        }
        let pairs: Vec<HermitePair> = HermiteSequence::new().skip(n - 1).take(2).collect();
        Ok(Self::from_pairs(&pairs[0], &pairs[1]))
    }

    /// `prev` must be `H_{n-1}` and `cur` must be `H_n`.
    pub fn from_pairs(prev: &HermitePair, cur: &HermitePair) -> Self {
        debug_assert_eq!(prev.n + 1, cur.n);
        EvenRatio {
            n: cur.n,
            numer: even_part(&prev.h_hat),
            denom: even_part(&cur.h_hat),
        }
    }

    /// Exact value at `t`, failing if the denominator is not positive.
    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        if t.is_negative() {
            return Err(Error::Domain("t = z²/n must be nonnegative".into()));
        }
        let (p, q) = (t.numer(), t.denom());
        let (num, dn) = homogeneous_eval(&self.numer, p, q);
        let (den, dd) = homogeneous_eval(&self.denom, p, q);
        if !den.is_positive() {
            return Err(Error::Domain(format!(
                "Ĥ_{} is not positive at t = {t}",
                self.n
            )));
        }
        // numer / q^dn over denom / q^dd
        let num = if dd >= dn {
            num * q.pow((dd - dn) as u32)
        } else {
            num
        };
        let den = if dn > dd {
            den * q.pow((dn - dd) as u32)
        } else {
            den
        };
        Ok(BigRational::new(num, den))
    }
}

fn check_z(z: &BigRational) -> Result<()> {
    let third = BigRational::new(1.into(), 3.into());
    if z.is_negative() || *z > third {
        return Err(Error::Domain(format!("z = {z} is outside [0, 1/3]")));
    }
    Ok(())
}

fn t_of(n: usize, z: &BigRational) -> BigRational {
    z * z / BigRational::from_integer(n.into())
}

/// `f_n(z) = Ĥ_{n-1}(z/√n) / Ĥ_n(z/√n)`, exactly.
pub fn f_n_eval(n: usize, z: &BigRational) -> Result<BigRational> {
    check_z(z)?;
    EvenRatio::new(n)?.eval(&t_of(n, z))
}

/// `f_n(z) - ((n-1)/n) z² f_n(z) f_{n-1}(√((n-1)/n) z) - 1`.
///
/// The inner argument of `f_{n-1}` yields the same `t = z²/n` as the outer
/// one, so both ratios are evaluated at one rational point.
pub fn fixed_point_residual(n: usize, z: &BigRational) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::usage("fixed-point residual needs n >= 2"));
    }
    check_z(z)?;
    let pairs: Vec<HermitePair> = HermiteSequence::new().skip(n - 2).take(3).collect();
    let fn_ratio = EvenRatio::from_pairs(&pairs[1], &pairs[2]);
    let fprev_ratio = EvenRatio::from_pairs(&pairs[0], &pairs[1]);
    residual_at(&fn_ratio, &fprev_ratio, z)
}

fn residual_at(f: &EvenRatio, fprev: &EvenRatio, z: &BigRational) -> Result<BigRational> {
    let n = f.n;
    let t = t_of(n, z);
    let fv = f.eval(&t)?;
    let fp = fprev.eval(&t)?;
    let scale = BigRational::new((n - 1).into(), n.into()) * z * z;
    Ok(&fv - scale * &fv * fp - BigRational::one())
}

/// `f ≤ c(w)` for `w ≥ 0`, decided without square roots:
/// `1 - 2wf ≥ 0` and `(1 - 2wf)² ≥ 1 - 4w`.
pub fn below_catalan(f: &BigRational, w: &BigRational) -> bool {
    let two = BigRational::from_integer(2.into());
    let lhs = BigRational::one() - &two * w * f;
    if lhs.is_negative() {
        return false;
    }
    let four = BigRational::from_integer(4.into());
    &lhs * &lhs >= BigRational::one() - four * w
}

fn bound_holds(f: &BigRational, z: &BigRational) -> bool {
    let w = z * z;
    (f * &w) <= BigRational::one() && below_catalan(f, &w)
}

/// Both `f_n(z) ≤ 1/z²` and `f_n(z) ≤ c(z²)`.
pub fn bound_check(n: usize, z: &BigRational) -> Result<bool> {
    if z.is_zero() {
        return Err(Error::Domain("bound check needs z > 0".into()));
    }
    let f = f_n_eval(n, z)?;
    Ok(bound_holds(&f, z))
}

/// `c(w)` in floating point, for reporting only.
pub fn catalan_gf_f64(w: f64) -> f64 {
    if w == 0.0 {
        1.0
    } else {
        (1.0 - (1.0 - 4.0 * w).sqrt()) / (2.0 * w)
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// One evaluated grid point.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub n: usize,
    pub z: BigRational,
    pub f_n: BigRational,
    pub bound_ok: bool,
    /// `None` for `n = 1`, where the identity does not apply.
    pub residual_zero: Option<bool>,
}

/// Evaluates `f_n`, the bound and the fixed-point residual for every
/// `1 <= n <= n_max` and every `z` in `grid`.
///
/// Hermite polynomials are streamed once; the grid points of one `n` are
/// evaluated in parallel.
pub fn grid_sweep(n_max: usize, grid: &[BigRational]) -> Result<Vec<GridPoint>> {
    for z in grid {
        check_z(z)?;
        if z.is_zero() {
            return Err(Error::Domain("grid points must be positive".into()));
        }
    }
    let mut seq = HermiteSequence::new();
    let mut window: Vec<HermitePair> = vec![seq.next().expect("H_0")];
    let mut prev_ratio: Option<EvenRatio> = None;
    let mut out = Vec::with_capacity(n_max * grid.len());
    for n in 1..=n_max {
        let cur = seq.next().expect("infinite");
        let ratio = EvenRatio::from_pairs(window.last().expect("nonempty"), &cur);
        let points: Vec<GridPoint> = grid
            .par_iter()
            .map(|z| {
                let f_n = ratio.eval(&t_of(n, z))?;
                let residual_zero = match &prev_ratio {
                    Some(p) => Some(residual_at(&ratio, p, z)?.is_zero()),
                    None => None,
                };
                Ok(GridPoint {
                    n,
                    z: z.clone(),
                    bound_ok: bound_holds(&f_n, z),
                    f_n,
                    residual_zero,
                })
            })
            .collect::<Result<_>>()?;
        out.extend(points);
        window = vec![cur];
        prev_ratio = Some(ratio);
    }
    Ok(out)
}

/// The six-point grid `1/20, 1/10, 3/20, 1/5, 1/4, 1/3`.
pub fn default_grid() -> Vec<BigRational> {
    [(1, 20), (1, 10), (3, 20), (1, 5), (1, 4), (1, 3)]
        .iter()
        .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
        .collect()
}

/// `g` evenly spaced points `j/(3g)`, `j = 1..=g`, ending at `1/3`.
pub fn uniform_grid(g: usize) -> Vec<BigRational> {
    (1..=g)
        .map(|j| BigRational::new(BigInt::from(j), BigInt::from(3 * g)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::lattice::second_coeff_recursion;
    use crate::moments::power_sums_exact;

    #[test]
    fn catalan_coefficients() {
        assert_eq!(
            catalan_series(3),
            TruncatedSeries::from_i64s(&[1, 1, 2, 5], 3)
        );
        assert_eq!(catalan_series(0), TruncatedSeries::one(0));
        assert_eq!(*catalan_series(8).coeff(6), rat(132));
    }

    #[test]
    fn catalan_quadratic_identity() {
        for k in [0, 1, 5, 40] {
            assert_eq!(catalan_quadratic_residual(k), TruncatedSeries::zero(k));
        }
    }

    #[test]
    fn moment_series_examples() {
        assert_eq!(
            moment_series(2, 4).unwrap(),
            TruncatedSeries::from_i64s(&[2, 0, 2, 0, 2], 4)
        );
        let m4 = moment_series(4, 4).unwrap();
        assert_eq!(*m4.coeff(2), rat(12));
        assert_eq!(*m4.coeff(4), rat(60));
    }

    #[test]
    fn moment_series_matches_newton() {
        for n in 1..=30 {
            let series = moment_series(n, n).unwrap();
            let ratio_route = moment_series_ratio(n, n).unwrap();
            assert_eq!(series, ratio_route, "n={n}");
            let sums = power_sums_exact(n, n).unwrap();
            for (k, m) in sums.iter().enumerate() {
                assert_eq!(*series.coeff(k), BigRational::from_integer(m.clone()));
            }
        }
    }

    #[test]
    fn f_n_values() {
        assert_eq!(f_n_eval(1, &ratio(1, 3)).unwrap(), rat(1));
        assert_eq!(f_n_eval(1, &ratio(1, 7)).unwrap(), rat(1));
        assert_eq!(f_n_eval(2, &rat(0)).unwrap(), rat(1));
        assert_eq!(f_n_eval(2, &ratio(1, 3)).unwrap(), ratio(18, 17));
        assert!(matches!(f_n_eval(2, &ratio(1, 2)), Err(Error::Domain(_))));
        assert!(f_n_eval(0, &ratio(1, 4)).is_err());
    }

    #[test]
    fn f_n_is_scaled_moment_series() {
        // (1/n) M_n(z/√n) = Σ_k M_n(2k) t^k / n with t = z²/n, summed exactly
        // far enough that the tail is far below the check tolerance.
        let n = 6;
        let z = ratio(1, 4);
        let t = t_of(n, &z);
        let series = moment_series(n, 80).unwrap();
        let mut partial = BigRational::zero();
        let mut tp = BigRational::one();
        for k in 0..=40 {
            partial += series.coeff(2 * k) * &tp;
            tp *= &t;
        }
        partial /= BigRational::from_integer(n.into());
        let f = f_n_eval(n, &z).unwrap();
        let diff = to_f64(&(f - partial)).abs();
        assert!(diff < 1e-30, "diff={diff}");
    }

    #[test]
    fn residual_vanishes() {
        assert!(fixed_point_residual(2, &ratio(1, 4)).unwrap().is_zero());
        assert!(fixed_point_residual(10, &ratio(1, 3)).unwrap().is_zero());
        assert!(fixed_point_residual(2, &rat(0)).unwrap().is_zero());
        assert!(fixed_point_residual(1, &ratio(1, 4)).is_err());
    }

    #[test]
    fn bounds() {
        assert!(bound_check(1, &ratio(1, 3)).unwrap());
        assert!(bound_check(2, &ratio(1, 3)).unwrap());
        assert!(bound_check(100, &ratio(1, 3)).unwrap());
        // 18/17 vs c(1/9): (13/17)² = 169/289 ≥ 5/9
        assert!(below_catalan(&ratio(18, 17), &ratio(1, 9)));
        // c(1/9) ≈ 1.1459 so 1.15 must fail
        assert!(!below_catalan(&ratio(115, 100), &ratio(1, 9)));
        assert!(below_catalan(&ratio(114, 100), &ratio(1, 9)));
    }

    #[test]
    fn second_coefficient_generating_function() {
        let s = second_coeff_recursion(20);
        let series = second_coeff_series(20);
        assert_eq!(*series.coeff(0), rat(0));
        for (k, sk) in s.iter().enumerate().skip(1) {
            assert_eq!(
                *series.coeff(k),
                BigRational::from_integer(sk.clone()),
                "k={k}"
            );
        }
    }

    #[test]
    fn sweep_agrees_with_pointwise() {
        let grid = default_grid();
        let pts = grid_sweep(12, &grid).unwrap();
        assert_eq!(pts.len(), 12 * grid.len());
        for p in &pts {
            assert_eq!(p.f_n, f_n_eval(p.n, &p.z).unwrap());
            assert!(p.bound_ok);
            assert_eq!(p.residual_zero, (p.n > 1).then_some(true));
        }
    }

    #[test]
    fn convergence_trend() {
        let z = ratio(1, 4);
        let c = catalan_gf_f64(1.0 / 16.0);
        let gap = |n: usize| (to_f64(&f_n_eval(n, &z).unwrap()) - c).abs();
        for n in [8, 16, 32, 64] {
            assert!(gap(n) <= 2.0 * gap(n / 2), "n={n}");
        }
    }
}
