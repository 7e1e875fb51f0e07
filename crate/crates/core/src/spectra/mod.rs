//! Numerical Hermite roots and the semicircle law.
//!
//! The roots of `H_n` are the eigenvalues of the Jacobi matrix with zero
//! diagonal and off-diagonal `√1, ..., √(n-1)`.

pub mod tridiagonal;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::combinatorics::{catalan, pow2};

pub use tridiagonal::{symmetric_eigenvalues, tridiagonal_eigenvalues, tridiagonalize};

/// Roots below this magnitude are snapped to zero for odd `n`.
pub const ZERO_SNAP: f64 = 1e-13;

/// Sorted roots of `H_n` and their scaled versions `ξ / (2√n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub n: usize,
    pub roots: Vec<f64>,
    pub scaled: Vec<f64>,
}

impl RootSet {
    pub fn max_abs(&self) -> f64 {
        self.roots.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// `Σ ξ_j^k`.
    pub fn power_sum(&self, k: u32) -> f64 {
        self.roots.iter().map(|r| r.powi(k as i32)).sum()
    }
}

/// Upper bound `2√(n + 1/2)` on the magnitude of every root of `H_n`.
pub fn root_bound(n: usize) -> f64 {
    2.0 * (n as f64 + 0.5).sqrt()
}

pub fn hermite_roots(n: usize) -> Result<RootSet> {
    if n == 0 {
        return Err(Error::usage("H_0 has no roots"));
    }
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64).sqrt()).collect();
    let mut roots = tridiagonal_eigenvalues(&diag, &off)?;
    if n % 2 == 1 {
        let mid = n / 2;
        if roots[mid].abs() < ZERO_SNAP {
            roots[mid] = 0.0;
        }
    }
    let scale = 2.0 * (n as f64).sqrt();
    let scaled = roots.iter().map(|r| r / scale).collect();
    Ok(RootSet { n, roots, scaled })
}

/// `(1/n) Σ λ_j^k = M_n(k) / (2^k n^{k/2+1})`.
pub fn empirical_moment(rs: &RootSet, k: u32) -> f64 {
    rs.scaled.iter().map(|l| l.powi(k as i32)).sum::<f64>() / rs.n as f64
}

/// `∫ x^k ρ_sc(x) dx`: `C_{k/2} / 2^k` for even `k`, zero for odd `k`.
pub fn semicircle_moment(k: u32) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    BigRational::new(catalan(k as u64 / 2), pow2(k as u64))
}

/// The semicircle law `ρ_sc(x) = (2/π) √(1 - x²)` on `[-1, 1]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SemicircleRef;

impl SemicircleRef {
    pub fn density(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            0.0
        } else {
            2.0 / std::f64::consts::PI * (1.0 - x * x).sqrt()
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let x = x.clamp(-1.0, 1.0);
        0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / std::f64::consts::PI
    }

    /// Mass of each of `bins` equal-width bins over `[lo, hi]`.
    pub fn bin_masses(&self, lo: f64, hi: f64, bins: usize) -> Vec<f64> {
        let w = (hi - lo) / bins as f64;
        (0..bins)
            .map(|b| {
                let a = lo + w * b as f64;
                self.cdf(a + w) - self.cdf(a)
            })
            .collect()
    }

    pub fn moment(&self, k: u32) -> BigRational {
        semicircle_moment(k)
    }
}
