//! Wigner ensembles: sampling, characteristic polynomials, and spectra.
//!
//! A Wigner matrix here is symmetric with independent zero-mean entries on
//! and above the diagonal; off-diagonal entries have variance `c²` and the
//! diagonal uses the same law. The expected characteristic polynomial is
//! `c^n H_n(x/c)`, checked exactly by enumeration for small Rademacher
//! matrices and statistically by Monte Carlo otherwise.
//!
//! Sample `i` always draws from ChaCha8 stream `i` of the configured seed,
//! so results do not depend on how work is split across threads.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermite::hermite_monic;
use crate::spectra::{symmetric_eigenvalues, SemicircleRef};

/// Seed used by the regression runs and as the CLI default.
pub const DEFAULT_SEED: u64 = 0x5EED_2014;

/// Samples handled sequentially by one rayon task.
const BATCH: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryLaw {
    /// `±c` with equal probability.
    Rademacher,
    /// `N(0, c²)`.
    Gaussian,
}

impl fmt::Display for EntryLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryLaw::Rademacher => "rademacher",
            EntryLaw::Gaussian => "gaussian",
        })
    }
}

impl FromStr for EntryLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rademacher" => Ok(EntryLaw::Rademacher),
            "gaussian" => Ok(EntryLaw::Gaussian),
            other => Err(Error::usage(format!("unknown entry law {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleConfig {
    pub n: usize,
    pub dist: EntryLaw,
    /// Standard deviation of the off-diagonal entries.
    pub c: f64,
    pub samples: usize,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn new(n: usize, dist: EntryLaw, c: f64, samples: usize, seed: u64) -> Result<Self> {
        let cfg = EnsembleConfig {
            n,
            dist,
            c,
            samples,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::usage("matrix size must be positive"));
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::usage(format!(
                "c must be positive and finite, got {}",
                self.c
            )));
        }
        if self.samples == 0 {
            return Err(Error::usage("need at least one sample"));
        }
        Ok(())
    }
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone> SquareMatrix<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::usage("matrix must be square"));
        }
        Ok(SquareMatrix {
            n,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn filled(n: usize, v: T) -> Self {
        SquareMatrix {
            n,
            data: vec![v; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + PartialEq> SquareMatrix<T> {
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws one symmetric matrix from stream `stream` of `cfg.seed`.
pub fn sample_matrix(cfg: &EnsembleConfig, stream: u64) -> SquareMatrix<f64> {
    let mut rng = stream_rng(cfg.seed, stream);
    let n = cfg.n;
    let mut m = SquareMatrix::filled(n, 0.0);
    let normal = Normal::new(0.0, cfg.c).expect("validated c");
    for i in 0..n {
        for j in i..n {
            let v = match cfg.dist {
                EntryLaw::Rademacher => {
                    if rng.random::<bool>() {
                        cfg.c
                    } else {
                        -cfg.c
                    }
                }
                EntryLaw::Gaussian => normal.sample(&mut rng),
            };
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

/// Scalars the Faddeev–LeVerrier recursion can run over. The division by `k`
/// is exact for integer matrices.
pub trait CharPolyScalar:
    Clone + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_usize(v: usize) -> Self;
    fn div_by(self, k: usize) -> Self;
}

impl CharPolyScalar for f64 {
    fn from_usize(v: usize) -> Self {
        v as f64
    }
    fn div_by(self, k: usize) -> Self {
        self / k as f64
    }
}

impl CharPolyScalar for BigInt {
    fn from_usize(v: usize) -> Self {
        BigInt::from(v)
    }
    fn div_by(self, k: usize) -> Self {
        debug_assert!((&self % BigInt::from(k)).is_zero(), "inexact division");
        self / BigInt::from(k)
    }
}

impl CharPolyScalar for BigRational {
    fn from_usize(v: usize) -> Self {
        BigRational::from_integer(v.into())
    }
    fn div_by(self, k: usize) -> Self {
        self / BigRational::from_integer(k.into())
    }
}

/// Coefficients of `det(xI - A)`, constant term first; the last entry is 1.
pub fn char_poly<T: CharPolyScalar>(a: &SquareMatrix<T>) -> Vec<T> {
    let n = a.n;
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::from_usize(1);
    // m holds M_k; M_0 = 0
    let mut m = SquareMatrix::filled(n, T::zero());
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = SquareMatrix::filled(n, T::zero());
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for l in 0..n {
                    acc = acc + a.get(i, l).clone() * m.get(l, j).clone();
                }
                if i == j {
                    acc = acc + coeffs[n - k + 1].clone();
                }
                next.set(i, j, acc);
            }
        }
        m = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = T::zero();
        for i in 0..n {
            for l in 0..n {
                tr = tr + a.get(i, l).clone() * m.get(l, i).clone();
            }
        }
        coeffs[n - k] = (-tr).div_by(k);
    }
    coeffs
}

/// Largest size accepted by [`exact_expected_charpoly`]: `2^15` sign patterns.
pub const MAX_EXACT_N: usize = 5;

/// Average of `det(xI - A)` over every `±c` sign pattern of the free entries,
/// lowest coefficient first.
pub fn exact_expected_charpoly_scaled(n: usize, c: i64) -> Result<Vec<BigRational>> {
    if n == 0 || n > MAX_EXACT_N {
        return Err(Error::usage(format!(
            "exact enumeration supports 1 <= n <= {MAX_EXACT_N}, got {n}"
        )));
    }
    if c <= 0 {
        return Err(Error::usage("scale c must be positive"));
    }
    let free: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let patterns = 1u64 << free.len();
    let total = (0..patterns)
        .into_par_iter()
        .map(|mask| {
            let mut m = SquareMatrix::filled(n, BigInt::zero());
            for (bit, &(i, j)) in free.iter().enumerate() {
                let v = BigInt::from(if mask >> bit & 1 == 1 { c } else { -c });
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
            char_poly(&m)
        })
        .reduce(
            || vec![BigInt::zero(); n + 1],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
        );
    let denom = BigInt::from(patterns);
    Ok(total
        .into_iter()
        .map(|s| BigRational::new(s, denom.clone()))
        .collect())
}

pub fn exact_expected_charpoly(n: usize) -> Result<Vec<BigRational>> {
    exact_expected_charpoly_scaled(n, 1)
}

/// Coefficients of `c^n H_n(x/c)`, lowest first.
pub fn scaled_hermite_target(n: usize, c: f64) -> Vec<f64> {
    let pair = hermite_monic(n);
    (0..=n)
        .map(|p| {
            let k = n - p;
            pair.h.coeff(p).to_f64().expect("finite coefficient") * c.powi(k as i32)
        })
        .collect()
}

/// Single-pass mean and variance; merging is associative up to rounding.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let (na, nb, n) = (self.count as f64, other.count as f64, count as f64);
        RunningStats {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero with fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientStat {
    /// Coefficient of `x^{n-k}`.
    pub k: usize,
    pub mean: f64,
    pub stderr: f64,
    pub target: f64,
}

impl CoefficientStat {
    /// `|mean - target| <= sigmas * stderr`; with zero spread the mean must
    /// hit the target exactly.
    pub fn within(&self, sigmas: f64) -> bool {
        let dev = (self.mean - self.target).abs();
        if self.stderr == 0.0 {
            dev == 0.0
        } else {
            dev <= sigmas * self.stderr
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharPolyStats {
    pub n: usize,
    pub samples: usize,
    pub coefficients: Vec<CoefficientStat>,
}

impl CharPolyStats {
    pub fn all_within(&self, sigmas: f64) -> bool {
        self.coefficients.iter().all(|c| c.within(sigmas))
    }
}

fn batches(samples: usize) -> Vec<std::ops::Range<usize>> {
    (0..samples)
        .step_by(BATCH)
        .map(|s| s..(s + BATCH).min(samples))
        .collect()
}

/// Monte Carlo mean and standard error of every characteristic-polynomial
/// coefficient, against the `c^n H_n(x/c)` targets.
pub fn mc_expected_charpoly(cfg: &EnsembleConfig) -> Result<CharPolyStats> {
    cfg.validate()?;
    let n = cfg.n;
    let per_batch: Vec<Vec<RunningStats>> = batches(cfg.samples)
        .into_par_iter()
        .map(|range| {
            let mut stats = vec![RunningStats::default(); n + 1];
            for s in range {
                let coeffs = char_poly(&sample_matrix(cfg, s as u64));
                for (st, v) in stats.iter_mut().zip(coeffs) {
                    st.push(v);
                }
            }
            stats
        })
        .collect();
    let merged = per_batch
        .iter()
        .fold(vec![RunningStats::default(); n + 1], |acc, b| {
            acc.iter().zip(b).map(|(x, y)| x.merge(y)).collect()
        });
    let target = scaled_hermite_target(n, cfg.c);
    let coefficients = (0..=n)
        .map(|k| {
            let p = n - k;
            CoefficientStat {
                k,
                mean: merged[p].mean(),
                stderr: merged[p].std_error(),
                target: target[p],
            }
        })
        .collect();
    Ok(CharPolyStats {
        n,
        samples: cfg.samples,
        coefficients,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumHistogram {
    pub lo: f64,
    pub hi: f64,
    /// Fraction of all eigenvalues in each bin.
    pub masses: Vec<f64>,
    /// Semicircle mass of each bin.
    pub semicircle: Vec<f64>,
    /// Fraction of eigenvalues outside `[lo, hi]`.
    pub overflow: f64,
    pub tv_distance: f64,
}

impl SpectrumHistogram {
    pub fn bin_edges(&self) -> Vec<(f64, f64)> {
        let w = (self.hi - self.lo) / self.masses.len() as f64;
        (0..self.masses.len())
            .map(|b| (self.lo + w * b as f64, self.lo + w * (b + 1) as f64))
            .collect()
    }

    /// Combined empirical mass of the bins lying inside `[a, b]`, plus the
    /// overflow when `b` reaches the upper end.
    pub fn mass_between(&self, a: f64, b: f64) -> f64 {
        self.bin_edges()
            .iter()
            .zip(&self.masses)
            .filter(|((lo, hi), _)| *lo >= a - 1e-12 && *hi <= b + 1e-12)
            .map(|(_, m)| m)
            .sum()
    }
}

pub const HISTOGRAM_RANGE: (f64, f64) = (-1.2, 1.2);

/// Histogram of `λ = eigenvalue / (2c√n)` pooled over all samples.
pub fn spectrum_histogram(cfg: &EnsembleConfig, bins: usize) -> Result<SpectrumHistogram> {
    cfg.validate()?;
    if bins == 0 {
        return Err(Error::usage("need at least one bin"));
    }
    let (lo, hi) = HISTOGRAM_RANGE;
    let width = (hi - lo) / bins as f64;
    let scale = 2.0 * cfg.c * (cfg.n as f64).sqrt();
    let counts: Vec<Vec<u64>> = batches(cfg.samples)
        .into_par_iter()
        .map(|range| -> Result<Vec<u64>> {
            // last slot counts eigenvalues outside the range
            let mut counts = vec![0u64; bins + 1];
            for s in range {
                let m = sample_matrix(cfg, s as u64);
                for ev in symmetric_eigenvalues(m.as_slice(), cfg.n)? {
                    let lam = ev / scale;
                    if lam < lo || lam > hi {
                        counts[bins] += 1;
                    } else {
                        let b = (((lam - lo) / width) as usize).min(bins - 1);
                        counts[b] += 1;
                    }
                }
            }
            Ok(counts)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![0u64; bins + 1];
    for c in &counts {
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    let all = (cfg.n * cfg.samples) as f64;
    let masses: Vec<f64> = total[..bins].iter().map(|&c| c as f64 / all).collect();
    let overflow = total[bins] as f64 / all;
    let semicircle = SemicircleRef.bin_masses(lo, hi, bins);
    let tv_distance = 0.5
        * (masses
            .iter()
            .zip(&semicircle)
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>()
            + overflow);
    Ok(SpectrumHistogram {
        lo,
        hi,
        masses,
        semicircle,
        overflow,
        tv_distance,
    })
}
