//! Directed lattice paths on the quarter plane.
//!
//! A step goes from `(i, j)` to `(i + 1, j - 1 + h)` for some `h >= 0`,
//! staying in `j >= 0`. Paths from the origin to `(k, 0)` are counted by the
//! Catalan numbers, and weighting every edge by a product of linear factors
//! rebuilds `A(k, 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::combinatorics::{binomial, catalan, pow2};
use crate::exact::{ExactPolynomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    nodes: Vec<(usize, usize)>,
}

impl LatticePath {
    /// Validates the node sequence against the edge rule.
    pub fn new(nodes: Vec<(usize, usize)>) -> Result<Self> {
        if nodes.first() != Some(&(0, 0)) {
            return Err(Error::usage("a lattice path starts at the origin"));
        }
        for w in nodes.windows(2) {
            let ((i0, j0), (i1, j1)) = (w[0], w[1]);
            if i1 != i0 + 1 || j1 + 1 < j0 {
                return Err(Error::usage(format!(
                    "({i0},{j0}) -> ({i1},{j1}) is not an edge"
                )));
            }
        }
        Ok(LatticePath { nodes })
    }

    pub fn nodes(&self) -> &[(usize, usize)] {
        &self.nodes
    }

    pub fn end(&self) -> (usize, usize) {
        *self.nodes.last().expect("paths are never empty")
    }

    pub fn steps(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Index of the first node after the origin that lies on the axis `j = 0`.
    pub fn first_axis_touch(&self) -> Option<usize> {
        self.nodes
            .iter()
            .skip(1)
            .position(|&(_, j)| j == 0)
            .map(|p| p + 1)
    }

    /// Product of the edge weights; the factor `x` of the origin is not included.
    pub fn weight(&self) -> ExactPolynomial {
        self.nodes
            .windows(2)
            .fold(ExactPolynomial::one(Var::X), |acc, w| {
                &acc * &edge_weight(w[0].1, w[1].1)
            })
    }
}

/// Weight of an edge between heights `from` and `to`: 1 for a down-step,
/// otherwise `Π_{m=from+1}^{to+1} (x - m)`.
fn edge_weight(from: usize, to: usize) -> ExactPolynomial {
    if to + 1 == from {
        ExactPolynomial::one(Var::X)
    } else {
        ExactPolynomial::shifted_falling_factorial(from as i64 + 1, to + 1 - from, Var::X)
    }
}

pub fn path_weight(path: &LatticePath) -> ExactPolynomial {
    path.weight()
}

fn dfs(
    k: usize,
    end: usize,
    node: (usize, usize),
    stack: &mut Vec<(usize, usize)>,
    out: &mut Vec<LatticePath>,
) {
    let (i, j) = node;
    if i == k {
        if j == end {
            out.push(LatticePath {
                nodes: stack.clone(),
            });
        }
        return;
    }
    // remaining steps must be able to bring the height down to `end`
    let max_next = end + (k - i - 1);
    for next in j.saturating_sub(1)..=max_next {
        stack.push((i + 1, next));
        dfs(k, end, (i + 1, next), stack, out);
        stack.pop();
    }
}

/// All paths from the origin to `(k, end)`, ordered by increasing step height.
pub fn enumerate_paths_to(k: usize, end: usize) -> Vec<LatticePath> {
    if k == 0 {
        return if end == 0 {
            vec![LatticePath {
                nodes: vec![(0, 0)],
            }]
        } else {
            Vec::new()
        };
    }
    let first_max = end + k - 1;
    (0..=first_max)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut stack = vec![(0, 0), (1, first)];
            dfs(k, end, (1, first), &mut stack, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Paths from the origin to `(k, 0)`.
pub fn enumerate_paths(k: usize) -> Result<Vec<LatticePath>> {
    if k == 0 {
        return Err(Error::usage("path enumeration needs k >= 1"));
    }
    Ok(enumerate_paths_to(k, 0))
}

/// Counts paths to `(k, 0)` by dynamic programming over heights, without
/// listing them.
pub fn count_paths(k: usize) -> BigInt {
    let mut ways = vec![BigInt::one()];
    for i in 0..k {
        let cap = k - i - 1;
        let mut next = vec![BigInt::zero(); cap + 1];
        for (j, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for slot in next.iter_mut().skip(j.saturating_sub(1)) {
                *slot += w;
            }
        }
        ways = next;
    }
    ways[0].clone()
}

/// `x · Σ_P weight(P)` over all paths to `(k, l - 1)`; equals `A(k, l)`.
pub fn reconstruct_akl(k: usize, l: usize) -> Result<ExactPolynomial> {
    if l == 0 {
        return Err(Error::usage("A(k, l) needs l >= 1"));
    }
    let weights: Vec<ExactPolynomial> = enumerate_paths_to(k, l - 1)
        .par_iter()
        .map(LatticePath::weight)
        .collect();
    Ok(ExactPolynomial::sum(&weights, Var::X)?.shift_up(1))
}

pub fn reconstruct_a(k: usize) -> Result<ExactPolynomial> {
    if k == 0 {
        return Err(Error::usage("reconstruction needs k >= 1"));
    }
    reconstruct_akl(k, 1)
}

/// `s_0 = 0`, `s_k = Σ_{j=1}^k (s_{k-j} C_{j-1} + C_{k-j} (s_{j-1} - j C_{j-1}))`.
///
/// Entry `k` of the result is `s_k` for `k = 0..=kmax`.
pub fn second_coeff_recursion(kmax: usize) -> Vec<BigInt> {
    let cat: Vec<BigInt> = (0..=kmax as u64).map(catalan).collect();
    let mut s = vec![BigInt::zero()];
    for k in 1..=kmax {
        let mut v = BigInt::zero();
        for j in 1..=k {
            v += &s[k - j] * &cat[j - 1];
            v += &cat[k - j] * (&s[j - 1] - BigInt::from(j) * &cat[j - 1]);
        }
        s.push(v);
    }
    s
}

/// Path counts `d_0..=d_kmax` by exhaustive enumeration satisfy
/// `d_{k+1} = Σ d_i d_{k-i}` and equal the Catalan numbers.
pub fn catalan_recursion_check(kmax: usize) -> Result<bool> {
    if kmax == 0 {
        return Err(Error::usage("catalan check needs kmax >= 1"));
    }
    let mut d: Vec<u64> = vec![1];
    for k in 1..=kmax {
        d.push(enumerate_paths(k)?.len() as u64);
    }
    let convolution = (0..kmax).all(|k| d[k + 1] == (0..=k).map(|i| d[i] * d[k - i]).sum::<u64>());
    let closed = d
        .iter()
        .enumerate()
        .all(|(k, &dk)| BigInt::from(dk) == catalan(k as u64));
    Ok(convolution && closed)
}

/// `|P_k(i)|` for `i = 0..k`: paths to `(k, 0)` whose first return to the
/// axis is at step `i + 1`.
pub fn first_return_counts(k: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0; k];
    for p in enumerate_paths(k)? {
        let t = p.first_axis_touch().expect("every path ends on the axis");
        counts[t - 1] += 1;
    }
    Ok(counts)
}

/// Largest `k` the brute-force walk classifier accepts (`2^{2k-1}` walks).
pub const MAX_WALK_K: usize = 13;

/// Checks `Σ_{j<k} C_j 4^{k-j-1} + C(2k-1, k) = 2^{2k-1}` by formula and by
/// classifying every ±1 walk of length `2k-1` by its first entry below zero.
pub fn walk_identity_check(k: usize) -> Result<bool> {
    if k == 0 || k > MAX_WALK_K {
        return Err(Error::usage(format!(
            "walk identity check needs 1 <= k <= {MAX_WALK_K}"
        )));
    }
    let ku = k as u64;
    let steps = 2 * k - 1;
    let first_entry: Vec<BigInt> = (0..ku)
        .map(|j| catalan(j) * pow2(2 * (ku - j - 1)))
        .collect();
    let never_negative = binomial(2 * ku - 1, ku);
    let total = pow2(2 * ku - 1);
    let formula = first_entry.iter().sum::<BigInt>() + &never_negative == total;

    let mut tally = vec![0u64; k];
    let mut nonneg = 0u64;
    for walk in 0u64..(1u64 << steps) {
        let mut height = 0i64;
        let mut entered = None;
        for s in 0..steps {
            height += if walk >> s & 1 == 1 { 1 } else { -1 };
            if height < 0 {
                entered = Some(s + 1);
                break;
            }
        }
        match entered {
            // a first entry below zero can only happen on an odd step
            Some(t) if t % 2 == 1 => tally[(t - 1) / 2] += 1,
            Some(_) => return Ok(false),
            None => nonneg += 1,
        }
    }
    let brute = tally
        .iter()
        .zip(&first_entry)
        .all(|(&c, e)| BigInt::from(c) == *e)
        && BigInt::from(nonneg) == never_negative;
    Ok(formula && brute)
}
