//! Short-vector enumeration (Fincke-Pohst) over a Gram matrix.
//!
//! The search tree is pruned with `f64` copies of the exact Cholesky data,
//! widened by a safety margin so pruning never discards a candidate; every
//! reported vector has its norm recomputed exactly in integers.

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::lattice::{cholesky, GramLattice};
use crate::algebra::{Int, Rat};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// All lattice vectors of one norm, as basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellVectors {
    pub norm: Rat,
    /// Sorted lexicographically; closed under negation.
    pub vectors: Vec<Vec<i64>>,
}

impl ShellVectors {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

const SLACK: f64 = 1e-7;

struct Search<'a> {
    n: usize,
    d: Vec<f64>,
    mu: Vec<Vec<f64>>,
    gram: &'a [Vec<i64>],
    bound: f64,
    exact_bound: i64,
}

impl Search<'_> {
    /// Exact `den * Q(x)`.
    fn scaled_norm(&self, x: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let row: i128 = (0..self.n).map(|j| self.gram[i][j] as i128 * x[j] as i128).sum();
            acc += x[i] as i128 * row;
        }
        acc as i64
    }

    /// Range of coordinate `level` given the coordinates above it.
    fn range(&self, level: usize, x: &[i64], budget: f64) -> (f64, i64, i64) {
        let center: f64 = -(level + 1..self.n).map(|j| self.mu[level][j] * x[j] as f64).sum::<f64>();
        let radius = (budget.max(0.0) / self.d[level]).sqrt() + SLACK;
        (center, (center - radius).ceil() as i64, (center + radius).floor() as i64)
    }

    fn descend(&self, level: usize, x: &mut [i64], budget: f64, out: &mut Vec<(Vec<i64>, i64)>) {
        let (center, lo, hi) = self.range(level, x, budget);
        for v in lo..=hi {
            x[level] = v;
            let delta = v as f64 - center;
            let rest = budget - self.d[level] * delta * delta;
            if rest < -SLACK * (1.0 + self.bound) {
                continue;
            }
            if level == 0 {
                let q = self.scaled_norm(x);
                if q <= self.exact_bound {
                    out.push((x.to_vec(), q));
                }
            } else {
                self.descend(level - 1, x, rest, out);
            }
        }
        x[level] = 0;
    }
}

/// Every lattice vector with norm at most `max_norm`, paired with its norm,
/// in lexicographic order of coordinates. Includes the zero vector.
pub fn enumerate_ball(lattice: &GramLattice, max_norm: &Rat) -> Result<Vec<(Vec<i64>, Rat)>> {
    let n = lattice.rank();
    let den = lattice.denominator();
    let exact_bound = (max_norm * Rat::from_integer(Int::from(den)))
        .floor()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Argument("norm bound out of range".into()))?;
    if exact_bound < 0 {
        return Ok(Vec::new());
    }
    let (d, mu) = cholesky(lattice.gram())
        .map_err(|_| Error::Lattice("Gram matrix is not positive definite".into()))?;
    let to_f = |q: &Rat| q.to_f64().unwrap_or(f64::NAN);
    let bound = max_norm.to_f64().unwrap_or(f64::NAN);
    let search = Search {
        n,
        d: d.iter().map(to_f).collect(),
        mu: mu.iter().map(|r| r.iter().map(to_f).collect()).collect(),
        gram: lattice.scaled_gram(),
        bound,
        exact_bound,
    };
    let top = n - 1;
    let (center, lo, hi) = search.range(top, &vec![0; n], bound);
    let mut found: Vec<(Vec<i64>, i64)> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut x = vec![0i64; n];
            x[top] = v;
            let delta = v as f64 - center;
            let rest = bound - search.d[top] * delta * delta;
            let mut out = Vec::new();
            if top == 0 {
                let q = search.scaled_norm(&x);
                if q <= exact_bound {
                    out.push((x, q));
                }
            } else if rest >= -SLACK * (1.0 + bound) {
                search.descend(top - 1, &mut x, rest, &mut out);
            }
            out
        })
        .collect();
    found.par_sort_unstable();
    let den = Int::from(den);
    Ok(found
        .into_iter()
        .map(|(x, q)| (x, Rat::new(Int::from(q), den.clone())))
        .collect())
}

/// All lattice vectors of exactly the given (positive) norm.
pub fn enumerate_shell(lattice: &GramLattice, norm: &Rat) -> Result<ShellVectors> {
    if norm <= &Rat::zero() {
        return Err(Error::Argument(format!("shell norm must be positive, got {norm}")));
    }
    let vectors = enumerate_ball(lattice, norm)?
        .into_iter()
        .filter(|(_, q)| q == norm)
        .map(|(x, _)| x)
        .collect();
    Ok(ShellVectors {
        norm: norm.clone(),
        vectors,
    })
}

/// Theta series by counting: coefficient of `q^k` is the number of vectors
/// of norm `2k`, for `2k <= max_norm`. Assumes an even lattice.
pub fn theta_by_enumeration(lattice: &GramLattice, max_norm: u32) -> Result<QSeries> {
    if max_norm < 2 {
        return Err(Error::Argument("max_norm must be at least 2".into()));
    }
    if !lattice.is_even() {
        return Err(Error::Lattice(format!("{} is not even", lattice.name())));
    }
    let terms = (max_norm / 2 + 1) as usize;
    let mut counts = vec![0u64; terms];
    for (_, q) in enumerate_ball(lattice, &Rat::from_integer(Int::from(max_norm)))? {
        let k = (q.to_integer() / Int::from(2)).to_usize().expect("norm in range");
        counts[k] += 1;
    }
    Ok(QSeries::new(
        counts.into_iter().map(|c| Rat::from_integer(Int::from(c))).collect(),
    ))
}
