use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::ShellVectors;
use super::lattice::GramLattice;
use crate::algebra::{Int, Rat};
use crate::error::{Error, Result};
use crate::zonal::zonal_poly;

/// Inner-product counts of a shell against a fixed vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NProfile {
    pub x0: Vec<i64>,
    /// `counts[i]` = number of shell vectors `x` with `<x,x0> = i`.
    pub counts: Vec<u64>,
}

impl NProfile {
    /// `N_0 + 2 sum_{i>0} N_i`.
    pub fn total(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if i == 0 { c } else { 2 * c })
            .sum()
    }

    /// Counts padded with zeros to `N_0 .. N_bound`; `None` if some count
    /// beyond `bound` is nonzero.
    pub fn padded(&self, bound: usize) -> Option<Vec<u64>> {
        if self.counts.iter().skip(bound + 1).any(|&c| c != 0) {
            return None;
        }
        let mut out = self.counts.clone();
        out.resize(bound + 1, 0);
        Some(out)
    }
}

/// Counts `<x,x0>` over the shell, folded by sign. `x0` is a lattice vector
/// in basis coordinates and the lattice must be integral.
pub fn n_profile(shell: &ShellVectors, lattice: &GramLattice, x0: &[i64]) -> Result<NProfile> {
    if !lattice.is_integral() {
        return Err(Error::Lattice("inner products need an integral lattice".into()));
    }
    if x0.len() != lattice.rank() {
        return Err(Error::Argument(format!(
            "x0 has {} coordinates, lattice rank is {}",
            x0.len(),
            lattice.rank()
        )));
    }
    let w = gram_times(lattice, x0);
    let x0_norm = lattice.norm(x0).to_integer();
    let bound = shell.norm.to_integer() * &x0_norm;
    let mut hist: HashMap<i64, u64> = HashMap::new();
    for x in &shell.vectors {
        let u = dot(x, &w);
        // Cauchy-Schwarz: <x,x0>^2 <= <x,x> <x0,x0>
        if Int::from(u) * Int::from(u) > bound {
            return Err(Error::Lattice(format!("Cauchy-Schwarz violated at {x:?}")));
        }
        *hist.entry(u).or_default() += 1;
    }
    let top = hist.keys().map(|u| u.unsigned_abs()).max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; top + 1];
    for i in 0..=top as i64 {
        let pos = hist.get(&i).copied().unwrap_or(0);
        let neg = hist.get(&-i).copied().unwrap_or(0);
        if pos != neg {
            return Err(Error::Lattice(format!("N_{i} != N_-{i}: shell not negation closed")));
        }
        counts[i as usize] = pos;
    }
    Ok(NProfile {
        x0: x0.to_vec(),
        counts,
    })
}

fn gram_times(lattice: &GramLattice, y: &[i64]) -> Vec<i64> {
    lattice
        .scaled_gram()
        .iter()
        .map(|row| row.iter().zip(y).map(|(g, v)| g * v).sum())
        .collect()
}

fn dot(x: &[i64], w: &[i64]) -> i64 {
    x.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Probe directions for design checks: `count` seeded random vectors with
/// numerators in `[-97, 97]` over a shared denominator in `[1, 97]`, then the
/// all-ones vector and the given lattice vector.
pub fn probe_vectors(rank: usize, count: usize, seed: u64, lattice_vector: &[i64]) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<Rat>> = (0..count)
        .map(|_| {
            let den: i64 = rng.gen_range(1..=97);
            (0..rank)
                .map(|_| Rat::new(Int::from(rng.gen_range(-97i64..=97)), Int::from(den)))
                .collect()
        })
        .collect();
    out.push(vec![Rat::one(); rank]);
    out.push(lattice_vector.iter().map(|&v| Rat::from_integer(Int::from(v))).collect());
    out
}

/// One zonal shell sum `sum_{x in shell} P_{d,x0}(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignSum {
    pub degree: u32,
    pub probe: usize,
    pub value: Rat,
}

/// Zonal sums for every even degree `2 <= d <= max_degree` and every probe.
///
/// Power sums of `<x,x0>` are accumulated exactly from a histogram of the
/// integer numerators, then combined with the zonal coefficients evaluated at
/// `r = <x,x>` and `s = <x0,x0>`.
pub fn design_sums(
    shell: &ShellVectors,
    lattice: &GramLattice,
    max_degree: u32,
    probes: &[Vec<Rat>],
) -> Result<Vec<DesignSum>> {
    let n = lattice.rank() as u32;
    let degrees: Vec<u32> = (2..=max_degree).step_by(2).collect();
    let zonals = degrees
        .iter()
        .map(|&d| zonal_poly(n, d))
        .collect::<Result<Vec<_>>>()?;
    let r = shell.norm.clone();
    let mut out = Vec::new();
    for (pi, y) in probes.iter().enumerate() {
        if y.len() != lattice.rank() {
            return Err(Error::Argument("probe has wrong length".into()));
        }
        let den = y.iter().fold(Int::one(), |acc, q| acc.lcm(q.denom()));
        let nums: Vec<i64> = y
            .iter()
            .map(|q| (q * Rat::from_integer(den.clone())).to_integer().to_i64())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Argument("probe too large".into()))?;
        // <x, y> = (x . w) / scale
        let w = gram_times(lattice, &nums);
        let scale = Rat::from_integer(den * Int::from(lattice.denominator()));
        let mut hist: HashMap<i64, u64> = HashMap::new();
        for x in &shell.vectors {
            *hist.entry(dot(x, &w)).or_default() += 1;
        }
        let max_pow = (max_degree / 2) as usize;
        let mut power_sums = vec![Int::zero(); max_pow + 1];
        for (&v, &c) in &hist {
            let v2 = Int::from(v) * Int::from(v);
            let mut term = Int::from(c);
            for ps in power_sums.iter_mut() {
                *ps += &term;
                term *= &v2;
            }
        }
        let power_sums: Vec<Rat> = power_sums
            .into_iter()
            .enumerate()
            .map(|(j, p)| Rat::from_integer(p) / pow(&scale, 2 * j))
            .collect();
        let rs = &r * lattice_norm_rat(lattice, y);
        for (&d, z) in degrees.iter().zip(&zonals) {
            let half = (d / 2) as usize;
            let value: Rat = z
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, a)| a * pow(&rs, j) * &power_sums[half - j])
                .sum();
            out.push(DesignSum {
                degree: d,
                probe: pi,
                value,
            });
        }
    }
    Ok(out)
}

fn lattice_norm_rat(lattice: &GramLattice, y: &[Rat]) -> Rat {
    lattice
        .gram()
        .iter()
        .zip(y)
        .map(|(row, yi)| yi * row.iter().zip(y).map(|(g, yj)| g * yj).sum::<Rat>())
        .sum()
}

fn pow(x: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

/// Whether the shell is a spherical design of the given strength, judged by
/// exact zonal sums at `probes` seeded random directions plus two fixed
/// ones. A false positive needs every random probe to land on a proper
/// subvariety.
pub fn design_check(
    shell: &ShellVectors,
    lattice: &GramLattice,
    strength: u32,
    probes: usize,
    seed: u64,
) -> Result<bool> {
    if probes == 0 {
        return Err(Error::Argument("need at least one probe".into()));
    }
    let fixed = shell
        .vectors
        .first()
        .ok_or_else(|| Error::Argument("empty shell".into()))?;
    let dirs = probe_vectors(lattice.rank(), probes, seed, fixed);
    let sums = design_sums(shell, lattice, strength, &dirs)?;
    Ok(sums.iter().all(|d| d.value.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::oracle::{e8, enumerate_shell};

    #[test]
    fn e8_root_profile() {
        let l = e8();
        let shell = enumerate_shell(&l, &rat(2)).unwrap();
        let p = n_profile(&shell, &l, &shell.vectors[0]).unwrap();
        assert_eq!(p.counts, vec![126, 56, 1]);
        assert_eq!(p.total(), 240);
    }

    #[test]
    fn zero_vector_profile() {
        let l = e8();
        let shell = enumerate_shell(&l, &rat(2)).unwrap();
        let p = n_profile(&shell, &l, &[0; 8]).unwrap();
        assert_eq!(p.counts, vec![240]);
        assert_eq!(p.padded(2), Some(vec![240, 0, 0]));
    }

    #[test]
    fn e8_design_strength() {
        let l = e8();
        let shell = enumerate_shell(&l, &rat(2)).unwrap();
        assert!(design_check(&shell, &l, 7, 5, 1).unwrap());
        assert!(!design_check(&shell, &l, 8, 5, 1).unwrap());
    }

    #[test]
    fn probes_are_deterministic() {
        assert_eq!(probe_vectors(8, 3, 42, &[0; 8]), probe_vectors(8, 3, 42, &[0; 8]));
        assert_ne!(probe_vectors(8, 3, 42, &[0; 8]), probe_vectors(8, 3, 43, &[0; 8]));
    }
}
