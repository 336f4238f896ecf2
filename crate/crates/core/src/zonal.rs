//! Zonal spherical harmonics in invariant form and their shell sums.
//!
//! A zonal polynomial of degree `d` in dimension `n` is written in the
//! invariants `u = <x,x0>`, `r = <x,x>`, `s = <x0,x0>` as
//!
//! ```text
//! P(u, r, s) = sum_j a_j * u^(d-2j) * (r s)^j,   a_0 = 1.
//! ```
//!
//! Harmonicity in `x` fixes the `a_j` by a two-term recurrence.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{rat, Int, Rat, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonalPoly {
    dim: u32,
    degree: u32,
    coeffs: Vec<Rat>,
}

impl ZonalPoly {
    /// Arbitrary polynomial of zonal shape; `coeffs[j]` multiplies
    /// `u^(d-2j) (rs)^j`. Not necessarily harmonic.
    pub fn from_coeffs(dim: u32, degree: u32, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != degree as usize / 2 + 1 {
            return Err(Error::Argument(format!(
                "degree {degree} needs {} coefficients, got {}",
                degree / 2 + 1,
                coeffs.len()
            )));
        }
        Ok(ZonalPoly {
            dim,
            degree,
            coeffs,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, u: &Rat, r: &Rat, s: &Rat) -> Rat {
        let rs = r * s;
        let d = self.degree as usize;
        let mut acc = Rat::zero();
        let mut rs_pow = Rat::one();
        for (j, a) in self.coeffs.iter().enumerate() {
            acc += a * pow_rat(u, d - 2 * j) * &rs_pow;
            rs_pow *= &rs;
        }
        acc
    }

    /// Applies the Laplacian in `x` on the monomials `s^c u^a r^b` and
    /// reports whether everything cancels. Uses
    /// `Δ(u^a r^b) = a(a-1) s u^(a-2) r^b + (2b(n+2b-2) + 4ab) u^a r^(b-1)`.
    pub fn laplacian_is_zero(&self) -> bool {
        let n = Int::from(self.dim);
        let d = self.degree as i64;
        // (u-exponent, r-exponent, s-exponent) -> coefficient
        let mut out: BTreeMap<(i64, i64, i64), Rat> = BTreeMap::new();
        for (j, coeff) in self.coeffs.iter().enumerate() {
            let j = j as i64;
            let (a, b, c) = (d - 2 * j, j, j);
            if a >= 2 {
                let f = Rat::from_integer(Int::from(a * (a - 1)));
                *out.entry((a - 2, b, c + 1)).or_insert_with(Rat::zero) += coeff * f;
            }
            if b >= 1 {
                let f = Int::from(2 * b) * (&n + 2 * b - 2) + Int::from(4 * a * b);
                *out.entry((a, b - 1, c)).or_insert_with(Rat::zero) += coeff * Rat::from_integer(f);
            }
        }
        out.values().all(Zero::is_zero)
    }
}

fn pow_rat(x: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

/// The harmonic zonal polynomial of even degree `d` in dimension `n`,
/// normalized to be monic in `u`.
pub fn zonal_poly(n: u32, d: u32) -> Result<ZonalPoly> {
    if n < 2 {
        return Err(Error::Argument(format!("dimension {n} < 2")));
    }
    if d < 2 || d % 2 != 0 {
        return Err(Error::Argument(format!(
            "zonal degree must be even and at least 2, got {d}"
        )));
    }
    let (n, d) = (n as i64, d as i64);
    let mut coeffs = vec![Rat::one()];
    for j in 0..d / 2 {
        let num = (d - 2 * j) * (d - 2 * j - 1);
        let den = 2 * (j + 1) * (n + 2 * d - 2 * j - 4);
        let next = -coeffs.last().unwrap() * Rat::new(Int::from(num), Int::from(den));
        coeffs.push(next);
    }
    ZonalPoly::from_coeffs(n as u32, d as u32, coeffs)
}

/// Mean of `<x,x0>^(2k)` over the unit sphere in dimension `n`, `|x0| = 1`:
/// `(2k-1)!! / (n (n+2) ... (n+2k-2))`.
pub fn sphere_moment(n: u32, k: u32) -> Rat {
    (0..k).fold(Rat::one(), |acc, i| {
        acc * Rat::new(Int::from(2 * i + 1), Int::from(n + 2 * i))
    })
}

/// How the unknown class norm `<x0,x0>` is parametrized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormVar {
    /// Variable `t` with `<x0,x0> = 2t`.
    HalfNorm,
    /// Variable `s = <x0,x0>`.
    Norm,
}

impl NormVar {
    pub fn label(self) -> char {
        match self {
            NormVar::HalfNorm => 't',
            NormVar::Norm => 's',
        }
    }

    /// Factor `c` with `<x0,x0> = c * var`.
    pub fn scale(self) -> Rat {
        match self {
            NormVar::HalfNorm => rat(2),
            NormVar::Norm => rat(1),
        }
    }

    /// `<x0,x0>` as a polynomial in the variable.
    pub fn norm_poly(self) -> UniPoly {
        UniPoly::monomial(self.label(), self.scale(), 1)
    }

    /// The norm corresponding to a value of the variable.
    pub fn norm_of(self, value: &Rat) -> Rat {
        self.scale() * value
    }
}

/// `sum_j c_j(var) * p_{2j}` with `p_{2j} = sum_{x in shell} <x,x0>^(2j)`.
///
/// Only even power sums occur; odd ones vanish on a negation-closed shell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumForm {
    var: char,
    terms: Vec<(usize, UniPoly)>,
}

impl PowerSumForm {
    pub fn var(&self) -> char {
        self.var
    }

    /// `(j, c_j)` pairs, ascending in `j`.
    pub fn terms(&self) -> &[(usize, UniPoly)] {
        &self.terms
    }

    pub fn coeff(&self, j: usize) -> UniPoly {
        self.terms
            .iter()
            .find(|(k, _)| *k == j)
            .map_or_else(|| UniPoly::zero(self.var), |(_, c)| c.clone())
    }

    /// Rewrites the form as a linear form in `N_0 .. N_bound`, assuming every
    /// `|<x,x0>|` on the shell is an integer at most `bound`:
    /// `p_0 = N_0 + 2 sum N_i` and `p_{2j} = 2 sum i^(2j) N_i` for `j >= 1`.
    pub fn n_coefficients(&self, bound: u32) -> Vec<UniPoly> {
        let mut out = vec![UniPoly::zero(self.var); bound as usize + 1];
        for (j, c) in &self.terms {
            for (i, slot) in out.iter_mut().enumerate() {
                let weight = match (i, j) {
                    (0, 0) => Int::one(),
                    (0, _) => continue,
                    (i, j) => Int::from(2) * Int::from(i).pow(2 * *j as u32),
                };
                *slot = &*slot + &c.scale(&Rat::from_integer(weight));
            }
        }
        out
    }

    /// Value of the form at a given variable value and power sums
    /// `power_sums[j] = p_{2j}`.
    pub fn eval(&self, var_value: &Rat, power_sums: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|(j, c)| c.eval(var_value) * &power_sums[*j])
            .sum()
    }
}

/// Substitutes `r = shell_norm` and `s = <x0,x0>` (in terms of `var`) into a
/// zonal polynomial summed over a shell.
pub fn shell_sum_form(p: &ZonalPoly, shell_norm: &Rat, var: NormVar) -> PowerSumForm {
    let d = p.degree() as usize;
    let label = var.label();
    let rs = var.norm_poly().scale(shell_norm);
    let mut terms: Vec<(usize, UniPoly)> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| (d / 2 - j, rs.pow(j as u32).scale(a)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    terms.sort_by_key(|(j, _)| *j);
    PowerSumForm { var: label, terms }
}
