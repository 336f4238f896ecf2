//! Truncated q-expansions of modular forms for SL2(Z).
//!
//! Everything is formal in `q`: a [`QSeries`] carries exact rational
//! coefficients for `q^0 .. q^{order-1}`. The extremal theta series of rank
//! `n` is found as the unique combination of the monomials `E4^a E6^b` of
//! weight `n/2` with constant term 1 and the next `m-1` coefficients zero.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, solve_overdetermined, Int, Rat, RatMatrix};
use crate::error::{Error, Result};

/// Formal power series in `q`, known to `order` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        QSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `1 + O(q^order)`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order];
        if order > 0 {
            coeffs[0] = Rat::one();
        }
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `q^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rat> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| &acc * self)
    }

    /// Index of the first nonzero coefficient within the known prefix.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<Int>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries::new((0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries::new((0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect())
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QSeries::new(out)
    }
}

/// `sigma_p(n)` for `n = 0..len`, with `sigma_p(0) = 0`.
fn divisor_power_sums(len: usize, p: u32) -> Vec<Int> {
    let mut out = vec![Int::zero(); len];
    for d in 1..len {
        let dp = Int::from(d).pow(p);
        for m in (d..len).step_by(d) {
            out[m] += &dp;
        }
    }
    out
}

/// Normalized Eisenstein series `E4 = 1 + 240 sum sigma_3(n) q^n` or
/// `E6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein(k: u32, order: usize) -> Result<QSeries> {
    let scale: i64 = match k {
        4 => 240,
        6 => -504,
        _ => return Err(Error::Argument(format!("Eisenstein weight {k} unsupported"))),
    };
    if order == 0 {
        return Err(Error::Argument("order must be at least 1".into()));
    }
    let sig = divisor_power_sums(order, k - 1);
    let mut coeffs: Vec<Rat> = sig
        .into_iter()
        .map(|s| Rat::from_integer(s * scale))
        .collect();
    coeffs[0] = Rat::one();
    Ok(QSeries::new(coeffs))
}

/// The discriminant form `(E4^3 - E6^2) / 1728`.
pub fn delta_form(order: usize) -> Result<QSeries> {
    let e4 = eisenstein(4, order)?;
    let e6 = eisenstein(6, order)?;
    let d = &e4.pow(3) - &e6.pow(2);
    Ok(d.scale(&Rat::new(Int::one(), Int::from(1728))))
}

/// Dimension of the space of weight-`k` modular forms for SL2(Z).
pub fn dim_m(k: i64) -> usize {
    if k < 0 || k % 2 != 0 {
        0
    } else if k % 12 == 2 {
        (k / 12) as usize
    } else {
        (k / 12) as usize + 1
    }
}

/// Weight-`k` forms spanned by `E4^a E6^b`, `4a + 6b = k`, in order of
/// descending `a`.
#[derive(Clone, Debug)]
pub struct FormSpace {
    pub weight: u32,
    pub exponents: Vec<(u32, u32)>,
    pub basis: Vec<QSeries>,
}

impl FormSpace {
    pub fn new(weight: u32, order: usize) -> Result<Self> {
        if weight % 2 != 0 {
            return Err(Error::Argument(format!("odd weight {weight}")));
        }
        let e4 = eisenstein(4, order)?;
        let e6 = eisenstein(6, order)?;
        let exponents: Vec<(u32, u32)> = (0..=weight / 4)
            .rev()
            .filter(|a| (weight - 4 * a) % 6 == 0)
            .map(|a| (a, (weight - 4 * a) / 6))
            .collect();
        let basis = exponents
            .iter()
            .map(|&(a, b)| &e4.pow(a) * &e6.pow(b))
            .collect();
        Ok(FormSpace {
            weight,
            exponents,
            basis,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Rank of the basis, from exact row reduction of its coefficients.
    pub fn independent_count(&self) -> usize {
        if self.basis.is_empty() {
            return 0;
        }
        let rows = self.basis.iter().map(|f| f.coeffs().to_vec()).collect();
        RatMatrix::from_rows(rows).map_or(0, |m| m.rank())
    }
}

/// Half the extremal minimal norm: `m = floor(n/24) + 1`.
pub fn extremal_half_min(n: u32) -> u32 {
    n / 24 + 1
}

/// Extremal minimal norm `2 floor(n/24) + 2`.
pub fn extremal_min_norm(n: u32) -> u32 {
    2 * extremal_half_min(n)
}

fn check_rank(n: u32) -> Result<()> {
    if n == 0 || n % 8 != 0 {
        return Err(Error::Argument(format!(
            "rank {n} is not a positive multiple of 8"
        )));
    }
    Ok(())
}

/// The extremal theta series of rank `n` to `order` terms.
pub fn extremal_theta(n: u32, order: usize) -> Result<QSeries> {
    check_rank(n)?;
    let m = extremal_half_min(n) as usize;
    if order <= m {
        return Err(Error::Argument(format!(
            "order {order} too small for rank {n}: need more than {m} terms"
        )));
    }
    let space = FormSpace::new(n / 2, order)?;
    if space.dimension() != m {
        return Err(Error::Argument(format!(
            "weight {} has dimension {} != {m}",
            n / 2,
            space.dimension()
        )));
    }
    // Row i: coefficient of q^i in each basis form, right-hand side [i == 0].
    let rows = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = space.basis.iter().map(|f| f.coeffs()[i].clone()).collect();
            row.push(if i == 0 { Rat::one() } else { Rat::zero() });
            row
        })
        .collect();
    let weights = solve_overdetermined(&RatMatrix::from_rows(rows)?)?
        .ok_or_else(|| Error::Argument("extremal conditions inconsistent".into()))?;
    let theta = space
        .basis
        .iter()
        .zip(&weights)
        .fold(QSeries::new(vec![Rat::zero(); order]), |acc, (f, w)| {
            &acc + &f.scale(w)
        });
    Ok(theta)
}

/// Number of minimal vectors of an extremal lattice of rank `n`.
pub fn kissing_number(n: u32) -> Result<Int> {
    let m = extremal_half_min(n) as usize;
    let theta = extremal_theta(n, m + 1)?;
    let c = &theta.coeffs()[m];
    if !c.is_integer() || c.is_negative() {
        return Err(Error::Argument(format!("non-integral kissing number {c}")));
    }
    Ok(c.to_integer())
}

/// Whether every weighted theta series `Theta_{L,P}` with `P` harmonic of
/// degree `d` vanishes identically for an extremal lattice of rank `n`.
///
/// Such a series is a cusp form of weight `n/2 + d` divisible by `q^m`,
/// hence by `Delta^m`; the quotient lives in weight `n/2 + d - 12m`.
pub fn cusp_vanishing_check(n: u32, d: u32) -> bool {
    let m = extremal_half_min(n) as i64;
    dim_m(n as i64 / 2 + d as i64 - 12 * m) == 0
}

/// Even degrees `d >= 2` passing [`cusp_vanishing_check`], ascending.
///
/// The set is finite: beyond weight 2 every space is nonzero.
pub fn vanishing_degrees(n: u32) -> Vec<u32> {
    let m = extremal_half_min(n) as i64;
    let top = 12 * m - n as i64 / 2 + 2;
    (2..=top.max(0) as u32)
        .step_by(2)
        .filter(|&d| cusp_vanishing_check(n, d))
        .collect()
}
