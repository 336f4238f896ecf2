use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::golay::GolayCode;
use crate::algebra::{Int, Rat};
use crate::error::{Error, Result};

/// A lattice given by the Gram matrix of a basis.
#[derive(Clone, Debug)]
pub struct GramLattice {
    name: String,
    gram: Vec<Vec<Rat>>,
    /// `den * gram` as machine integers, `den` the lcm of entry denominators.
    scaled: Vec<Vec<i64>>,
    den: i64,
}

impl GramLattice {
    /// Validates symmetry and positive definiteness (every pivot of an exact
    /// LDL^T decomposition, i.e. every ratio of leading minors, is positive).
    pub fn new(name: impl Into<String>, gram: Vec<Vec<Rat>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Lattice("Gram matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Lattice(format!("Gram not symmetric at ({i},{j})")));
                }
            }
        }
        if ldl_pivots(&gram).iter().any(|d| !d.is_positive()) {
            return Err(Error::Lattice("Gram matrix is not positive definite".into()));
        }
        let den = gram
            .iter()
            .flatten()
            .fold(Int::one(), |acc, q| acc.lcm(q.denom()));
        let den_rat = Rat::from_integer(den.clone());
        let scaled = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        i64::try_from((q * &den_rat).to_integer())
                            .map_err(|_| Error::Lattice("Gram entry too large".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let den = i64::try_from(den).map_err(|_| Error::Lattice("Gram denominator too large".into()))?;
        Ok(GramLattice {
            name: name.into(),
            gram,
            scaled,
            den,
        })
    }

    pub fn from_integer_gram(name: impl Into<String>, gram: &[Vec<i64>]) -> Result<Self> {
        let rows = gram
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
            .collect();
        Self::new(name, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// Common denominator of the Gram entries.
    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// `denominator() * gram` as integers.
    pub fn scaled_gram(&self) -> &[Vec<i64>] {
        &self.scaled
    }

    pub fn determinant(&self) -> Rat {
        ldl_pivots(&self.gram).into_iter().product()
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Integral with even diagonal: every vector then has even norm.
    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| self.scaled[i][i] % 2 == 0)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.determinant().is_one()
    }

    /// `x^T G y` for integer coordinate vectors.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Rat {
        let raw: i128 = self
            .scaled
            .iter()
            .zip(x)
            .map(|(row, &xi)| {
                xi as i128 * row.iter().zip(y).map(|(&g, &yj)| g as i128 * yj as i128).sum::<i128>()
            })
            .sum();
        Rat::new(Int::from(raw), Int::from(self.den))
    }

    pub fn norm(&self, x: &[i64]) -> Rat {
        self.inner(x, x)
    }

    /// `x^T G y` for a rational `y`.
    pub fn inner_rat(&self, x: &[i64], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row: Rat = self.gram[i].iter().zip(y).map(|(g, yj)| g * yj).sum();
            acc += row * Rat::from_integer(Int::from(xi));
        }
        acc
    }
}

/// Diagonal of the exact LDL^T factorization; stops at the first
/// non-positive pivot.
pub(crate) fn ldl_pivots(gram: &[Vec<Rat>]) -> Vec<Rat> {
    cholesky(gram).map_or_else(|bad| bad, |(d, _)| d)
}

/// `Q(x) = sum_i d_i (x_i + sum_{j>i} mu[i][j] x_j)^2`.
///
/// `Err` carries the pivots computed up to and including the first
/// non-positive one.
pub(crate) fn cholesky(gram: &[Vec<Rat>]) -> std::result::Result<(Vec<Rat>, Vec<Vec<Rat>>), Vec<Rat>> {
    let n = gram.len();
    let mut a: Vec<Vec<Rat>> = gram.to_vec();
    let mut d = Vec::with_capacity(n);
    let mut mu = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let piv = a[i][i].clone();
        d.push(piv.clone());
        if !piv.is_positive() {
            return Err(d);
        }
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &piv;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let delta = &mu[i][j] * &a[i][k];
                a[j][k] -= delta;
            }
        }
    }
    Ok((d, mu))
}

/// The E8 root lattice, Gram = Cartan matrix.
pub fn e8() -> GramLattice {
    // Bourbaki labelling: chain 1-3-4-5-6-7-8 with 2 attached to 4.
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        g[i][j] = -1;
        g[j][i] = -1;
    }
    GramLattice::from_integer_gram("e8", &g).expect("E8 Cartan matrix is positive definite")
}

/// Rows of the Hermite normal form of the integer row span of `gens`
/// (upper triangular, positive pivots, reduced above each pivot).
fn hermite_rows(mut gens: Vec<Vec<i128>>, width: usize) -> Vec<Vec<i128>> {
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for col in 0..width {
        let mut rows: Vec<Vec<i128>> = gens.drain(..).filter(|r| r.iter().any(|&x| x != 0)).collect();
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let p = rows[piv][col];
            for &i in &nonzero {
                if i == piv {
                    continue;
                }
                let q = rows[i][col].div_euclid(p);
                let pr = rows[piv].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
            }
        }
        if let Some(pos) = rows.iter().position(|r| r[col] != 0) {
            let mut r = rows.swap_remove(pos);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            for b in basis.iter_mut() {
                let q = b[col].div_euclid(r[col]);
                for (x, y) in b.iter_mut().zip(&r) {
                    *x -= q * y;
                }
            }
            basis.push(r);
        }
        gens = rows;
    }
    basis
}

/// Generators of `sqrt(8) * Leech` inside Z^24: twice the Golay generators,
/// `4(e_0 + e_1)`, `4(e_i - e_{i+1})` and `(-3, 1^23)`.
pub(crate) fn leech_generators(code: &GolayCode) -> Vec<Vec<i128>> {
    let mut gens = Vec::new();
    for &g in code.generators() {
        gens.push((0..24).map(|i| 2 * i128::from(g >> i & 1)).collect());
    }
    let mut v = vec![0i128; 24];
    v[0] = 4;
    v[1] = 4;
    gens.push(v);
    for i in 0..23 {
        let mut v = vec![0i128; 24];
        v[i] = 4;
        v[i + 1] = -4;
        gens.push(v);
    }
    let mut v = vec![1i128; 24];
    v[0] = -3;
    gens.push(v);
    gens
}

/// The Leech lattice, from a Golay-code construction.
///
/// The resulting Gram matrix is checked to be even and unimodular; the
/// minimum norm 4 is confirmed separately by enumeration.
pub fn leech() -> Result<GramLattice> {
    let code = GolayCode::new()?;
    let mut basis = hermite_rows(leech_generators(&code), 24);
    if basis.len() != 24 {
        return Err(Error::Lattice(format!("Leech basis has rank {}", basis.len())));
    }
    // Longest rows first: the enumeration then branches over the coarse
    // directions near the root of the search tree.
    basis.reverse();
    let mut gram = vec![vec![0i64; 24]; 24];
    for i in 0..24 {
        for j in 0..24 {
            let dot: i128 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
            if dot % 8 != 0 {
                return Err(Error::Lattice("Leech Gram entry not integral".into()));
            }
            gram[i][j] = (dot / 8) as i64;
        }
    }
    let l = GramLattice::from_integer_gram("leech", &gram)?;
    if !l.is_even() || !l.is_unimodular() {
        return Err(Error::Lattice("Leech Gram is not even unimodular".into()));
    }
    Ok(l)
}
