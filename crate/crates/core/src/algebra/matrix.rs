use num_traits::{One, Zero};

use super::{lcm_of_denominators, Rat, UniPoly};
use crate::error::{Error, Result};

/// Dense rectangular matrix of polynomials in one shared variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    var: char,
    entries: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn from_rows(var: char, rows: Vec<Vec<UniPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for p in row {
                if p.var() != var && !p.is_constant() {
                    return Err(Error::VariableMismatch(var.into(), p.var().into()));
                }
                entries.push(p.with_var(var));
            }
        }
        Ok(PolyMatrix {
            rows: nrows,
            cols: ncols,
            var,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn get(&self, i: usize, j: usize) -> &UniPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[UniPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Multiplies row `i` by a rational constant.
    pub fn scale_row(&mut self, i: usize, c: &Rat) {
        let cols = self.cols;
        for p in &mut self.entries[i * cols..(i + 1) * cols] {
            *p = p.scale(c);
        }
    }

    /// Substitutes a value for the variable.
    pub fn eval(&self, x: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.eval(x)).collect(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first multiplied by the lcm of its coefficient
    /// denominators so elimination runs in `Z[var]`; every Bareiss division is
    /// exact there. The row multipliers are divided back out at the end.
    pub fn det_fraction_free(&self) -> Result<UniPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let var = self.var;
        let mut cleared = Rat::one();
        let mut m: Vec<Vec<UniPoly>> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let l = lcm_of_denominators(row.iter().flat_map(|p| p.coeffs()));
                let l = Rat::from_integer(l);
                cleared *= &l;
                row.iter().map(|p| p.scale(&l)).collect()
            })
            .collect();

        let mut negate = false;
        let mut prev = UniPoly::one(var);
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(UniPoly::zero(var));
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .exact_divide(&prev)
                        .expect("Bareiss step must divide exactly");
                }
                m[i][k] = UniPoly::zero(var);
            }
            prev = m[k][k].clone();
        }
        let mut det = m[n - 1][n - 1].scale(&cleared.recip());
        if negate {
            det = -det;
        }
        Ok(det)
    }
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) || ncols == 0 {
            return Err(Error::Dimension("ragged or empty matrix".into()));
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        self.entries.chunks(self.cols).map(<[Rat]>::to_vec).collect()
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..cols {
                self.entries.swap(p * cols + j, r * cols + j);
            }
            let inv = self.get(r, c).recip();
            for j in c..cols {
                self.entries[r * cols + j] *= &inv;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let delta = &f * self.get(r, j);
                    self.entries[i * cols + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }
}

/// Solves the system whose augmented matrix is `extended` (right-hand side in
/// the last column).
///
/// `Ok(None)` when the system is inconsistent, `Ok(Some(x))` for the unique
/// solution, and [`Error::Ambiguous`] when it is consistent but the
/// coefficient matrix lacks full column rank.
pub fn solve_overdetermined(extended: &RatMatrix) -> Result<Option<Vec<Rat>>> {
    let unknowns = extended.cols - 1;
    if unknowns == 0 {
        return Err(Error::Dimension("no unknowns".into()));
    }
    let mut m = extended.clone();
    let pivots = m.row_reduce();
    if pivots.last() == Some(&unknowns) {
        return Ok(None);
    }
    if pivots.len() < unknowns {
        return Err(Error::Ambiguous {
            rank: pivots.len(),
            unknowns,
        });
    }
    Ok(Some((0..unknowns).map(|i| m.get(i, unknowns).clone()).collect()))
}
