use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{gcd_of_numerators, lcm_of_denominators, Int, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
    var: char,
}

impl UniPoly {
    pub fn new(var: char, coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { coeffs, var };
        p.trim();
        p
    }

    /// From machine-integer coefficients, lowest degree first.
    pub fn from_ints(var: char, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn zero(var: char) -> Self {
        UniPoly { coeffs: Vec::new(), var }
    }

    pub fn constant(var: char, c: Rat) -> Self {
        Self::new(var, vec![c])
    }

    pub fn one(var: char) -> Self {
        Self::constant(var, Rat::one())
    }

    /// `c * var^k`.
    pub fn monomial(var: char, c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    /// The variable itself.
    pub fn x(var: char) -> Self {
        Self::monomial(var, Rat::one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `var^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Multiplicity of the root at zero (number of trailing zero coefficients).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(c * var)`.
    pub fn rescale_var(&self, c: &Rat) -> Self {
        let mut pow = Rat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a * &pow;
                pow *= c;
                out
            })
            .collect();
        Self::new(self.var, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.var), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(Int::from(k)))
            .collect();
        Self::new(self.var, coeffs)
    }

    /// Euclidean division over the rationals; `d` must be nonzero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let var = join_var(self, d);
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(var), UniPoly::new(var, rem));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(var, quot), UniPoly::new(var, rem))
    }

    /// Quotient `self / d` when `d` divides `self` with zero remainder.
    pub fn exact_divide(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Splits `self = content * primitive`, where the primitive part has
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn content_and_primitive(&self) -> Result<(Rat, UniPoly)> {
        let lead = self
            .leading()
            .ok_or(Error::ZeroPolynomial("content of zero polynomial"))?;
        let g = gcd_of_numerators(&self.coeffs);
        let l = lcm_of_denominators(&self.coeffs);
        let mut content = Rat::new(g, l);
        if lead.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        Ok((content, prim))
    }

    pub fn primitive(&self) -> Result<UniPoly> {
        Ok(self.content_and_primitive()?.1)
    }

    /// Removes every factor of `var`, returning the multiplicity removed.
    pub fn strip_var_power(&self) -> (usize, UniPoly) {
        let k = self.valuation().unwrap_or(0);
        (k, UniPoly::new(self.var, self.coeffs[k..].to_vec()))
    }

    /// Sign of the polynomial as `var → +∞` (or `−∞` when `negative`).
    pub fn sign_at_infinity(&self, negative: bool) -> i32 {
        match self.leading() {
            None => 0,
            Some(c) => {
                let s = if c.is_positive() { 1 } else { -1 };
                if negative && self.degree().unwrap() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        Self::new(self.var, self.coeffs.iter().map(f).collect())
    }
}

fn join_var(a: &UniPoly, b: &UniPoly) -> char {
    if a.var == b.var || b.is_constant() {
        a.var
    } else if a.is_constant() {
        b.var
    } else {
        panic!("mixing polynomials in {} and {}", a.var, b.var)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let var = join_var(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::new(var, coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let var = join_var(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::new(var, coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let var = join_var(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(var);
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(var, coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    /// Highest degree first, e.g. `168*t^4 - 2800*t^3 + 17745*t^2 - 50635*t + 54834`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let body = super::rat_to_string(&a);
            match k {
                0 => write!(f, "{body}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{body}*")?;
                    }
                    write!(f, "{}", self.var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
