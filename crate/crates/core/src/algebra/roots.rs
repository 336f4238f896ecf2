use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{positive_divisors, Rat, UniPoly};
use crate::error::{Error, Result};

/// A rational number or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl From<Rat> for ExtRat {
    fn from(q: Rat) -> Self {
        ExtRat::Finite(q)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::PosInf => write!(f, "+inf"),
            ExtRat::Finite(q) => write!(f, "{}", super::rat_to_string(q)),
        }
    }
}

impl ExtRat {
    fn less_than(&self, other: &ExtRat) -> bool {
        match (self, other) {
            (ExtRat::NegInf, ExtRat::NegInf) | (ExtRat::PosInf, _) => false,
            (ExtRat::NegInf, _) | (_, ExtRat::PosInf) => true,
            (ExtRat::Finite(_), ExtRat::NegInf) => false,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a < b,
        }
    }
}

/// Divides by the absolute content, keeping the sign.
fn positive_normalize(p: &UniPoly) -> UniPoly {
    match p.content_and_primitive() {
        Ok((c, _)) => p.scale(&c.abs().recip()),
        Err(_) => p.clone(),
    }
}

fn poly_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        b = positive_normalize(&r);
    }
    a.primitive().unwrap_or(a)
}

/// Square-free part: same distinct roots, each simple.
pub(crate) fn square_free(p: &UniPoly) -> UniPoly {
    let g = poly_gcd(p, &p.derivative());
    p.exact_divide(&g).expect("gcd divides")
}

/// Sturm sequence of the square-free part of `p`.
///
/// Remainders are reduced to primitive form by positive scalars only, so
/// every sign pattern is preserved.
pub fn sturm_sequence(p: &UniPoly) -> Result<Vec<UniPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("Sturm sequence of zero"));
    }
    let p0 = positive_normalize(&square_free(p));
    let p1 = positive_normalize(&p0.derivative());
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(positive_normalize(&-r));
    }
    Ok(seq)
}

fn sign_changes(seq: &[UniPoly], x: &ExtRat) -> usize {
    let signs = seq.iter().map(|q| match x {
        ExtRat::NegInf => q.sign_at_infinity(true),
        ExtRat::PosInf => q.sign_at_infinity(false),
        ExtRat::Finite(v) => {
            let y = q.eval(v);
            if y.is_zero() {
                0
            } else if y.is_positive() {
                1
            } else {
                -1
            }
        }
    });
    let mut last = 0;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count(p: &UniPoly, lo: &ExtRat, hi: &ExtRat) -> Result<usize> {
    if !lo.less_than(hi) {
        return Err(Error::Argument(format!("empty interval ({lo}, {hi})")));
    }
    let seq = sturm_sequence(p)?;
    // V(lo) - V(hi) counts roots in (lo, hi]; the right endpoint is excluded.
    let at_lo = sign_changes(&seq, lo);
    let at_hi = sign_changes(&seq, hi);
    let hi_is_root = matches!(hi, ExtRat::Finite(v) if p.eval(v).is_zero());
    Ok(at_lo - at_hi - usize::from(hi_is_root))
}

/// Every `±a/b` with `a | constant term` and `b | leading coefficient` of the
/// primitive part (after removing the root at zero).
pub fn rational_root_candidates(p: &UniPoly) -> Result<BTreeSet<Rat>> {
    let prim = p.primitive()?;
    let (k, rest) = prim.strip_var_power();
    let mut out = BTreeSet::new();
    if k > 0 {
        out.insert(Rat::zero());
    }
    if rest.is_constant() {
        return Ok(out);
    }
    let a0 = rest.coeff(0).numer().clone();
    let an = rest.leading().unwrap().numer().clone();
    let dens = positive_divisors(&an);
    for num in positive_divisors(&a0) {
        for den in &dens {
            let q = Rat::new(num.clone(), den.clone());
            out.insert(-q.clone());
            out.insert(q);
        }
    }
    Ok(out)
}

/// Exact set of rational roots, by the rational-root theorem.
pub fn rational_roots(p: &UniPoly) -> Result<BTreeSet<Rat>> {
    let prim = p.primitive()?;
    Ok(rational_root_candidates(&prim)?
        .into_iter()
        .filter(|q| prim.eval(q).is_zero())
        .collect())
}

/// Rational roots with multiplicities and the primitive cofactor left after
/// dividing out `(den*x - num)^mult` for each of them.
pub fn split_rational_roots(p: &UniPoly) -> Result<(Vec<(Rat, u32)>, UniPoly)> {
    let mut rest = p.primitive()?;
    let mut out = Vec::new();
    for r in rational_roots(p)? {
        let lin = UniPoly::new(
            p.var(),
            vec![Rat::from_integer(-r.numer().clone()), Rat::from_integer(r.denom().clone())],
        );
        let mut mult = 0;
        while let Some(q) = rest.exact_divide(&lin) {
            rest = q;
            mult += 1;
        }
        out.push((r, mult));
    }
    Ok((out, rest.primitive()?))
}
