//! Exact integers, rationals, univariate polynomials, polynomial matrices and
//! real-root analysis.

mod matrix;
mod poly;
mod roots;

pub use matrix::{solve_overdetermined, PolyMatrix, RatMatrix};
pub use poly::UniPoly;
pub use roots::{rational_roots, split_rational_roots, sturm_count, sturm_sequence, ExtRat};

pub use num_bigint::BigInt as Int;
pub use num_rational::BigRational as Rat;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Rational `num/den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Exact string form used in every report: `"n"` or `"n/d"`.
pub fn rat_to_string(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> Int {
    it.into_iter().fold(Int::one(), |acc, q| acc.lcm(q.denom()))
}

pub(crate) fn gcd_of_numerators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> Int {
    it.into_iter()
        .fold(Int::zero(), |acc, q| acc.gcd(q.numer()))
        .abs()
}

/// All positive divisors of a nonzero integer, ascending.
///
/// Trial division; the constants fed in here (leading and trailing
/// coefficients of primitive determinants) are at most a few dozen digits
/// with small prime factors.
pub fn positive_divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero");
    let mut primes: Vec<(Int, u32)> = Vec::new();
    let mut rest = n;
    let mut p: u64 = 2;
    loop {
        let pb = Int::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            primes.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![Int::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
