//! Determinant, Sturm and rational-root checks against independent oracles.

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unimodular::algebra::{
    rat, ratio, rational_roots, sturm_count, ExtRat, PolyMatrix, Rat, UniPoly,
};
use unimodular::algebra::positive_divisors;

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero('t');
    for j in 0..n {
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg)
        .map(|_| {
            let num = rng.gen_range(-9i64..=9);
            let den = rng.gen_range(1i64..=4);
            ratio(num, den)
        })
        .collect();
    UniPoly::new('t', coeffs)
}

#[test]
fn bareiss_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut cases = 0;
    for size in 1..=4 {
        let count = if size == 4 { 100 } else { 30 };
        for _ in 0..count {
            let rows: Vec<Vec<UniPoly>> = (0..size)
                .map(|_| (0..size).map(|_| random_poly(&mut rng, 2)).collect())
                .collect();
            let expected = cofactor_det(&rows);
            let m = PolyMatrix::from_rows('t', rows).unwrap();
            assert_eq!(m.det_fraction_free().unwrap(), expected);
            cases += 1;
        }
    }
    assert!(cases >= 100);
}

#[test]
fn bareiss_handles_singular_and_sparse_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let mut rows: Vec<Vec<UniPoly>> = (0..4)
            .map(|_| {
                (0..4)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            UniPoly::zero('t')
                        } else {
                            random_poly(&mut rng, 2)
                        }
                    })
                    .collect()
            })
            .collect();
        if rng.gen_bool(0.3) {
            rows[3] = rows[0].iter().map(|p| p.scale(&rat(3))).collect();
        }
        let expected = cofactor_det(&rows);
        let m = PolyMatrix::from_rows('t', rows).unwrap();
        assert_eq!(m.det_fraction_free().unwrap(), expected);
    }
}

/// Sign changes of `p` on a uniform grid over `[-bound, bound]`, refined
/// until the spacing is below 1/32 and the count is stable for several
/// consecutive halvings.
fn bisection_root_count(p: &UniPoly) -> usize {
    // Fujiwara: every root satisfies |x| <= 2 max |a_{n-i}/a_n|^(1/i)
    let n = p.degree().unwrap();
    let lead = p.leading().unwrap().abs();
    let mut fb = 0f64;
    for i in 1..=n {
        let r = p.coeff(n - i).abs() / &lead;
        let v = (r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap())
            .powf(1.0 / i as f64);
        fb = fb.max(v);
    }
    let bound = rat((2.0 * fb).ceil() as i64 + 1);
    let mut steps = 64i64;
    let mut last = usize::MAX;
    let mut stable = 0;
    let mut h = bound.clone();
    while stable < 4 || h > ratio(1, 32) {
        h = &bound * ratio(2, steps);
        let mut count = 0;
        let mut prev_sign = 0;
        for k in 0..=steps {
            let x = -bound.clone() + &h * rat(k);
            let v = p.eval(&x);
            let s = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
            if s == 0 {
                // a grid point hit a root exactly
                count += 1;
                prev_sign = 0;
                continue;
            }
            if prev_sign != 0 && s != prev_sign {
                count += 1;
            }
            prev_sign = s;
        }
        if count == last {
            stable += 1;
        } else {
            stable = 0;
        }
        last = count;
        steps *= 2;
        assert!(steps < 1 << 20, "grid refinement did not settle");
    }
    last
}

#[test]
fn sturm_matches_bisection_on_square_free_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..60 {
        // distinct rational roots on a 1/4 lattice plus root-free quadratics
        let nroots = rng.gen_range(0..=4);
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < nroots {
            let r = rng.gen_range(-24i64..=24);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let mut p = UniPoly::one('t');
        for r in &roots {
            p = &p * &UniPoly::new('t', vec![ratio(-r, 4), rat(1)]);
        }
        if p.degree().unwrap() + 2 <= 6 && rng.gen_bool(0.5) {
            let a = rng.gen_range(1i64..=9);
            p = &p * &UniPoly::from_ints('t', &[a, 0, 1]);
        }
        if p.is_constant() {
            continue;
        }
        let oracle = bisection_root_count(&p);
        assert_eq!(oracle, roots.len());
        let got = sturm_count(&p, &ExtRat::NegInf, &ExtRat::PosInf).unwrap();
        assert_eq!(got, oracle, "{p}");
    }
}

#[test]
fn sturm_matches_bisection_on_random_integer_polys() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let deg = rng.gen_range(1..=6);
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-20..=20)).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let p = UniPoly::from_ints('t', &coeffs);
        let got = sturm_count(&p, &ExtRat::NegInf, &ExtRat::PosInf).unwrap();
        // even-multiplicity roots are invisible to sign changes
        let sf_oracle = bisection_root_count(&p);
        assert!(got >= sf_oracle);
        let d = p.derivative();
        let repeated = rational_roots(&p)
            .unwrap()
            .iter()
            .any(|r| d.eval(r).is_zero());
        if !repeated {
            assert_eq!(got, sf_oracle, "{p}");
        }
    }
}

#[test]
fn rational_root_candidates_are_classified_exactly() {
    // (t - 2)(t + 2)(2t - 3)(3t^2 + 1)
    let p = &(&UniPoly::from_ints('t', &[-2, 1]) * &UniPoly::from_ints('t', &[2, 1]))
        * &(&UniPoly::from_ints('t', &[-3, 2]) * &UniPoly::from_ints('t', &[1, 0, 3]));
    let roots = rational_roots(&p).unwrap();
    let expected: Vec<Rat> = vec![rat(-2), ratio(3, 2), rat(2)];
    assert_eq!(roots.iter().cloned().collect::<Vec<_>>(), expected);

    let prim = p.primitive().unwrap();
    let a0 = prim.coeff(0).numer().clone();
    let an = prim.leading().unwrap().numer().clone();
    for num in positive_divisors(&a0) {
        for den in positive_divisors(&an) {
            for q in [Rat::new(num.clone(), den.clone()), -Rat::new(num.clone(), den.clone())] {
                assert_eq!(roots.contains(&q), prim.eval(&q).is_zero());
            }
        }
    }
}

fn poly_strategy() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-50i64..=50, 1i64..=6), 1..7)
        .prop_map(|cs| UniPoly::new('t', cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

proptest! {
    #[test]
    fn content_times_primitive_is_identity(p in poly_strategy()) {
        prop_assume!(!p.is_zero());
        let (c, q) = p.content_and_primitive().unwrap();
        prop_assert_eq!(q.scale(&c), p);
        prop_assert!(q.coeffs().iter().all(|x| x.is_integer()));
        prop_assert!(q.leading().unwrap().is_positive());
        let g = q.coeffs().iter().fold(num_bigint::BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x.numer()));
        prop_assert_eq!(g, num_bigint::BigInt::from(1));
    }

    #[test]
    fn exact_divide_undoes_multiplication(p in poly_strategy(), d in poly_strategy()) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&p * &d).exact_divide(&d), Some(p));
    }

    #[test]
    fn returned_rational_roots_vanish(p in poly_strategy()) {
        prop_assume!(!p.is_zero());
        for r in rational_roots(&p).unwrap() {
            prop_assert!(p.eval(&r).is_zero());
        }
    }
}
