//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unimodular::algebra::{rat, ratio, rational_roots, sturm_count, ExtRat, PolyMatrix, Rat, UniPoly};
use unimodular::config::{
    analyze, build_system, make_problem, reference_factorization, solve_at, ConfigProblem,
    Conclusion, Formulation, SUPPORTED_RANKS,
};
use unimodular::oracle::{design_check, e8, enumerate_shell, leech, n_profile, theta_by_enumeration};
use unimodular::qseries::{
    cusp_vanishing_check, eisenstein, extremal_theta, kissing_number, vanishing_degrees,
};
use unimodular::zonal::{sphere_moment, zonal_poly};
use unimodular::Int;
use unimodular_cli::{execute, Cli, Status};

const SEED: u64 = 1729;
const PROBES: usize = 5;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn c1() -> Outcome {
    let mut got = Vec::new();
    for (rank, k) in [(56u32, 15590400u64), (72, 6218175600), (96, 565866362880)] {
        let kn = kissing_number(rank).map_err(e)?;
        ensure(kn == Int::from(k), format!("rank {rank}: {kn} != {k}"))?;
        got.push(format!("{rank}:{kn}"));
    }
    Ok(got.join(" "))
}

fn c2() -> Outcome {
    let v = analyze(&build_system(&make_problem(72).map_err(e)?).map_err(e)?).map_err(e)?;
    let quartic = UniPoly::from_ints('t', &[54834, -50635, 17745, -2800, 168]);
    let expected = &UniPoly::x('t') * &quartic;
    ensure(v.primitive == expected || v.primitive == -expected.clone(), format!("primitive {}", v.primitive))?;
    let n = sturm_count(&v.determinant, &ExtRat::Finite(rat(0)), &ExtRat::PosInf).map_err(e)?;
    ensure(n == 0, format!("{n} real roots in (0, inf)"))?;
    Ok(format!("primitive = t*({quartic}), real roots in (0,inf): {n}"))
}

fn c3() -> Outcome {
    let v = analyze(&build_system(&make_problem(96).map_err(e)?).map_err(e)?).map_err(e)?;
    let reference = reference_factorization(96).ok_or("no reference")?;
    let mut rest = v.determinant.clone();
    for (f, m) in &reference.factors {
        for _ in 0..*m {
            rest = rest.exact_divide(f).ok_or_else(|| format!("{f} does not divide"))?;
        }
    }
    ensure(rest.is_constant() && !rest.is_zero(), format!("quotient {rest} is not a constant"))?;
    let roots = rational_roots(&v.determinant).map_err(e)?;
    let want: BTreeSet<Rat> = [rat(0), rat(12)].into_iter().collect();
    ensure(roots == want, format!("rational roots {roots:?}"))?;
    Ok(format!("s, s-12, Q(s) divide; quotient {rest}; rational roots {{0, 12}}"))
}

fn c4() -> Outcome {
    let v = analyze(&build_system(&make_problem(56).map_err(e)?).map_err(e)?).map_err(e)?;
    let reference = reference_factorization(56).ok_or("no reference")?;
    let sextic = &reference.factors.iter().find(|(f, _)| f.degree() == Some(6)).ok_or("no sextic")?.0;
    let sextic_rational = rational_roots(sextic).map_err(e)?;
    ensure(sextic_rational.is_empty(), "sextic has rational roots")?;
    let failed: Vec<String> = v
        .factor_checks
        .iter()
        .filter(|c| !c.divides)
        .map(|c| format!("({})^{}", c.factor, c.multiplicity))
        .collect();
    ensure(
        failed.is_empty(),
        format!(
            "computed determinant {} (degree {}) is not divisible by {}",
            v.primitive,
            v.determinant.degree().unwrap_or(0),
            failed.join(", ")
        ),
    )?;
    ensure(
        v.conclusion == Conclusion::GeneratedByMinimalVectors,
        format!("conclusion {}", v.conclusion),
    )?;
    Ok("t^2 and sextic divide; sextic has no rational roots; generated_by_minimal_vectors".into())
}

fn c5() -> Outcome {
    ensure(vanishing_degrees(96) == vec![2, 4, 6, 8, 10, 14], "rank 96 set")?;
    ensure(!cusp_vanishing_check(96, 12), "rank 96 accepts d = 12")?;
    ensure(vanishing_degrees(56) == vec![2, 4, 6, 10], "rank 56 set")?;
    ensure(!cusp_vanishing_check(56, 8), "rank 56 accepts d = 8")?;
    Ok("96: {2,4,6,8,10,14} (12 rejected); 56: {2,4,6,10} (8 rejected)".into())
}

fn c6() -> Outcome {
    let e8_theta = theta_by_enumeration(&e8(), 6).map_err(e)?;
    ensure(e8_theta == eisenstein(4, 4).map_err(e)?, "E8 theta != E4")?;
    let l = leech().map_err(e)?;
    let theta = theta_by_enumeration(&l, 4).map_err(e)?;
    ensure(theta == extremal_theta(24, 3).map_err(e)?, "Leech theta != extremal prefix")?;
    ensure(theta.coeffs()[2] == rat(196560), "q^2 coefficient")?;
    let shell = enumerate_shell(&l, &rat(4)).map_err(e)?;
    let prof = n_profile(&shell, &l, &shell.vectors[0]).map_err(e)?;
    let counts = prof.padded(4).ok_or("profile exceeds bound")?;
    let sys = build_system(&ConfigProblem::analogue(24, 4).map_err(e)?).map_err(e)?;
    let solved = solve_at(&sys, &rat(4)).map_err(e)?.ok_or("rank-24 system inconsistent at s = 4")?;
    let as_rat: Vec<Rat> = counts.iter().map(|&c| rat(c as i64)).collect();
    ensure(as_rat == solved, format!("profile {counts:?} != solve {solved:?}"))?;
    Ok(format!("E8 [1,240,2160,6720]; Leech [1,0,196560]; N-profile {counts:?}"))
}

fn c7() -> Outcome {
    let l = e8();
    let shell = enumerate_shell(&l, &rat(2)).map_err(e)?;
    ensure(design_check(&shell, &l, 7, PROBES, SEED).map_err(e)?, "E8 fails strength 7")?;
    ensure(!design_check(&shell, &l, 8, PROBES, SEED).map_err(e)?, "E8 passes strength 8")?;
    let l = leech().map_err(e)?;
    let shell = enumerate_shell(&l, &rat(4)).map_err(e)?;
    ensure(design_check(&shell, &l, 11, PROBES, SEED).map_err(e)?, "Leech fails strength 11")?;
    Ok(format!("E8 7 pass / 8 fail; Leech 11 pass; {PROBES} probes, seed {SEED}"))
}

fn c8() -> Outcome {
    let p = make_problem(72).map_err(e)?;
    let m = analyze(&build_system(&p.with_formulation(Formulation::Moment).map_err(e)?).map_err(e)?).map_err(e)?;
    let z = analyze(&build_system(&p.with_formulation(Formulation::Zonal).map_err(e)?).map_err(e)?).map_err(e)?;
    ensure(m.rational_roots == z.rational_roots, "rational root sets differ")?;
    ensure(m.positive_real_roots == z.positive_real_roots, "positive root counts differ")?;
    Ok(format!(
        "rational roots {:?}, positive real roots {} in both",
        m.rational_roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        m.positive_real_roots
    ))
}

fn c9() -> Outcome {
    let mut out = Vec::new();
    for rank in ["32", "48"] {
        let cli = Cli::parse_from(["unimodular", "--no-timing", "verify", "--rank", rank]);
        let report = execute(&cli).map_err(e)?;
        let conclusion = report.get("conclusion").ok_or("no conclusion")?;
        ensure(conclusion.status == Status::Pass, format!("rank {rank}: {}", conclusion.data))?;
        let fc = report.get("factor_consistency").ok_or("no factor check")?;
        ensure(fc.status == Status::Pass, format!("rank {rank}: factor consistency"))?;
        ensure(report.passed(), format!("rank {rank}: failures {:?}", report.failures()))?;
        out.push(format!("{rank}: {}", conclusion.data["conclusion"].as_str().unwrap_or("")));
    }
    Ok(out.join("; "))
}

fn cofactor_det(m: &[Vec<UniPoly>]) -> UniPoly {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero('t');
    for j in 0..m.len() {
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn sign_changes(p: &UniPoly, lo: i64, hi: i64, per_unit: i64) -> usize {
    let mut count = 0;
    let mut prev = 0;
    for k in lo * per_unit..=hi * per_unit {
        let v = p.eval(&ratio(k, per_unit));
        let s = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
        if s == 0 || (prev != 0 && s != prev) {
            count += 1;
        }
        prev = s;
    }
    count
}

fn c10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let poly = |rng: &mut ChaCha8Rng, deg: usize| {
        UniPoly::new('t', (0..=deg).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect())
    };

    for case in 0..100 {
        let rows: Vec<Vec<UniPoly>> = (0..4).map(|_| (0..4).map(|_| poly(&mut rng, 2)).collect()).collect();
        let want = cofactor_det(&rows);
        let got = PolyMatrix::from_rows('t', rows).map_err(e)?.det_fraction_free().map_err(e)?;
        ensure(got == want, format!("determinant case {case}"))?;
    }

    for case in 0..50 {
        let k = rng.gen_range(1..=4);
        let mut roots = BTreeSet::new();
        while roots.len() < k {
            roots.insert(rng.gen_range(-20i64..=20));
        }
        let mut p = UniPoly::one('t');
        for r in &roots {
            p = &p * &UniPoly::new('t', vec![ratio(-r, 4), rat(1)]);
        }
        if rng.gen_bool(0.5) {
            p = &p * &UniPoly::from_ints('t', &[rng.gen_range(1..=5), 0, 1]);
        }
        let oracle = sign_changes(&p, -6, 6, 64);
        let sturm = sturm_count(&p, &ExtRat::NegInf, &ExtRat::PosInf).map_err(e)?;
        ensure(oracle == k && sturm == k, format!("sturm case {case}: {sturm} vs {oracle}"))?;
    }

    let mut zonals = 0;
    for rank in SUPPORTED_RANKS {
        for d in vanishing_degrees(rank) {
            let z = zonal_poly(rank, d).map_err(e)?;
            ensure(z.laplacian_is_zero(), format!("P_{d} not harmonic in dimension {rank}"))?;
            zonals += 1;
        }
    }
    ensure(zonal_poly(96, 14).map_err(e)?.laplacian_is_zero(), "n=96 d=14")?;

    for n in [8u32, 24, 56, 72, 96] {
        for k in 1..=7u32 {
            let lhs = sphere_moment(n, k) * rat(n as i64 + 2 * k as i64 - 2);
            ensure(lhs == sphere_moment(n, k - 1) * rat(2 * k as i64 - 1), format!("moment n={n} k={k}"))?;
        }
    }

    for case in 0..100 {
        let p = poly(&mut rng, 6);
        if p.is_zero() {
            continue;
        }
        let (c, q) = p.content_and_primitive().map_err(e)?;
        ensure(q.scale(&c) == p, format!("content case {case}"))?;
    }
    Ok(format!("100 determinants, 50 Sturm counts, {zonals} zonal polynomials harmonic, moments, 100 content splits"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("kissing numbers of ranks 56, 72, 96", c1),
        ("rank-72 determinant and Sturm count", c2),
        ("rank-96 stated factors and rational roots", c3),
        ("rank-56 stated factors and conclusion", c4),
        ("cusp-vanishing degree sets", c5),
        ("E8/Leech enumeration oracles", c6),
        ("design strengths of E8 and Leech shells", c7),
        ("rank-72 moment vs zonal rows", c8),
        ("verify --rank 32 and 48", c9),
        ("property oracles", c10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} [{ms} ms]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed.len(), criteria.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
