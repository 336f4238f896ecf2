use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::{json, Value};
use unimodular::algebra::{rat, rat_to_string, split_rational_roots, Rat, UniPoly};
use unimodular::config::{
    analyze, build_system, make_problem, reference_factorization, solve_at, ConfigProblem,
    Conclusion, Formulation, LinearSystem, Verdict, SUPPORTED_RANKS,
};
use unimodular::oracle::{
    design_check, e8, enumerate_shell, leech, n_profile, theta_by_enumeration, GramLattice,
    ShellVectors,
};
use unimodular::qseries::{extremal_half_min, extremal_theta, kissing_number};
use unimodular::Error;

use crate::report::{Report, Status, Timing};
use crate::{Cli, Command, FormulationArg, LatticeArg};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

type Result<T> = std::result::Result<T, CliError>;

pub fn execute(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Verify { rank, formulation } => verify(*rank, *formulation)?,
        Command::Theta { rank, terms } => theta(*rank, *terms)?,
        Command::System { rank, formulation } => system(*rank, *formulation)?,
        Command::Oracle { lattice, checks, probes } => oracle(*lattice, checks, *probes, cli.seed)?,
    };
    if let Value::Object(m) = &mut report.inputs {
        m.insert("seed".into(), json!(cli.seed.to_string()));
    }
    if !cli.no_timing {
        report.timing = Some(Timing { elapsed_ms: start.elapsed().as_millis().to_string() });
    }
    Ok(report)
}

fn s(q: &Rat) -> Value {
    Value::String(rat_to_string(q))
}

fn p(poly: &UniPoly) -> Value {
    Value::String(poly.to_string())
}

fn set(xs: &BTreeSet<Rat>) -> Value {
    Value::Array(xs.iter().map(s).collect())
}

fn supported_problem(rank: u32) -> Result<ConfigProblem> {
    if !SUPPORTED_RANKS.contains(&rank) {
        return Err(CliError::Usage(format!(
            "unsupported rank {rank}; expected one of {SUPPORTED_RANKS:?}"
        )));
    }
    Ok(make_problem(rank)?)
}

fn formulations(p: &ConfigProblem, arg: Option<FormulationArg>) -> Result<Vec<Formulation>> {
    let wanted = match arg {
        None => vec![p.formulation],
        Some(FormulationArg::Moment) => vec![Formulation::Moment],
        Some(FormulationArg::Zonal) => vec![Formulation::Zonal],
        Some(FormulationArg::Both) => vec![Formulation::Moment, Formulation::Zonal],
    };
    if wanted.contains(&Formulation::Moment) && !p.moment_available() {
        return Err(CliError::Usage(format!(
            "rank {}: moment rows need a {}-design but the minimal shell is only a {}-design; use --formulation zonal",
            p.rank,
            2 * p.unknowns(),
            p.design_strength
        )));
    }
    Ok(wanted)
}

fn problem_data(p: &ConfigProblem) -> Value {
    json!({
        "rank": p.rank.to_string(),
        "half_min": p.half_min.to_string(),
        "min_norm": p.min_norm.to_string(),
        "ip_bound": p.ip_bound.to_string(),
        "shell_count": p.shell_count.to_string(),
        "design_strength": p.design_strength.to_string(),
        "degree_set": p.degree_set.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "variable": p.norm_var.label().to_string(),
    })
}

pub fn verify(rank: u32, arg: Option<FormulationArg>) -> Result<Report> {
    let problem = supported_problem(rank)?;
    let forms = formulations(&problem, arg)?;
    let mut inputs = json!({ "rank": rank.to_string() });
    if let Some(a) = arg {
        inputs["formulation"] = json!(format!("{a:?}").to_lowercase());
    }
    let mut report = Report::new(format!("verify --rank {rank}"), inputs);
    report.push("problem", Status::Info, problem_data(&problem));

    let mut verdicts = Vec::new();
    for &f in &forms {
        let prefix = if forms.len() > 1 { format!("{f}.") } else { String::new() };
        let sys = build_system(&problem.with_formulation(f)?)?;
        let v = analyze(&sys)?;
        push_verdict(&mut report, &prefix, &sys, &v)?;
        verdicts.push(v);
    }
    if let [a, b] = verdicts.as_slice() {
        let same = a.rational_roots == b.rational_roots && a.positive_real_roots == b.positive_real_roots;
        report.push(
            "cross_check",
            if same { Status::Pass } else { Status::Fail },
            json!({
                "rational_roots": { a.formulation.to_string(): set(&a.rational_roots), b.formulation.to_string(): set(&b.rational_roots) },
                "positive_real_roots": { a.formulation.to_string(): a.positive_real_roots.to_string(), b.formulation.to_string(): b.positive_real_roots.to_string() },
                "same_primitive_part": (a.primitive == b.primitive).to_string(),
            }),
        );
    }
    Ok(report)
}

fn push_verdict(report: &mut Report, prefix: &str, sys: &LinearSystem, v: &Verdict) -> Result<()> {
    report.push(
        format!("{prefix}determinant"),
        Status::Info,
        json!({
            "formulation": v.formulation.to_string(),
            "size": format!("{}x{}", sys.extended.rows(), sys.extended.cols()),
            "determinant": p(&v.determinant),
            "sign": v.sign.to_string(),
            "content": s(&v.content),
            "primitive": p(&v.primitive),
        }),
    );

    if let Some(reference) = reference_factorization(v.rank) {
        let checks: Vec<Value> = v
            .factor_checks
            .iter()
            .map(|c| {
                json!({
                    "factor": p(&c.factor),
                    "multiplicity": c.multiplicity.to_string(),
                    "divides": c.divides.to_string(),
                })
            })
            .collect();
        let cofactor_constant = v.cofactor.as_ref().is_some_and(|c| c.is_constant());
        let mut expected = UniPoly::one(v.var);
        for (f, e) in &reference.factors {
            expected = &expected * &f.pow(*e);
        }
        let primitive_matches = expected.primitive()? == v.primitive;
        let ok = v.factors_confirmed() && cofactor_constant && primitive_matches;
        let mut data = json!({
            "factors": checks,
            "cofactor": v.cofactor.as_ref().map(p).unwrap_or(Value::Null),
            "cofactor_is_constant": cofactor_constant.to_string(),
            "primitive_equals_reference_product": primitive_matches.to_string(),
            "reference_constant": reference.constant.to_string(),
        });
        match v.content_matches_reference() {
            Some(true) => data["constant"] = json!("content equals the reference constant"),
            _ => {
                let ratio = &v.content / Rat::from_integer(reference.constant.clone());
                data["constant"] = json!(format!(
                    "content differs from the reference constant by the factor {} (row normalization)",
                    rat_to_string(&ratio)
                ));
            }
        }
        report.push(format!("{prefix}stated_factors"), if ok { Status::Pass } else { Status::Fail }, data);
    } else {
        // no reference: det must equal content * prod (linear factors) * cofactor
        let (roots, rest) = split_rational_roots(&v.determinant)?;
        let mut rebuilt = rest.clone();
        for (r, e) in &roots {
            let lin = UniPoly::new(
                v.var,
                vec![Rat::from_integer(-r.numer().clone()), Rat::from_integer(r.denom().clone())],
            );
            rebuilt = &rebuilt * &lin.pow(*e);
        }
        let ok = rebuilt.scale(&v.content) == v.determinant
            && unimodular::algebra::rational_roots(&rest)?.is_empty();
        report.push(
            format!("{prefix}factor_consistency"),
            if ok { Status::Pass } else { Status::Fail },
            json!({
                "linear_factors": roots.iter().map(|(r, e)| json!({ "root": s(r), "multiplicity": e.to_string() })).collect::<Vec<_>>(),
                "cofactor": p(&rest),
                "reconstructs_determinant": ok.to_string(),
            }),
        );
    }

    report.push(
        format!("{prefix}roots"),
        Status::Info,
        json!({
            "rational_roots": set(&v.rational_roots),
            "positive_real_roots": v.positive_real_roots.to_string(),
            "admissible_norms": set(&v.admissible_norms),
        }),
    );
    report.push(
        format!("{prefix}conclusion"),
        if v.conclusion == Conclusion::GeneratedByMinimalVectors { Status::Pass } else { Status::Fail },
        json!({ "conclusion": v.conclusion.to_string(), "notes": v.notes }),
    );
    Ok(())
}

pub fn theta(rank: u32, terms: Option<usize>) -> Result<Report> {
    if rank == 0 || rank % 8 != 0 {
        return Err(CliError::Usage(format!("rank {rank} is not a positive multiple of 8")));
    }
    let m = extremal_half_min(rank) as usize;
    let terms = terms.unwrap_or(m + 10);
    if terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    let series = extremal_theta(rank, terms)?;
    let mut report = Report::new(
        format!("theta --rank {rank} --terms {terms}"),
        json!({ "rank": rank.to_string(), "terms": terms.to_string() }),
    );
    let coeffs: Vec<Value> = series.coeffs().iter().map(s).collect();
    report.push("theta", Status::Info, json!({ "coefficients": coeffs }));
    let ok = series.coeffs().iter().all(|c| c.is_integer() && *c >= rat(0));
    report.push(
        "integral_nonnegative",
        if ok { Status::Pass } else { Status::Fail },
        json!({ "holds": ok.to_string() }),
    );
    report.push(
        "kissing_number",
        Status::Info,
        json!({ "min_norm": (2 * m).to_string(), "value": kissing_number(rank)?.to_string() }),
    );
    Ok(report)
}

pub fn system(rank: u32, arg: Option<FormulationArg>) -> Result<Report> {
    let problem = supported_problem(rank)?;
    let forms = formulations(&problem, arg)?;
    let mut inputs = json!({ "rank": rank.to_string() });
    if let Some(a) = arg {
        inputs["formulation"] = json!(format!("{a:?}").to_lowercase());
    }
    let mut report = Report::new(format!("system --rank {rank}"), inputs);
    for &f in &forms {
        let prefix = if forms.len() > 1 { format!("{f}.") } else { String::new() };
        let sys = build_system(&problem.with_formulation(f)?)?;
        let rows: Vec<Value> = (0..sys.extended.rows())
            .map(|i| Value::Array(sys.extended.row(i).iter().map(p).collect()))
            .collect();
        let det = sys.extended.det_fraction_free()?;
        report.push(
            format!("{prefix}system"),
            Status::Info,
            json!({
                "formulation": f.to_string(),
                "variable": sys.extended.var().to_string(),
                "size": format!("{}x{}", sys.extended.rows(), sys.extended.cols()),
                "columns": (0..sys.problem.unknowns()).map(|i| format!("N_{i}")).chain(["rhs".to_string()]).collect::<Vec<_>>(),
                "tags": sys.tags.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "matrix": rows,
                "determinant": p(&det),
            }),
        );
    }
    Ok(report)
}

enum Check {
    Theta,
    Kissing,
    Shells,
    Design(u32),
    Profile,
}

fn parse_check(name: &str) -> Result<Check> {
    match name.trim() {
        "theta" => Ok(Check::Theta),
        "kissing" => Ok(Check::Kissing),
        "shells" => Ok(Check::Shells),
        "profile" => Ok(Check::Profile),
        other => match other.strip_prefix("design:").map(str::parse::<u32>) {
            Some(Ok(k)) if k >= 1 => Ok(Check::Design(k)),
            _ => Err(CliError::Usage(format!(
                "unknown check `{other}`; expected theta, kissing, shells, design:K or profile"
            ))),
        },
    }
}

struct OracleLattice {
    name: &'static str,
    lattice: GramLattice,
    rank: u32,
    min_norm: u32,
    strength: u32,
    /// Theta coefficients by half-norm, enumerated up to this norm.
    theta_norm: u32,
    shell: Option<ShellVectors>,
}

impl OracleLattice {
    fn new(which: LatticeArg) -> Result<Self> {
        Ok(match which {
            LatticeArg::E8 => OracleLattice {
                name: "e8", lattice: e8(), rank: 8, min_norm: 2, strength: 7, theta_norm: 6, shell: None,
            },
            LatticeArg::Leech => OracleLattice {
                name: "leech", lattice: leech()?, rank: 24, min_norm: 4, strength: 11, theta_norm: 4, shell: None,
            },
        })
    }

    fn min_shell(&mut self) -> Result<&ShellVectors> {
        if self.shell.is_none() {
            self.shell = Some(enumerate_shell(&self.lattice, &rat(self.min_norm as i64))?);
        }
        Ok(self.shell.as_ref().unwrap())
    }
}

pub fn oracle(which: LatticeArg, checks: &[String], probes: usize, seed: u64) -> Result<Report> {
    let parsed = checks.iter().map(|c| parse_check(c)).collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Err(CliError::Usage("no checks requested".into()));
    }
    if probes == 0 {
        return Err(CliError::Usage("--probes must be at least 1".into()));
    }
    let mut ol = OracleLattice::new(which)?;
    let mut report = Report::new(
        format!("oracle --lattice {} --checks {}", ol.name, checks.join(",")),
        json!({ "lattice": ol.name, "checks": checks, "probes": probes.to_string() }),
    );
    report.push(
        "lattice",
        Status::Info,
        json!({
            "rank": ol.rank.to_string(),
            "determinant": s(&ol.lattice.determinant()),
            "even": ol.lattice.is_even().to_string(),
            "unimodular": ol.lattice.is_unimodular().to_string(),
        }),
    );

    for (name, check) in checks.iter().zip(parsed) {
        let name = name.trim();
        match check {
            Check::Theta => {
                let enumerated = theta_by_enumeration(&ol.lattice, ol.theta_norm)?;
                let expected = extremal_theta(ol.rank, enumerated.order())?;
                let ok = enumerated == expected;
                report.push(name, status(ok), json!({
                    "enumerated": enumerated.coeffs().iter().map(s).collect::<Vec<_>>(),
                    "extremal": expected.coeffs().iter().map(s).collect::<Vec<_>>(),
                }));
            }
            Check::Kissing => {
                let expected = kissing_number(ol.rank)?;
                let got = ol.min_shell()?.len();
                let ok = expected == got.into();
                report.push(name, status(ok), json!({
                    "min_norm": ol.min_norm.to_string(),
                    "enumerated": got.to_string(),
                    "expected": expected.to_string(),
                }));
            }
            Check::Shells => {
                let series = extremal_theta(ol.rank, 3)?;
                let mut rows = Vec::new();
                let mut ok = true;
                for half in 1..=2u32 {
                    let shell = if 2 * half == ol.min_norm {
                        ol.min_shell()?.len()
                    } else {
                        enumerate_shell(&ol.lattice, &rat(2 * half as i64))?.len()
                    };
                    let expected = &series.coeffs()[half as usize];
                    ok &= Rat::from_integer(shell.into()) == *expected;
                    rows.push(json!({
                        "norm": (2 * half).to_string(),
                        "enumerated": shell.to_string(),
                        "expected": s(expected),
                    }));
                }
                report.push(name, status(ok), json!({ "shells": rows }));
            }
            Check::Design(k) => {
                let strength = ol.strength;
                let lattice = ol.lattice.clone();
                let is_design = design_check(ol.min_shell()?, &lattice, k, probes, seed)?;
                let expected = k <= strength;
                report.push(name, status(is_design == expected), json!({
                    "strength": k.to_string(),
                    "is_design": is_design.to_string(),
                    "expected": expected.to_string(),
                    "probes": probes.to_string(),
                }));
            }
            Check::Profile => {
                let lattice = ol.lattice.clone();
                let bound = ol.min_norm;
                let shell = ol.min_shell()?;
                let prof = n_profile(shell, &lattice, &shell.vectors[0])?;
                let sys = build_system(&ConfigProblem::analogue(ol.rank, bound)?)?;
                let solved = solve_at(&sys, &rat(ol.min_norm as i64))?;
                let counts = prof.padded(bound as usize);
                let ok = match (&counts, &solved) {
                    (Some(c), Some(x)) => c.iter().zip(x).all(|(a, b)| Rat::from_integer((*a).into()) == *b),
                    _ => false,
                };
                report.push(name, status(ok), json!({
                    "x0_norm": ol.min_norm.to_string(),
                    "enumerated": prof.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "solved": solved.map(|x| x.iter().map(s).collect::<Vec<_>>()),
                }));
            }
        }
    }
    Ok(report)
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}
