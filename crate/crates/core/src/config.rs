//! Configuration systems on the inner-product counts `N_i(x0)`.
//!
//! For an extremal lattice of rank `n` with minimal norm `2m`, let `x0` be a
//! shortest representative of a class (modulo the sublattice spanned by the
//! minimal vectors, or of its dual). Minimality forces `|<x,x0>| <= m` for
//! every minimal vector `x`, so the shell splits into counts
//! `N_0 .. N_m`. Each vanishing zonal sum (or each sphere moment available
//! from the design strength) is one linear equation in those counts, with
//! coefficients polynomial in the class norm. Together with the shell
//! cardinality this gives `m + 2` equations in `m + 1` unknowns; wherever the
//! determinant of the extended matrix is nonzero the system is inconsistent
//! and no such class exists.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{
    rat, rational_roots, solve_overdetermined, sturm_count, ExtRat, Int, PolyMatrix, Rat,
    UniPoly,
};
use crate::error::{Error, Result};
use crate::qseries::{extremal_half_min, kissing_number, vanishing_degrees};
use crate::zonal::{shell_sum_form, sphere_moment, zonal_poly, NormVar};

/// Ranks with a full configuration analysis.
pub const SUPPORTED_RANKS: [u32; 5] = [32, 48, 56, 72, 96];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formulation {
    /// Rows `sum <x,x0>^(2k) = |shell| * moment_k * (r s)^k` for
    /// `k = 1 ..= B+1`; needs a design of strength `2(B+1)`.
    Moment,
    /// Rows `sum P_{d,x0}(x) = 0` for the vanishing degrees `d`.
    Zonal,
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formulation::Moment => "moment",
            Formulation::Zonal => "zonal",
        })
    }
}

/// Origin of one row of the extended matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowTag {
    Cardinality,
    Moment(u32),
    Zonal(u32),
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Cardinality => write!(f, "cardinality"),
            RowTag::Moment(k) => write!(f, "moment k={k}"),
            RowTag::Zonal(d) => write!(f, "zonal d={d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigProblem {
    pub rank: u32,
    /// Half the minimal norm.
    pub half_min: u32,
    pub min_norm: u32,
    /// Largest possible `|<x,x0>|` on the shell.
    pub ip_bound: u32,
    pub shell_count: Int,
    pub design_strength: u32,
    pub degree_set: Vec<u32>,
    pub norm_var: NormVar,
    pub formulation: Formulation,
}

/// Design strength of the minimal shell of an extremal lattice, by `n mod 24`.
pub fn extremal_design_strength(rank: u32) -> u32 {
    match rank % 24 {
        0 => 11,
        8 => 7,
        _ => 3,
    }
}

/// The problem for one of [`SUPPORTED_RANKS`].
///
/// Rank 72 uses moment rows over the class norm `2t`; rank 96 works in the
/// dual of the minimal-vector sublattice with the norm `s` itself; the other
/// ranks use zonal rows in `t`.
pub fn make_problem(rank: u32) -> Result<ConfigProblem> {
    if !SUPPORTED_RANKS.contains(&rank) {
        return Err(Error::Argument(format!(
            "unsupported rank {rank}; expected one of {SUPPORTED_RANKS:?}"
        )));
    }
    let m = extremal_half_min(rank);
    let (norm_var, formulation) = match rank {
        72 => (NormVar::HalfNorm, Formulation::Moment),
        96 => (NormVar::Norm, Formulation::Zonal),
        _ => (NormVar::HalfNorm, Formulation::Zonal),
    };
    ConfigProblem::build(rank, m, norm_var, formulation)
}

impl ConfigProblem {
    fn build(rank: u32, ip_bound: u32, norm_var: NormVar, formulation: Formulation) -> Result<Self> {
        let m = extremal_half_min(rank);
        let needed = ip_bound as usize + 1;
        let mut degree_set = vanishing_degrees(rank);
        if degree_set.len() < needed {
            return Err(Error::Argument(format!(
                "rank {rank}: only {} vanishing degrees for {needed} equations",
                degree_set.len()
            )));
        }
        degree_set.truncate(needed);
        let p = ConfigProblem {
            rank,
            half_min: m,
            min_norm: 2 * m,
            ip_bound,
            shell_count: kissing_number(rank)?,
            design_strength: extremal_design_strength(rank),
            degree_set,
            norm_var,
            formulation,
        };
        if formulation == Formulation::Moment && !p.moment_available() {
            return Err(Error::Argument(format!(
                "rank {rank}: moment rows need a {}-design, shell is a {}-design",
                2 * needed,
                p.design_strength
            )));
        }
        Ok(p)
    }

    /// Validation system on a known lattice (ranks 8 and 24), where `x0` runs
    /// over the minimal shell itself, so `|<x,x0>|` can reach the full
    /// minimal norm. Uses the norm variable `s` and zonal rows.
    pub fn analogue(rank: u32, ip_bound: u32) -> Result<Self> {
        if rank % 8 != 0 || rank == 0 {
            return Err(Error::Argument(format!("rank {rank} is not a multiple of 8")));
        }
        Self::build(rank, ip_bound, NormVar::Norm, Formulation::Zonal)
    }

    pub fn with_formulation(&self, formulation: Formulation) -> Result<Self> {
        Self::build(self.rank, self.ip_bound, self.norm_var, formulation)
    }

    pub fn moment_available(&self) -> bool {
        2 * (self.ip_bound + 1) <= self.design_strength
    }

    pub fn unknowns(&self) -> usize {
        self.ip_bound as usize + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub problem: ConfigProblem,
    /// Columns `N_0 .. N_B`, then the right-hand side.
    pub extended: PolyMatrix,
    pub tags: Vec<RowTag>,
}

/// Assembles the extended matrix: the cardinality row first, then one row per
/// moment index or zonal degree in ascending order.
pub fn build_system(p: &ConfigProblem) -> Result<LinearSystem> {
    let var = p.norm_var.label();
    let bound = p.ip_bound;
    let count = Rat::from_integer(p.shell_count.clone());
    let shell_norm = rat(p.min_norm as i64);
    let konst = |q: Rat| UniPoly::constant(var, q);

    let mut rows = Vec::new();
    let mut tags = Vec::new();

    let mut card: Vec<UniPoly> = (0..=bound)
        .map(|i| konst(rat(if i == 0 { 1 } else { 2 })))
        .collect();
    card.push(konst(count.clone()));
    rows.push(card);
    tags.push(RowTag::Cardinality);

    match p.formulation {
        Formulation::Moment => {
            // |shell| * moment * (r s)^k, with s the class norm.
            let rs = p.norm_var.norm_poly().scale(&shell_norm);
            for k in 1..=bound + 1 {
                let mut row: Vec<UniPoly> = (0..=bound)
                    .map(|i| {
                        let c = if i == 0 {
                            Int::zero()
                        } else {
                            Int::from(2) * Int::from(i).pow(2 * k)
                        };
                        konst(Rat::from_integer(c))
                    })
                    .collect();
                row.push(rs.pow(k).scale(&(&count * sphere_moment(p.rank, k))));
                rows.push(row);
                tags.push(RowTag::Moment(k));
            }
        }
        Formulation::Zonal => {
            for &d in &p.degree_set {
                let form = shell_sum_form(&zonal_poly(p.rank, d)?, &shell_norm, p.norm_var);
                let mut row = form.n_coefficients(bound);
                row.push(UniPoly::zero(var));
                rows.push(row);
                tags.push(RowTag::Zonal(d));
            }
        }
    }
    Ok(LinearSystem {
        problem: p.clone(),
        extended: PolyMatrix::from_rows(var, rows)?,
        tags,
    })
}

/// Exact `N_0 .. N_B` at a given value of the norm variable, if consistent.
pub fn solve_at(sys: &LinearSystem, value: &Rat) -> Result<Option<Vec<Rat>>> {
    solve_overdetermined(&sys.extended.eval(value))
}

/// A reference factorization `constant * prod factor^multiplicity` of the
/// determinant for one rank, in that rank's variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceFactorization {
    pub constant: Int,
    pub factors: Vec<(UniPoly, u32)>,
}

fn int_product(parts: &[(u64, u32)]) -> Int {
    parts
        .iter()
        .fold(Int::one(), |acc, &(p, e)| acc * Int::from(p).pow(e))
}

/// Known factorizations for ranks 56, 72 and 96.
pub fn reference_factorization(rank: u32) -> Option<ReferenceFactorization> {
    match rank {
        72 => Some(ReferenceFactorization {
            constant: int_product(&[(2, 25), (3, 9), (5, 4), (7, 2)]),
            factors: vec![
                (UniPoly::x('t'), 1),
                (UniPoly::from_ints('t', &[54834, -50635, 17745, -2800, 168]), 1),
            ],
        }),
        96 => Some(ReferenceFactorization {
            constant: -int_product(&[
                (2, 42),
                (3, 15),
                (5, 10),
                (7, 5),
                (11, 1),
                (13, 1),
                (17, 1),
                (19, 1),
                (29, 1),
                (47, 1),
                (53, 1),
                (59, 1),
            ]),
            factors: vec![
                (UniPoly::x('s'), 1),
                (UniPoly::from_ints('s', &[-12, 1]), 1),
                (
                    UniPoly::from_ints('s', &[-2741760, 1362720, -267444, 26112, -1275, 25]),
                    1,
                ),
            ],
        }),
        56 => Some(ReferenceFactorization {
            constant: -int_product(&[(2, 28), (3, 8), (5, 3), (7, 1), (29, 1), (31, 1)]),
            factors: vec![
                (UniPoly::x('t'), 2),
                (
                    UniPoly::from_ints(
                        't',
                        &[3644256, -1952280, -972400, 533337, 104624, -76120, 8976],
                    ),
                    1,
                ),
            ],
        }),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCheck {
    pub factor: UniPoly,
    pub multiplicity: u32,
    pub divides: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conclusion {
    GeneratedByMinimalVectors,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::GeneratedByMinimalVectors => "generated_by_minimal_vectors",
            Conclusion::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub rank: u32,
    pub formulation: Formulation,
    pub var: char,
    pub determinant: UniPoly,
    /// Sign of the determinant's leading coefficient for the canonical row
    /// order.
    pub sign: i32,
    pub content: Rat,
    pub primitive: UniPoly,
    pub factor_checks: Vec<FactorCheck>,
    /// What is left of the determinant after dividing out every reference
    /// factor that divides it.
    pub cofactor: Option<UniPoly>,
    /// Whether the content equals the reference constant (informational;
    /// row normalizations change it).
    pub reference_constant: Option<Int>,
    pub rational_roots: BTreeSet<Rat>,
    /// Distinct real roots of the determinant in `(0, +inf)`.
    pub positive_real_roots: usize,
    /// Class norms `<x0,x0>` for which the system is consistent.
    pub admissible_norms: BTreeSet<Rat>,
    pub conclusion: Conclusion,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn factors_confirmed(&self) -> bool {
        !self.factor_checks.is_empty() && self.factor_checks.iter().all(|c| c.divides)
    }

    pub fn content_matches_reference(&self) -> Option<bool> {
        self.reference_constant
            .as_ref()
            .map(|k| self.content == Rat::from_integer(k.clone()))
    }
}

fn fmt_set(set: &BTreeSet<Rat>) -> String {
    let items: Vec<String> = set.iter().map(crate::algebra::rat_to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// Determinant, reference-factor checks, root analysis and conclusion.
pub fn analyze(sys: &LinearSystem) -> Result<Verdict> {
    let p = &sys.problem;
    let var = p.norm_var.label();
    let det = sys.extended.det_fraction_free()?;
    let mut notes = Vec::new();

    if det.is_zero() {
        notes.push("extended determinant vanishes identically".into());
        return Ok(Verdict {
            rank: p.rank,
            formulation: p.formulation,
            var,
            sign: 0,
            content: Rat::zero(),
            primitive: det.clone(),
            determinant: det,
            factor_checks: Vec::new(),
            cofactor: None,
            reference_constant: None,
            rational_roots: BTreeSet::new(),
            positive_real_roots: 0,
            admissible_norms: BTreeSet::new(),
            conclusion: Conclusion::Inconclusive,
            notes,
        });
    }

    let (content, primitive) = det.content_and_primitive()?;
    let sign = if content.is_negative() { -1 } else { 1 };

    let reference = reference_factorization(p.rank).filter(|r| {
        r.factors.iter().all(|(f, _)| f.var() == var)
    });
    let mut factor_checks = Vec::new();
    let mut rest = det.clone();
    if let Some(r) = &reference {
        for (f, k) in &r.factors {
            let q = rest.exact_divide(&f.pow(*k));
            let divides = q.is_some();
            if let Some(q) = q {
                rest = q;
            }
            factor_checks.push(FactorCheck {
                factor: f.clone(),
                multiplicity: *k,
                divides,
            });
        }
    }
    let cofactor = reference.as_ref().map(|_| rest.clone());
    let mismatch = factor_checks.iter().any(|c| !c.divides);
    if mismatch {
        let failed: Vec<String> = factor_checks
            .iter()
            .filter(|c| !c.divides)
            .map(|c| match c.multiplicity {
                1 => format!("({})", c.factor),
                k => format!("({})^{k}", c.factor),
            })
            .collect();
        notes.push(format!(
            "factor mismatch: {} does not divide the computed determinant",
            failed.join(", ")
        ));
    } else if let Some(c) = &cofactor {
        if !c.is_constant() {
            notes.push(format!("reference factors leave a non-constant cofactor {c}"));
        }
    }

    let roots = rational_roots(&det)?;
    let positive_real_roots = sturm_count(&det, &ExtRat::Finite(Rat::zero()), &ExtRat::PosInf)?;
    let m = Rat::from_integer(Int::from(p.half_min));

    let (admissible, excluded) = match p.norm_var {
        NormVar::HalfNorm => {
            // x0 lies in the lattice: t is a nonnegative integer, and a
            // nontrivial shortest class representative has t >= m + 1.
            let admissible: BTreeSet<Rat> = roots
                .iter()
                .filter(|t| t.is_integer() && !t.is_negative())
                .map(|t| p.norm_var.norm_of(t))
                .collect();
            let excluded = roots.iter().all(|t| !(t.is_integer() && *t > m));
            if positive_real_roots == 0 {
                notes.push(format!(
                    "no real root with {var} > 0; every class norm above {} is excluded",
                    p.min_norm
                ));
            } else if excluded {
                notes.push(format!(
                    "{positive_real_roots} positive real root(s) exist, none an integer {var} >= {}; \
                     the exclusion rests on integrality alone",
                    p.half_min + 1
                ));
            }
            (admissible, excluded)
        }
        NormVar::Norm => {
            // x0 lies in the dual of the minimal-vector sublattice; its norm
            // is a nonnegative rational.
            let admissible: BTreeSet<Rat> = roots.iter().filter(|s| !s.is_negative()).cloned().collect();
            let excluded = admissible
                .iter()
                .all(|s| s.is_integer() && s.to_integer() % 2 == Int::zero());
            if excluded {
                notes.push(format!(
                    "admissible norms {} are all even integers: the dual of the sublattice \
                     generated by minimal vectors is then even, hence integral, so its index \
                     in the lattice is 1",
                    fmt_set(&admissible)
                ));
            }
            (admissible, excluded)
        }
    };

    let conclusion = if excluded && !mismatch {
        Conclusion::GeneratedByMinimalVectors
    } else {
        if !excluded {
            notes.push(format!(
                "admissible class norms {} include a nontrivial class",
                fmt_set(&admissible)
            ));
        }
        Conclusion::Inconclusive
    };

    Ok(Verdict {
        rank: p.rank,
        formulation: p.formulation,
        var,
        determinant: det,
        sign,
        content,
        primitive,
        factor_checks,
        cofactor,
        reference_constant: reference.map(|r| r.constant),
        rational_roots: roots,
        positive_real_roots,
        admissible_norms: admissible,
        conclusion,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_parameters() {
        let p = make_problem(72).unwrap();
        assert_eq!((p.half_min, p.ip_bound), (4, 4));
        assert_eq!(p.shell_count, Int::from(6218175600u64));
        assert_eq!(p.formulation, Formulation::Moment);

        let p = make_problem(96).unwrap();
        assert_eq!((p.half_min, p.ip_bound), (5, 5));
        assert_eq!(p.degree_set, vec![2, 4, 6, 8, 10, 14]);

        let p = make_problem(56).unwrap();
        assert_eq!((p.half_min, p.ip_bound), (3, 3));
        assert_eq!(p.degree_set, vec![2, 4, 6, 10]);

        assert!(make_problem(24).is_err());
        assert!(make_problem(64).is_err());
    }

    #[test]
    fn moment_rows_need_design_strength() {
        assert!(make_problem(96).unwrap().with_formulation(Formulation::Moment).is_err());
        assert!(make_problem(56).unwrap().with_formulation(Formulation::Moment).is_err());
        assert!(make_problem(48).unwrap().with_formulation(Formulation::Moment).is_ok());
    }

    #[test]
    fn rank72_rows() {
        let sys = build_system(&make_problem(72).unwrap()).unwrap();
        assert_eq!((sys.extended.rows(), sys.extended.cols()), (6, 6));
        assert_eq!(sys.tags[1], RowTag::Moment(1));
        assert_eq!(sys.extended.get(1, 3), &UniPoly::constant('t', rat(18)));
        // 6218175600 * (1/72) * 16 t
        let rhs = UniPoly::monomial('t', rat(6218175600) * crate::algebra::ratio(16, 72), 1);
        assert_eq!(sys.extended.get(1, 5), &rhs);
    }

    #[test]
    fn rank96_is_seven_by_seven() {
        let sys = build_system(&make_problem(96).unwrap()).unwrap();
        assert_eq!((sys.extended.rows(), sys.extended.cols()), (7, 7));
    }

    #[test]
    fn rank72_trivial_and_excluded_classes() {
        let sys = build_system(&make_problem(72).unwrap()).unwrap();
        let at0 = solve_at(&sys, &rat(0)).unwrap().unwrap();
        assert_eq!(at0, vec![rat(6218175600), rat(0), rat(0), rat(0), rat(0)]);
        assert_eq!(solve_at(&sys, &rat(5)).unwrap(), None);
    }
}
