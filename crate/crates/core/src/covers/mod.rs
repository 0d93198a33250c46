//! Ramification analysis of rational maps, Belyi checks, Riemann–Hurwitz
//! accounting, and the coefficient-matching solver for rational covers.

pub mod intpoly;
pub mod mpoly;
pub mod orbit;
pub mod problems;
pub mod resultant;
pub mod roots;
pub mod solver;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RationalFunction;
use crate::algebra::QuadExt;
use crate::schwarzian::Location;

pub use mpoly::{MPoly, ZPoly};
pub use roots::{factor_in_field, roots_in_field, FieldSpec};
pub use solver::solve_system;

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("the map is constant")]
    ConstantMap,
    #[error("system leaves {0} degrees of freedom")]
    Underdetermined(usize),
    #[error("elimination exceeded the degree budget")]
    ResourceBudget,
    #[error("ramification indices sum to {got}, expected the map degree {expected}")]
    ProfileMismatch { got: usize, expected: usize },
    #[error("Riemann-Hurwitz count is inconsistent: {0}")]
    RiemannHurwitz(String),
    #[error("malformed cover problem: {0}")]
    Malformed(String),
}

/// The three marked fibers of a candidate Belyi map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fiber {
    Zero,
    One,
    Infinity,
}

/// Ramification data of one fiber: solved points with indices, plus
/// factor blocks whose roots live outside the working field.
#[derive(Clone, Debug)]
pub struct RamProfile {
    pub fiber: Fiber,
    pub points: Vec<(Location, u32)>,
    /// `(squarefree factor, index)` blocks of unresolved roots.
    pub blocks: Vec<(Poly, u32)>,
    pub notices: Vec<String>,
}

impl RamProfile {
    /// Total of ramification indices, counting each block root separately.
    pub fn degree_total(&self) -> usize {
        self.points.iter().map(|(_, i)| *i as usize).sum::<usize>()
            + self
                .blocks
                .iter()
                .map(|(p, i)| p.degree() * *i as usize)
                .sum::<usize>()
    }

    /// Total branch number `sum (index - 1)` of the fiber.
    pub fn branch_number(&self) -> usize {
        self.points
            .iter()
            .map(|(_, i)| (*i as usize) - 1)
            .sum::<usize>()
            + self
                .blocks
                .iter()
                .map(|(p, i)| p.degree() * (*i as usize - 1))
                .sum::<usize>()
    }
}

/// Ramification profile of `s` over the fiber 0, 1 or infinity.
pub fn ramification_profile(
    s: &RationalFunction,
    fiber: Fiber,
    field: FieldSpec,
) -> Result<RamProfile, CoverError> {
    if s.is_constant() {
        return Err(CoverError::ConstantMap);
    }
    let num = s.num();
    let den = s.den();
    let degree = s.map_degree();
    let (poly, inf_index) = match fiber {
        Fiber::Zero => {
            let gap = den.degree() as i64 - num.degree() as i64;
            (num.clone(), gap.max(0) as u32)
        }
        Fiber::Infinity => {
            let gap = num.degree() as i64 - den.degree() as i64;
            (den.clone(), gap.max(0) as u32)
        }
        Fiber::One => {
            let diff = num - den;
            if diff.is_zero() {
                return Err(CoverError::ConstantMap);
            }
            // when deg num = deg den and the leading terms cancel, infinity
            // sits over 1 with the cancellation depth as its index
            let gap = degree as i64 - diff.degree() as i64;
            (diff, gap.max(0) as u32)
        }
    };
    let rep = factor_in_field(&poly, field);
    let mut points: Vec<(Location, u32)> = rep
        .roots
        .into_iter()
        .map(|(r, m)| (Location::Finite(r), m))
        .collect();
    if inf_index > 0 {
        points.push((Location::Infinity, inf_index));
    }
    let profile = RamProfile { fiber, points, blocks: rep.blocks, notices: rep.notices };
    let got = profile.degree_total();
    if got != degree {
        return Err(CoverError::ProfileMismatch { got, expected: degree });
    }
    Ok(profile)
}

/// Genus of the covering curve from a degree-`m` map of the line with the
/// given fiber profiles plus any branch indices over other points:
/// `2g' - 2 = -2m + sum(index - 1)`.
pub fn riemann_hurwitz(
    m: usize,
    profiles: &[RamProfile],
    extra_branch_indices: &[u32],
) -> Result<u32, CoverError> {
    let mut branch: i64 = profiles.iter().map(|p| p.branch_number() as i64).sum();
    branch += extra_branch_indices.iter().map(|&i| i as i64 - 1).sum::<i64>();
    if branch % 2 != 0 {
        return Err(CoverError::RiemannHurwitz(format!(
            "odd total branch number {branch}"
        )));
    }
    let doubled = -2 * m as i64 + branch + 2;
    if doubled % 2 != 0 || doubled < 0 {
        return Err(CoverError::RiemannHurwitz(format!(
            "degree {m} with branch number {branch} gives no valid genus"
        )));
    }
    Ok((doubled / 2) as u32)
}

/// Exact Belyi test: every critical value of `s` (including at infinity)
/// lies in {0, 1, infinity}.
///
/// Finite critical points are the roots of `w = num' den - num den'`; their
/// values land in {0, 1, inf} exactly when the radical of `w` divides
/// `num (num - den) den`, which is decided by gcd peeling without any root
/// extraction.
pub fn is_belyi(s: &RationalFunction) -> Result<bool, CoverError> {
    if s.is_constant() {
        return Err(CoverError::ConstantMap);
    }
    let num = s.num();
    let den = s.den();
    let w = &(&num.derivative() * den) - &(num * &den.derivative());
    let product = &(num * &(num - den)) * den;
    if !w.is_zero() && w.degree() > 0 {
        let mut v = w.monic();
        loop {
            let g = v.gcd(&product);
            if g.degree() == 0 {
                break;
            }
            v = v.div_exact(&g).expect("gcd divides");
        }
        if v.degree() > 0 {
            return Ok(false);
        }
    }
    // the point at infinity: ramified over a finite value only when the two
    // degrees agree and leading terms cancel deeply
    if num.degree() == den.degree() {
        let lam = &num.leading() / &den.leading();
        let diff = num - &den.scale(&lam);
        let index = num.degree() as i64 - if diff.is_zero() { 0 } else { diff.degree() as i64 };
        if index >= 2 && !lam.is_zero() && !lam.is_one() {
            return Ok(false);
        }
        if diff.is_zero() {
            return Err(CoverError::ConstantMap);
        }
    }
    Ok(true)
}

/// A declarative coefficient-matching problem: a rational-map ansatz whose
/// z-coefficients are polynomials in named unknowns, matching constraints
/// that must vanish identically in z, and exclusions (polynomials that must
/// not vanish on a valid solution).
#[derive(Clone, Debug)]
pub struct CoverProblem {
    pub vars: Vec<String>,
    pub field: FieldSpec,
    pub ansatz_num: ZPoly,
    pub ansatz_den: ZPoly,
    pub constraints: Vec<ZPoly>,
    pub exclusions: Vec<MPoly>,
}

/// One exact solution: values for the unknowns plus the instantiated map.
#[derive(Clone, Debug)]
pub struct CoverSolution {
    pub assignment: Vec<(String, QuadExt)>,
    pub map: RationalFunction,
}

#[derive(Debug, Default)]
pub struct CoverOutcome {
    pub solutions: Vec<CoverSolution>,
    pub notices: Vec<String>,
}

/// Solves the matching system and returns every non-degenerate solution,
/// ordered lexicographically by unknown assignment. Degenerate covers (zero
/// or degree-dropping numerators/denominators, or a shared factor) are
/// discarded with a notice; each returned solution re-verifies every
/// constraint by exact substitution.
pub fn solve_cover(problem: &CoverProblem) -> Result<CoverOutcome, CoverError> {
    let nvars = problem.vars.len();
    let mut eqs: Vec<MPoly> = vec![];
    for c in &problem.constraints {
        for coeff in &c.coeffs {
            if !coeff.is_zero() {
                eqs.push(coeff.clone());
            }
        }
    }
    if eqs.is_empty() {
        return Err(CoverError::Malformed("no constraints".into()));
    }
    let sol = solve_system(&eqs, nvars, problem.field)?;
    let mut out = CoverOutcome { solutions: vec![], notices: sol.notices };
    let formal_deg = problem.ansatz_num.degree().max(problem.ansatz_den.degree());
    'next: for values in sol.assignments {
        for ex in &problem.exclusions {
            if ex.eval(&values).is_zero() {
                out.notices
                    .push(format!("solution rejected by exclusion: {}", fmt_assignment(problem, &values)));
                continue 'next;
            }
        }
        let num = problem.ansatz_num.instantiate(&values);
        let den = problem.ansatz_den.instantiate(&values);
        if num.is_zero() || den.is_zero() {
            out.notices
                .push(format!("degenerate (zero map): {}", fmt_assignment(problem, &values)));
            continue;
        }
        let inst_deg = num.degree().max(den.degree());
        if inst_deg < formal_deg {
            out.notices
                .push(format!("degenerate (degree drop): {}", fmt_assignment(problem, &values)));
            continue;
        }
        if num.gcd(&den).degree() > 0 {
            out.notices.push(format!(
                "degenerate (shared factor): {}",
                fmt_assignment(problem, &values)
            ));
            continue;
        }
        // exact re-substitution of every constraint
        for c in &problem.constraints {
            let p = c.instantiate(&values);
            debug_assert!(p.is_zero(), "solver returned a non-solution");
            if !p.is_zero() {
                continue 'next;
            }
        }
        let map = RationalFunction::new(num, den);
        out.solutions.push(CoverSolution {
            assignment: problem
                .vars
                .iter()
                .cloned()
                .zip(values.iter().cloned())
                .collect(),
            map,
        });
    }
    Ok(out)
}

fn fmt_assignment(problem: &CoverProblem, values: &[QuadExt]) -> String {
    problem
        .vars
        .iter()
        .zip(values)
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------------------
// JSON serialisation of cover problems
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MPolyDto {
    /// terms as (coefficient, exponent-vector) pairs
    terms: Vec<(String, Vec<u16>)>,
}

#[derive(Serialize, Deserialize)]
struct ZPolyDto {
    coeffs: Vec<MPolyDto>,
}

#[derive(Serialize, Deserialize)]
struct CoverProblemDto {
    vars: Vec<String>,
    field: FieldDto,
    ansatz_num: ZPolyDto,
    ansatz_den: ZPolyDto,
    constraints: Vec<ZPolyDto>,
    exclusions: Vec<MPolyDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum FieldDto {
    Rational,
    Quadratic { d: i64 },
}

fn mpoly_to_dto(p: &MPoly) -> MPolyDto {
    MPolyDto {
        terms: p
            .terms()
            .map(|(m, c)| (crate::algebra::rational::format_rational(c), m.clone()))
            .collect(),
    }
}

fn mpoly_from_dto(dto: &MPolyDto, nvars: usize) -> Result<MPoly, CoverError> {
    let mut terms = vec![];
    for (c, m) in &dto.terms {
        if m.len() != nvars {
            return Err(CoverError::Malformed("wrong monomial arity".into()));
        }
        let r = crate::algebra::rational::parse_rational(c)
            .map_err(|e| CoverError::Malformed(e.to_string()))?;
        terms.push((m.clone(), r));
    }
    Ok(MPoly::from_terms(nvars, terms))
}

pub fn problem_to_json(p: &CoverProblem) -> String {
    let dto = CoverProblemDto {
        vars: p.vars.clone(),
        field: match p.field {
            FieldSpec::Rationals => FieldDto::Rational,
            FieldSpec::Quadratic(d) => FieldDto::Quadratic { d },
        },
        ansatz_num: ZPolyDto { coeffs: p.ansatz_num.coeffs.iter().map(mpoly_to_dto).collect() },
        ansatz_den: ZPolyDto { coeffs: p.ansatz_den.coeffs.iter().map(mpoly_to_dto).collect() },
        constraints: p
            .constraints
            .iter()
            .map(|c| ZPolyDto { coeffs: c.coeffs.iter().map(mpoly_to_dto).collect() })
            .collect(),
        exclusions: p.exclusions.iter().map(mpoly_to_dto).collect(),
    };
    serde_json::to_string_pretty(&dto).expect("serialisable")
}

pub fn problem_from_json(s: &str) -> Result<CoverProblem, CoverError> {
    let dto: CoverProblemDto =
        serde_json::from_str(s).map_err(|e| CoverError::Malformed(e.to_string()))?;
    let nvars = dto.vars.len();
    let zp = |z: &ZPolyDto| -> Result<ZPoly, CoverError> {
        let mut coeffs = vec![];
        for c in &z.coeffs {
            coeffs.push(mpoly_from_dto(c, nvars)?);
        }
        if coeffs.is_empty() {
            coeffs.push(MPoly::zero(nvars));
        }
        Ok(ZPoly { coeffs })
    };
    Ok(CoverProblem {
        vars: dto.vars.clone(),
        field: match dto.field {
            FieldDto::Rational => FieldSpec::Rationals,
            FieldDto::Quadratic { d } => FieldSpec::Quadratic(d),
        },
        ansatz_num: zp(&dto.ansatz_num)?,
        ansatz_den: zp(&dto.ansatz_den)?,
        constraints: dto
            .constraints
            .iter()
            .map(zp)
            .collect::<Result<Vec<_>, _>>()?,
        exclusions: dto
            .exclusions
            .iter()
            .map(|m| mpoly_from_dto(m, nvars))
            .collect::<Result<Vec<_>, _>>()?,
    })
}
