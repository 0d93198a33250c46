//! Exact solver for coefficient-matching systems: sequential elimination by
//! resultants, root extraction over the working field, back-substitution,
//! and verification of every candidate against the original equations.


use crate::algebra::poly::Poly;
use crate::algebra::rational::Rational;
use crate::algebra::QuadExt;

use super::mpoly::MPoly;
use super::resultant::resultant;
use super::roots::{gcd_rational, roots_in_field, FieldSpec};
use super::CoverError;

/// Hard ceilings for the elimination; exceeded means the system is out of
/// the intended problem class.
const MAX_TOTAL_DEGREE: u32 = 3000;
const MAX_TERMS: usize = 400_000;

pub struct SystemSolution {
    pub assignments: Vec<Vec<QuadExt>>,
    pub notices: Vec<String>,
}

/// Solves `eqs = 0` for all `nvars` unknowns over the declared field.
///
/// Returns every verified assignment; projection steps may produce spurious
/// candidates but final verification filters them, and roots outside the
/// field are discarded with a notice.
pub fn solve_system(
    eqs: &[MPoly],
    nvars: usize,
    field: FieldSpec,
) -> Result<SystemSolution, CoverError> {
    let mut notices = vec![];
    let mut sys: Vec<MPoly> = vec![];
    for e in eqs {
        let p = e.primitive();
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return Ok(SystemSolution { assignments: vec![], notices });
        }
        if !sys.contains(&p) {
            sys.push(p);
        }
    }
    if sys.is_empty() {
        if nvars == 0 {
            return Ok(SystemSolution { assignments: vec![vec![]], notices });
        }
        return Err(CoverError::Underdetermined(nvars));
    }
    for v in 0..nvars {
        if !sys.iter().any(|e| e.contains_var(v)) {
            return Err(CoverError::Underdetermined(1));
        }
    }

    // eliminate down to a single variable
    let mut levels: Vec<(usize, Vec<MPoly>)> = vec![];
    let mut remaining: Vec<usize> = (0..nvars).collect();
    while remaining.len() > 1 {
        let x = pick_variable(&sys, &remaining);
        let t_proj = std::time::Instant::now();
        let projected = project(&sys, x)?;
        if std::env::var("HX_SOLVER_TRACE").is_ok() {
            eprintln!("project x{} : {} eqs -> {} eqs, max deg {} in {:?}", x, sys.len(), projected.len(), projected.iter().map(|e| e.total_degree()).max().unwrap_or(0), t_proj.elapsed());
        }
        levels.push((x, std::mem::take(&mut sys)));
        remaining.retain(|&v| v != x);
        if projected.is_empty() {
            return Err(CoverError::Underdetermined(remaining.len()));
        }
        // a nonzero-constant projection means the system is infeasible
        if projected.iter().any(|p| p.is_constant() && !p.is_zero()) {
            return Ok(SystemSolution { assignments: vec![], notices });
        }
        sys = projected;
    }

    // base case: univariate system in the last variable
    let last = remaining[0];
    let mut partials: Vec<Vec<Option<QuadExt>>> = vec![];
    {
        let t_base = std::time::Instant::now();
        let none = vec![None; nvars];
        let mut g = Poly::zero();
        for e in &sys {
            let u = e.eval_univariate(last, &none);
            g = if g.is_zero() { u } else { gcd_rational(&g, &u) };
        }
        if std::env::var("HX_SOLVER_TRACE").is_ok() {
            eprintln!("base gcd: {} eqs, gcd deg {} in {:?}", sys.len(), g.degree(), t_base.elapsed());
        }
        if g.is_zero() {
            return Err(CoverError::Underdetermined(1));
        }
        let rep = roots_in_field(&g, field);
        notices.extend(rep.notices);
        for r in rep.roots {
            let mut a = none.clone();
            a[last] = Some(r);
            partials.push(a);
        }
    }

    // lift level by level
    for (x, level_sys) in levels.iter().rev() {
        let mut next: Vec<Vec<Option<QuadExt>>> = vec![];
        'branch: for theta in &partials {
            let mut gcd_k: Option<Poly> = None;
            for e in level_sys {
                if e.contains_var(*x) {
                    let u = e.eval_univariate(*x, theta);
                    if u.is_zero() {
                        continue;
                    }
                    if u.degree() == 0 {
                        continue 'branch; // inconsistent branch
                    }
                    gcd_k = Some(match gcd_k {
                        None => u,
                        Some(g) => poly_gcd_generic(&g, &u),
                    });
                } else {
                    // x-free equation: must vanish on this branch
                    let v = e.eval_univariate(*x, theta);
                    if !v.is_zero() {
                        continue 'branch;
                    }
                }
            }
            let Some(g) = gcd_k else {
                notices.push(format!("variable x{} unconstrained on a branch; branch dropped", x));
                continue;
            };
            if g.degree() == 0 {
                continue;
            }
            let t_roots = std::time::Instant::now();
            let rep = roots_in_field(&g, field);
            if std::env::var("HX_SOLVER_TRACE").is_ok() {
                eprintln!("lift x{}: gcd deg {} roots {} in {:?}", x, g.degree(), rep.roots.len(), t_roots.elapsed());
            }
            notices.extend(rep.notices);
            for r in rep.roots {
                let mut a = theta.clone();
                a[*x] = Some(r);
                next.push(a);
            }
        }
        partials = next;
    }

    // verify every candidate against the original equations
    let mut assignments: Vec<Vec<QuadExt>> = vec![];
    'cand: for theta in partials {
        let values: Vec<QuadExt> = theta.into_iter().map(|v| v.expect("complete")).collect();
        for e in eqs {
            if !e.eval(&values).is_zero() {
                continue 'cand;
            }
        }
        if !assignments.contains(&values) {
            assignments.push(values);
        }
    }
    assignments.sort_by(|a, b| compare_assignments(a, b));
    Ok(SystemSolution { assignments, notices })
}

fn poly_gcd_generic(a: &Poly, b: &Poly) -> Poly {
    if a.is_rational() && b.is_rational() {
        gcd_rational(a, b)
    } else {
        a.gcd(b)
    }
}

fn pick_variable(sys: &[MPoly], remaining: &[usize]) -> usize {
    let mut best = remaining[0];
    let mut best_key = (u16::MAX, usize::MAX);
    for &v in remaining {
        let mut min_deg = u16::MAX;
        let mut count = 0usize;
        for e in sys {
            let d = e.degree_in(v);
            if d > 0 {
                min_deg = min_deg.min(d);
                count += 1;
            }
        }
        if count == 0 {
            continue;
        }
        let key = (min_deg, count);
        if key < best_key {
            best_key = key;
            best = v;
        }
    }
    best
}

fn project(sys: &[MPoly], x: usize) -> Result<Vec<MPoly>, CoverError> {
    let with_x: Vec<&MPoly> = sys.iter().filter(|e| e.contains_var(x)).collect();
    let without: Vec<MPoly> = sys
        .iter()
        .filter(|e| !e.contains_var(x))
        .cloned()
        .collect();
    if with_x.is_empty() {
        return Ok(without);
    }
    // pivot: minimal degree in x, then fewest terms
    let pivot = *with_x
        .iter()
        .min_by_key(|e| (e.degree_in(x), e.num_terms()))
        .unwrap();
    let mut out = without;
    for e in &with_x {
        if std::ptr::eq(*e, pivot) {
            continue;
        }
        let r = resultant(pivot, e, x).primitive();
        if r.is_zero() {
            continue;
        }
        if r.total_degree() > MAX_TOTAL_DEGREE || r.num_terms() > MAX_TERMS {
            return Err(CoverError::ResourceBudget);
        }
        if !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(out)
}

fn compare_assignments(a: &[QuadExt], b: &[QuadExt]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let k = quad_key(x).cmp(&quad_key(y));
        if k != std::cmp::Ordering::Equal {
            return k;
        }
    }
    std::cmp::Ordering::Equal
}

fn quad_key(v: &QuadExt) -> (i64, Rational, Rational) {
    (v.field_d(), v.rational_part().clone(), v.surd_part().clone())
}
