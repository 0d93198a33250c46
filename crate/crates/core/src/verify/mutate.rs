//! Mutation testing of identity specs: perturbing any single stored
//! exponent or coefficient must break verification.

use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RationalFunction;
use crate::algebra::rational::rat;
use crate::algebra::QuadExt;

use super::{IdentitySide, IdentitySpec};

/// A single-slot perturbation of a spec.
pub struct Mutant {
    pub description: String,
    pub spec: IdentitySpec,
}

fn bump(v: &QuadExt) -> QuadExt {
    &*v + &QuadExt::from_rational(rat(1, 100))
}

fn poly_mutants(p: &Poly) -> Vec<(usize, Poly)> {
    let n = if p.is_zero() { 0 } else { p.degree() + 1 };
    (0..n)
        .map(|i| {
            let mut coeffs: Vec<QuadExt> = (0..n).map(|k| p.coeff(k)).collect();
            coeffs[i] = bump(&coeffs[i]);
            (i, Poly::new(coeffs))
        })
        .collect()
}

fn side_mutants(side: &IdentitySide, label: &str) -> Vec<(String, IdentitySide)> {
    let mut out = vec![];
    for (pi, p) in side.prefactors.iter().enumerate() {
        // exponent
        {
            let mut s = side.clone();
            s.prefactors[pi].exponent = &p.exponent + rat(1, 100);
            out.push((format!("{label}.prefactor[{pi}].exponent"), s));
        }
        for (ci, base) in poly_mutants(&p.base) {
            let mut s = side.clone();
            s.prefactors[pi].base = base;
            out.push((format!("{label}.prefactor[{pi}].base[{ci}]"), s));
        }
    }
    for (name, pick) in [("a", 0), ("b", 1), ("c", 2)] {
        let mut s = side.clone();
        match pick {
            0 => s.hg.a = bump(&s.hg.a),
            1 => s.hg.b = bump(&s.hg.b),
            _ => s.hg.c = bump(&s.hg.c),
        }
        out.push((format!("{label}.hg.{name}"), s));
    }
    for (ci, num) in poly_mutants(side.argument.num()) {
        let mut s = side.clone();
        s.argument = RationalFunction::new(num, side.argument.den().clone());
        out.push((format!("{label}.arg.num[{ci}]"), s));
    }
    for (ci, den) in poly_mutants(side.argument.den()) {
        let mut s = side.clone();
        s.argument = RationalFunction::new(side.argument.num().clone(), den);
        out.push((format!("{label}.arg.den[{ci}]"), s));
    }
    out
}

/// Every single-slot mutant of the spec (each perturbs exactly one stored
/// exponent or coefficient by 1/100).
pub fn mutants(spec: &IdentitySpec) -> Vec<Mutant> {
    let mut out = vec![];
    for (desc, lhs) in side_mutants(&spec.lhs, "lhs") {
        let mut s = spec.clone();
        s.lhs = lhs;
        out.push(Mutant { description: desc, spec: s });
    }
    for (desc, rhs) in side_mutants(&spec.rhs, "rhs") {
        let mut s = spec.clone();
        s.rhs = rhs;
        out.push(Mutant { description: desc, spec: s });
    }
    out
}
