//! Catalog of coefficient-matching problems for the covers appearing in the
//! bundled transformation corpus. Each builder returns a ready-to-solve
//! [`CoverProblem`]; fiber data and symmetry orbits follow the associated
//! curve configurations.

use crate::algebra::QuadExt;
use crate::schwarzian::MoebiusMap;

use super::mpoly::{MPoly, ZPoly};
use super::orbit::AnsatzBuilder;
use super::roots::FieldSpec;
use super::CoverProblem;

fn q(n: i64) -> QuadExt {
    QuadExt::from_i64(n)
}

/// Order-4 rotation `z -> -(z+1)/(z-1)` permuting `0 -> 1 -> inf -> -1`.
fn quartic_rotation() -> MoebiusMap {
    MoebiusMap::new(q(-1), q(-1), q(1), q(-1)).unwrap()
}

/// Order-6 rotation `z -> (3z+1)/(3-3z)` cycling `0, 1/3, 1, inf, -1, -1/3`.
fn hexagonal_rotation() -> MoebiusMap {
    MoebiusMap::new(q(3), q(1), q(-3), q(3)).unwrap()
}

/// Degree-12 matching problem between a quadrilateral curve with an order-4
/// rotation symmetry and a triangle curve: the map has fibers
/// `{0:[1,5,5,1], 1:[2,2,2,2,2,2], inf:[1,1,5,5]}` with the two quintupled
/// pairs and the sextuple quartet lying on rotation orbits of a shared seed.
pub fn quintic_pair_problem() -> CoverProblem {
    let g = quartic_rotation();
    let mut b = AnsatzBuilder::new();
    let bb = b.scalar("B");
    let cc = b.scalar("C");
    // the two pairs over 0 and infinity are the two halves of one orbit
    let blk0 = b.orbit_block("x", &g, 2, 2, None, "u");
    let blk_inf = b.orbit_block("x", &g, 2, 2, Some(&g), "v");
    // the sextuple fiber over 1: ±i are fixed; the other four points form a
    // full orbit
    let blk1 = b.orbit_block("y", &g, 1, 4, None, "t");
    let built = b.finish();

    let num = ZPoly::constant(built.var(bb))
        .mul(&built.fixed(&[0, 1]))
        .mul(&built.block(blk0).pow(5));
    let den = built.fixed(&[1, 0, -1]).mul(&built.block(blk_inf).pow(5));
    let one_fiber = ZPoly::constant(built.var(cc))
        .mul(&built.fixed(&[1, 0, 1]).pow(2))
        .mul(&built.block(blk1).pow(2));
    let matching = num.sub(&den).sub(&one_fiber);

    let mut constraints = vec![matching];
    constraints.extend(built.couplings.iter().cloned().map(ZPoly::constant));
    CoverProblem {
        vars: built.names.clone(),
        field: FieldSpec::Rationals,
        ansatz_num: num,
        ansatz_den: den,
        constraints,
        exclusions: vec![],
    }
}

/// Degree-3 matching problem `(1+z)(1-az)^3 - (1-z)(1-bz)^3 = A z^3` with
/// the negation symmetry `b = -a` imposed declaratively.
pub fn cubic_symmetric_problem() -> CoverProblem {
    let nv = 3; // A, a, b
    let a_var = MPoly::var(nv, 1);
    let b_var = MPoly::var(nv, 2);
    let one = ZPoly::from_ints(nv, &[1, 1]); // 1 + z
    let neg = ZPoly::from_ints(nv, &[1, -1]); // 1 - z
    let lin_a = ZPoly { coeffs: vec![MPoly::one(nv), -&a_var] }; // 1 - a z
    let lin_b = ZPoly { coeffs: vec![MPoly::one(nv), -&b_var] };
    let a_term = ZPoly { coeffs: vec![MPoly::zero(nv), MPoly::zero(nv), MPoly::zero(nv), MPoly::var(nv, 0)] };
    let matching = one
        .mul(&lin_a.pow(3))
        .sub(&neg.mul(&lin_b.pow(3)))
        .sub(&a_term);
    let symmetry = ZPoly::constant(&a_var + &b_var);
    let num = a_term;
    let den = one.mul(&lin_a.pow(3));
    CoverProblem {
        vars: vec!["A".into(), "a".into(), "b".into()],
        field: FieldSpec::Rationals,
        ansatz_num: num,
        ansatz_den: den,
        constraints: vec![matching, symmetry],
        exclusions: vec![MPoly::var(nv, 0)],
    }
}

/// Degree-3 cover with fibers `{0:[2,1], 1:[3], inf:[1,2]}`:
/// `B z^2 (z-1) - (z-u) = C (z-v)^3`.
pub fn triple_cover_problem() -> CoverProblem {
    let nv = 4; // B, C, u, v
    let b_var = MPoly::var(nv, 0);
    let c_var = MPoly::var(nv, 1);
    let u_var = MPoly::var(nv, 2);
    let v_var = MPoly::var(nv, 3);
    let num = ZPoly::constant(b_var)
        .mul(&ZPoly::from_ints(nv, &[0, 0, 1]))
        .mul(&ZPoly::from_ints(nv, &[-1, 1]));
    let den = ZPoly { coeffs: vec![-&u_var, MPoly::one(nv)] };
    let triple = ZPoly { coeffs: vec![-&v_var, MPoly::one(nv)] }.pow(3);
    let matching = num.sub(&den).sub(&triple.scale(&c_var));
    CoverProblem {
        vars: vec!["B".into(), "C".into(), "u".into(), "v".into()],
        field: FieldSpec::Rationals,
        ansatz_num: num,
        ansatz_den: den,
        constraints: vec![matching],
        exclusions: vec![],
    }
}

/// Degree-4 cover with fibers `{0:[3,1], 1:[2,2], inf:[3,1]}`:
/// `B z^3 - (z-1)^3 (z-w) = C (z^2 + p z + q)^2`.
pub fn quadruple_cover_problem() -> CoverProblem {
    let nv = 5; // B, C, w, p, q
    let b_var = MPoly::var(nv, 0);
    let c_var = MPoly::var(nv, 1);
    let w_var = MPoly::var(nv, 2);
    let p_var = MPoly::var(nv, 3);
    let q_var = MPoly::var(nv, 4);
    let num = ZPoly { coeffs: vec![MPoly::zero(nv), MPoly::zero(nv), MPoly::zero(nv), b_var] };
    let den = ZPoly::from_ints(nv, &[-1, 1])
        .pow(3)
        .mul(&ZPoly { coeffs: vec![-&w_var, MPoly::one(nv)] });
    let quad = ZPoly { coeffs: vec![q_var, p_var, MPoly::one(nv)] };
    let matching = num.sub(&den).sub(&quad.pow(2).scale(&c_var));
    CoverProblem {
        vars: vec!["B".into(), "C".into(), "w".into(), "p".into(), "q".into()],
        field: FieldSpec::Rationals,
        ansatz_num: num,
        ansatz_den: den,
        constraints: vec![matching],
        exclusions: vec![],
    }
}

fn degree_ten_parts(nv_expected: usize) -> (AnsatzBuilderParts, MPoly, MPoly) {
    // shared construction for the two degree-10 candidates: free quadratic
    // p1 = 1 + a z + b z^2 and its two rotation transforms
    let nv = nv_expected;
    let a_var = MPoly::var(nv, 2);
    let b_var = MPoly::var(nv, 3);
    let p1 = ZPoly { coeffs: vec![MPoly::one(nv), a_var.clone(), b_var.clone()] };
    // p2 = (1+3x)^2 p1((x-1)/(3x+1)), p3 = (1-3x)^2 p1((x+1)/(1-3x))
    let p2 = zpoly_moebius(&p1, 1, -1, 3, 1);
    let p3 = zpoly_moebius(&p1, 1, 1, -3, 1);
    (AnsatzBuilderParts { p1, p2, p3 }, a_var, b_var)
}

struct AnsatzBuilderParts {
    p1: ZPoly,
    p2: ZPoly,
    p3: ZPoly,
}

/// Substitutes `z -> (az + b)/(cz + d)` into a ZPoly and clears with the
/// formal degree.
fn zpoly_moebius(p: &ZPoly, a: i64, b: i64, c: i64, d: i64) -> ZPoly {
    let nv = p.nvars();
    let n = p.degree();
    let lo = ZPoly::from_ints(nv, &[b, a]);
    let hi = ZPoly::from_ints(nv, &[d, c]);
    let mut acc = ZPoly::zero(nv);
    for (i, coeff) in p.coeffs.iter().enumerate() {
        let term = lo.pow(i as u32).mul(&hi.pow((n - i) as u32)).scale(coeff);
        acc = acc.add(&term);
    }
    acc
}

/// The valid degree-10 candidate: diagonal fiber assignment
/// `B x p1^4 - (1-x)(1+3x) p2^4 = C (1+x)(1-3x) p3^4` over Q(sqrt(-2)).
pub fn degree_ten_problem() -> CoverProblem {
    let nv = 4; // B, C, a, b
    let (parts, _a, _b) = degree_ten_parts(nv);
    let b_var = MPoly::var(nv, 0);
    let c_var = MPoly::var(nv, 1);
    let num = ZPoly::from_ints(nv, &[0, 1]).mul(&parts.p1.pow(4)).scale(&b_var);
    let mid = ZPoly::from_ints(nv, &[1, -1])
        .mul(&ZPoly::from_ints(nv, &[1, 3]))
        .mul(&parts.p2.pow(4));
    let den = ZPoly::from_ints(nv, &[1, 1])
        .mul(&ZPoly::from_ints(nv, &[1, -3]))
        .mul(&parts.p3.pow(4))
        .scale(&c_var);
    let matching = num.sub(&mid).sub(&den);
    CoverProblem {
        vars: vec!["B".into(), "C".into(), "a".into(), "b".into()],
        field: FieldSpec::Quadratic(-2),
        ansatz_num: num,
        ansatz_den: den,
        constraints: vec![matching],
        exclusions: vec![],
    }
}

/// The rejected degree-10 candidate: adjacent fiber assignment
/// `B x (1-3x) p1^4 - (1+x)(1+3x) p3^4 = C (1-x) p2^4`. No valid solution
/// exists (the matching forces the map to collapse).
pub fn degree_ten_rejected_problem() -> CoverProblem {
    let nv = 4;
    let (parts, _a, _b) = degree_ten_parts(nv);
    let b_var = MPoly::var(nv, 0);
    let c_var = MPoly::var(nv, 1);
    let num = ZPoly::from_ints(nv, &[0, 1])
        .mul(&ZPoly::from_ints(nv, &[1, -3]))
        .mul(&parts.p1.pow(4))
        .scale(&b_var);
    let den = ZPoly::from_ints(nv, &[1, 1])
        .mul(&ZPoly::from_ints(nv, &[1, 3]))
        .mul(&parts.p3.pow(4));
    let one_fiber = ZPoly::from_ints(nv, &[1, -1]).mul(&parts.p2.pow(4)).scale(&c_var);
    let matching = num.sub(&den).sub(&one_fiber);
    CoverProblem {
        vars: vec!["B".into(), "C".into(), "a".into(), "b".into()],
        field: FieldSpec::Quadratic(-2),
        ansatz_num: num,
        ansatz_den: den,
        constraints: vec![matching],
        exclusions: vec![],
    }
}

/// Degree-3 scaling cover `A x (1 - x^2) / (1 - 9 x^2)` with a triple point
/// over 1: `A x (1-x^2) - (1-9x^2) = M (x - r)^3` over Q(sqrt(-3)).
pub fn rotation_cubic_problem() -> CoverProblem {
    let nv = 3; // A, M, r
    let a_var = MPoly::var(nv, 0);
    let m_var = MPoly::var(nv, 1);
    let r_var = MPoly::var(nv, 2);
    let num = ZPoly::from_ints(nv, &[0, 1, 0, -1]).scale(&a_var);
    let den = ZPoly::from_ints(nv, &[1, 0, -9]);
    let triple = ZPoly { coeffs: vec![-&r_var, MPoly::one(nv)] }.pow(3).scale(&m_var);
    let matching = num.sub(&den).sub(&triple);
    CoverProblem {
        vars: vec!["A".into(), "M".into(), "r".into()],
        field: FieldSpec::Quadratic(-3),
        ansatz_num: num,
        ansatz_den: den,
        constraints: vec![matching],
        exclusions: vec![],
    }
}

/// Degree-3 quotient by an order-3 rotation with unknown cube root of unity:
/// `c x (1-x) - (1 + g x)^3 = -K (1 + g^2 x)^3` with `g^2 + g + 1 = 0`,
/// over Q(sqrt(-3)). Settles the normalisation of the quotient map.
pub fn quotient_cubic_problem() -> CoverProblem {
    let nv = 3; // c, K, g
    let c_var = MPoly::var(nv, 0);
    let k_var = MPoly::var(nv, 1);
    let g_var = MPoly::var(nv, 2);
    let num = ZPoly::from_ints(nv, &[0, 1, -1]).scale(&c_var);
    let den = ZPoly { coeffs: vec![MPoly::one(nv), g_var.clone()] }.pow(3);
    let g2 = &g_var * &g_var;
    let other = ZPoly { coeffs: vec![MPoly::one(nv), g2.clone()] }.pow(3).scale(&k_var);
    let matching = num.sub(&den).add(&other);
    let unity = ZPoly::constant(&(&g2 + &g_var) + &MPoly::one(nv));
    CoverProblem {
        vars: vec!["c".into(), "K".into(), "g".into()],
        field: FieldSpec::Quadratic(-3),
        ansatz_num: num,
        ansatz_den: den,
        constraints: vec![matching, unity],
        exclusions: vec![],
    }
}

/// Hexagonal double-pair relation `A x (1-x^2)/(1-9x^2)` is the special case
/// solved by [`rotation_cubic_problem`]; the hexagonal rotation itself is
/// exposed for orbit declarations elsewhere.
pub fn hexagonal_symmetry() -> MoebiusMap {
    hexagonal_rotation()
}
