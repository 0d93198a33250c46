//! The bundled corpus of transformation identities.
//!
//! Quadratic through degree-12 transformations between hypergeometric
//! functions attached to commensurable triangle configurations, plus the
//! classical quadratic (Kummer), cubic (Goursat) and degree-10 (Vidunas)
//! entries. Each builder fixes concrete parameter values and a default
//! check; names are stable identifiers used by the file corpus and tests.

use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RationalFunction;
use crate::algebra::rational::{rat, Rational};
use crate::algebra::QuadExt;
use crate::covers::FieldSpec;
use crate::hypergeom::HGParams;

use super::{CheckMode, IdentitySide, IdentitySpec, Prefactor};

fn params(a: Rational, b: Rational, c: Rational) -> HGParams {
    HGParams::from_rationals(a, b, c).expect("valid parameters")
}

fn side(prefactors: Vec<Prefactor>, hg: HGParams, num: Poly, den: Poly) -> IdentitySide {
    IdentitySide { prefactors, hg, argument: RationalFunction::new(num, den) }
}

fn pf(base: Poly, exponent: Rational) -> Prefactor {
    Prefactor { base, exponent }
}

fn default_points() -> Vec<Rational> {
    vec![rat(1, 16), rat(1, 10), rat(1, 8), rat(3, 32), rat(1, 12)]
}

fn small_points() -> Vec<Rational> {
    vec![rat(1, 64), rat(1, 48), rat(1, 40), rat(1, 36), rat(1, 32)]
}

fn numeric_check(points: Vec<Rational>) -> CheckMode {
    CheckMode::Numeric { points, precision_bits: 256, tolerance: "1e-30".into() }
}

/// Kummer's quadratic transformation at (a, b) = (1/3, 1/5):
/// `2F1(2a, 2b; a+b+1/2; z) = 2F1(a, b; a+b+1/2; 4z(1-z))`.
pub fn kummer() -> IdentitySpec {
    let a = rat(1, 3);
    let b = rat(1, 5);
    let c = &a + &b + rat(1, 2);
    IdentitySpec {
        name: "kummer".into(),
        field: FieldSpec::Rationals,
        lhs: side(
            vec![],
            params(rat(2, 3), rat(2, 5), c.clone()),
            Poly::from_ints(&[0, 1]),
            Poly::one(),
        ),
        rhs: side(
            vec![],
            params(a, b, c),
            Poly::from_ints(&[0, 4, -4]),
            Poly::one(),
        ),
        check: CheckMode::Series { order: 30 },
    }
}

fn quintic_argument() -> (Poly, Poly) {
    // 64 z (1-z-z^2)^5 / ((1-z^2)(1+4z-z^2)^5)
    let num = &Poly::from_ints(&[0, 64]) * &Poly::from_ints(&[1, -1, -1]).pow(5);
    let den = &Poly::from_ints(&[1, 0, -1]) * &Poly::from_ints(&[1, 4, -1]).pow(5);
    (num, den)
}

/// Degree-12 quintic-orbit transformation, first weight:
/// `2F1(1/20, 1/4; 4/5; S(z)) = (1-z^2)^(1/20) (1+4z-z^2)^(1/4)
///  2F1(3/10, 2/5; 9/10; z^2)`.
pub fn quintic_a() -> IdentitySpec {
    let (num, den) = quintic_argument();
    IdentitySpec {
        name: "quintic_a".into(),
        field: FieldSpec::Rationals,
        lhs: side(vec![], params(rat(1, 20), rat(1, 4), rat(4, 5)), num, den),
        rhs: side(
            vec![
                pf(Poly::from_ints(&[1, 0, -1]), rat(1, 20)),
                pf(Poly::from_ints(&[1, 4, -1]), rat(1, 4)),
            ],
            params(rat(3, 10), rat(2, 5), rat(9, 10)),
            Poly::from_ints(&[0, 0, 1]),
            Poly::one(),
        ),
        check: numeric_check(default_points()),
    }
}

/// Degree-12 quintic-orbit transformation, second weight:
/// `(1-z-z^2) 2F1(1/4, 9/20; 6/5; S(z)) = (1-z^2)^(1/4) (1+4z-z^2)^(5/4)
///  2F1(2/5, 1/2; 11/10; z^2)`.
pub fn quintic_b() -> IdentitySpec {
    let (num, den) = quintic_argument();
    IdentitySpec {
        name: "quintic_b".into(),
        field: FieldSpec::Rationals,
        lhs: side(
            vec![pf(Poly::from_ints(&[1, -1, -1]), Rational::from_integer(1.into()))],
            params(rat(1, 4), rat(9, 20), rat(6, 5)),
            num,
            den,
        ),
        rhs: side(
            vec![
                pf(Poly::from_ints(&[1, 0, -1]), rat(1, 4)),
                pf(Poly::from_ints(&[1, 4, -1]), rat(5, 4)),
            ],
            params(rat(2, 5), rat(1, 2), rat(11, 10)),
            Poly::from_ints(&[0, 0, 1]),
            Poly::one(),
        ),
        check: numeric_check(default_points()),
    }
}

fn alpha() -> QuadExt {
    QuadExt::sqrt_d(-3).unwrap()
}

fn beta() -> QuadExt {
    QuadExt::sqrt_d(-2).unwrap()
}

fn sextic_lhs_argument() -> (Poly, Poly) {
    // 12 a z (1-z^2)(1-9z^2) / (1+a z)^6 with a = sqrt(-3)
    let twelve_alpha = &QuadExt::from_i64(12) * &alpha();
    let num = &(&Poly::new(vec![QuadExt::zero(), twelve_alpha])
        * &Poly::from_ints(&[1, 0, -1]))
        * &Poly::from_ints(&[1, 0, -9]);
    let den = Poly::new(vec![QuadExt::one(), alpha()]).pow(6);
    (num, den)
}

fn sextic_rhs_argument() -> (Poly, Poly, Poly, Poly) {
    // R(z) = -4(1+b)^4 z (1+(-7+4b)z^2/3)^4 / ((1+z)(1-3z) q(z)^4),
    // q = 1 + (4+2b) z - (1+2b) z^2, b = sqrt(-2)
    let b = beta();
    let neg4_1pb4 = {
        let w = &QuadExt::one() + &b;
        &QuadExt::from_i64(-4) * &w.powi(4).unwrap()
    };
    let even_quad = Poly::new(vec![
        QuadExt::one(),
        QuadExt::zero(),
        &(&QuadExt::from_i64(-7) + &(&QuadExt::from_i64(4) * &b))
            * &QuadExt::from_rational(rat(1, 3)),
    ]);
    let q = Poly::new(vec![
        QuadExt::one(),
        &QuadExt::from_i64(4) + &(&QuadExt::from_i64(2) * &b),
        -&(&QuadExt::one() + &(&QuadExt::from_i64(2) * &b)),
    ]);
    let num = &Poly::new(vec![QuadExt::zero(), neg4_1pb4]) * &even_quad.pow(4);
    let den = &(&Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[1, -3])) * &q.pow(4);
    (num, den, q, even_quad)
}

/// Degree-6-orbit transformation over two quadratic fields, lower weight.
pub fn sextic_a() -> IdentitySpec {
    let (lnum, lden) = sextic_lhs_argument();
    let (rnum, rden, q, _) = sextic_rhs_argument();
    IdentitySpec {
        name: "sextic_a".into(),
        field: FieldSpec::Quadratic(-3),
        lhs: side(
            vec![
                pf(Poly::from_ints(&[1, 1]), rat(1, 8)),
                pf(Poly::from_ints(&[1, -3]), rat(1, 8)),
                pf(Poly::new(vec![QuadExt::one(), alpha()]), rat(-5, 4)),
            ],
            params(rat(5, 24), rat(3, 8), rat(3, 4)),
            lnum,
            lden,
        ),
        rhs: side(
            vec![pf(q, rat(-1, 2))],
            params(rat(1, 8), rat(3, 8), rat(3, 4)),
            rnum,
            rden,
        ),
        check: numeric_check(small_points()),
    }
}

/// Degree-6-orbit transformation over two quadratic fields, higher weight.
pub fn sextic_b() -> IdentitySpec {
    let (lnum, lden) = sextic_lhs_argument();
    let (rnum, rden, q, even_quad) = sextic_rhs_argument();
    IdentitySpec {
        name: "sextic_b".into(),
        field: FieldSpec::Quadratic(-3),
        lhs: side(
            vec![
                pf(Poly::from_ints(&[1, -1]), rat(1, 4)),
                pf(Poly::from_ints(&[1, 1]), rat(5, 8)),
                pf(Poly::from_ints(&[1, -3]), rat(1, 4)),
                pf(Poly::from_ints(&[1, 3]), rat(5, 8)),
                pf(Poly::new(vec![QuadExt::one(), alpha()]), rat(-11, 4)),
            ],
            params(rat(11, 24), rat(5, 8), rat(5, 4)),
            lnum,
            lden,
        ),
        rhs: side(
            vec![
                pf(even_quad, Rational::from_integer(1.into())),
                pf(q, rat(-3, 2)),
            ],
            params(rat(3, 8), rat(5, 8), rat(5, 4)),
            rnum,
            rden,
        ),
        check: numeric_check(small_points()),
    }
}

/// Goursat's cubic entry, pinned at `a = 1/5`:
/// `2F1(a, a+1/3; 1/2; z(9-8z)^2/(4z-3)^3)
///  = (1-4z/3)^(3a) 2F1(3a, 1/3-a; 1/2; z)`.
pub fn goursat96() -> IdentitySpec {
    let a = rat(1, 5);
    let num = &Poly::from_ints(&[0, 1]) * &Poly::from_ints(&[9, -8]).pow(2);
    let den = Poly::from_ints(&[-3, 4]).pow(3);
    IdentitySpec {
        name: "goursat96".into(),
        field: FieldSpec::Rationals,
        lhs: side(
            vec![],
            params(a.clone(), &a + rat(1, 3), rat(1, 2)),
            num,
            den,
        ),
        rhs: side(
            vec![pf(
                Poly::new(vec![QuadExt::one(), QuadExt::from_rational(rat(-4, 3))]),
                rat(3, 1) * &a,
            )],
            params(rat(3, 1) * &a, rat(1, 3) - &a, rat(1, 2)),
            Poly::from_ints(&[0, 1]),
            Poly::one(),
        ),
        check: numeric_check(default_points()),
    }
}

/// Degree-10 transformation over Q(sqrt(-2)):
/// `2F1(5/24, 13/24; 7/8; z) = R(z) 2F1(1/48, 17/48; 7/8; S(z))`.
pub fn vidunas32() -> IdentitySpec {
    let b = beta();
    let i64q = QuadExt::from_i64;
    // S(z) = 4 z (z-1) (8 b z + 7 - 4 b)^8 / (cubic)^3
    let lin = Poly::new(vec![&i64q(7) - &(&i64q(4) * &b), &i64q(8) * &b]);
    let snum = &(&Poly::from_ints(&[0, 4]) * &Poly::from_ints(&[-1, 1])) * &lin.pow(8);
    let cubic = Poly::new(vec![
        &(&i64q(56) * &b) - &i64q(17),
        &(&i64q(912) * &b) + &i64q(3264),
        &(&i64q(-3072) * &b) - &i64q(3264),
        &i64q(2048) * &b,
    ]);
    let sden = cubic.pow(3);
    // R(z)^(-16) base: 1 + 16/9 (4-17b) z - 64/243 (167-136b) z^2
    //                    + 2048/6561 (112-17b) z^3
    let c1 = &(&i64q(4) - &(&i64q(17) * &b)) * &QuadExt::from_rational(rat(16, 9));
    let c2 = &(&i64q(167) - &(&i64q(136) * &b)) * &QuadExt::from_rational(rat(-64, 243));
    let c3 = &(&i64q(112) - &(&i64q(17) * &b)) * &QuadExt::from_rational(rat(2048, 6561));
    let rbase = Poly::new(vec![QuadExt::one(), c1, c2, c3]);
    IdentitySpec {
        name: "vidunas32".into(),
        field: FieldSpec::Quadratic(-2),
        lhs: side(
            vec![],
            params(rat(5, 24), rat(13, 24), rat(7, 8)),
            Poly::from_ints(&[0, 1]),
            Poly::one(),
        ),
        rhs: side(
            vec![pf(rbase, rat(-1, 16))],
            params(rat(1, 48), rat(17, 48), rat(7, 8)),
            snum,
            sden,
        ),
        check: numeric_check(default_points()),
    }
}

/// The quadratic-argument family member at `(a, b)`:
/// `(1+z)^(2a+2b) 2F1(a+b, a+1/4; b+3/4; z^2)
///  = 2F1(a+b, b+1/4; 2b+1/2; 4z/(1+z)^2)`, certified against the shared
/// second-order equation.
pub fn quad_pair(name: &str, a: Rational, b: Rational) -> IdentitySpec {
    let (c2, c1, c0) = quad_pair_ode(&a, &b);
    IdentitySpec {
        name: name.into(),
        field: FieldSpec::Rationals,
        lhs: side(
            vec![pf(Poly::from_ints(&[1, 1]), rat(2, 1) * (&a + &b))],
            params(&a + &b, &a + rat(1, 4), &b + rat(3, 4)),
            Poly::from_ints(&[0, 0, 1]),
            Poly::one(),
        ),
        rhs: side(
            vec![],
            params(&a + &b, &b + rat(1, 4), rat(2, 1) * &b + rat(1, 2)),
            Poly::from_ints(&[0, 4]),
            Poly::from_ints(&[1, 2, 1]),
        ),
        check: CheckMode::Ode { order: 30, c2, c1, c0 },
    }
}

/// The shared ODE of the quadratic-argument family:
/// `2z(1-z)(1+z)^2 F'' - (1+z)((3-4b)z^2 + 8(a+b)z - 4b - 1) F'
///  - 2(a+b)(1+4b)(1-z) F = 0`.
pub fn quad_pair_ode(a: &Rational, b: &Rational) -> (Poly, Poly, Poly) {
    let qp = |r: Rational| QuadExt::from_rational(r);
    // 2z(1-z)(1+z)^2
    let c2 = &(&Poly::from_ints(&[0, 2]) * &Poly::from_ints(&[1, -1]))
        * &Poly::from_ints(&[1, 2, 1]);
    // -(1+z)((3-4b)z^2 + 8(a+b)z - (4b+1))
    let inner = Poly::new(vec![
        qp(-(rat(4, 1) * b + rat(1, 1))),
        qp(rat(8, 1) * (a + b)),
        qp(rat(3, 1) - rat(4, 1) * b),
    ]);
    let c1 = -&(&Poly::from_ints(&[1, 1]) * &inner);
    // -2(a+b)(1+4b)(1-z)
    let k = qp(rat(-2, 1) * (a + b) * (rat(1, 1) + rat(4, 1) * b));
    let c0 = Poly::from_ints(&[1, -1]).scale(&k);
    (c2, c1, c0)
}

pub fn quad_a() -> IdentitySpec {
    quad_pair("quad_a", rat(1, 7), rat(1, 11))
}

pub fn quad_b() -> IdentitySpec {
    quad_pair("quad_b", rat(1, 8), rat(1, 12))
}

/// The arithmetic member of the quadratic family (orders (2,6,6)/(4,4,3)).
pub fn quad_c() -> IdentitySpec {
    quad_pair("quad_c", rat(1, 12), rat(1, 6))
}

/// The cubic-argument family member at `a`:
/// `(1+z)^(a+1/6) (1-z/3)^(3a+1/2) 2F1(2a+1/3, a+1/3; 3a+1; z^2)
///  = 2F1(a+1/6, a+1/2; 2a+1; 16z^3/((1+z)(3-z)^3))`.
pub fn cubic_pair(name: &str, a: Rational) -> IdentitySpec {
    let num = Poly::from_ints(&[0, 0, 0, 16]);
    let den = &Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[3, -1]).pow(3);
    IdentitySpec {
        name: name.into(),
        field: FieldSpec::Rationals,
        lhs: side(
            vec![
                pf(Poly::from_ints(&[1, 1]), &a + rat(1, 6)),
                pf(
                    Poly::new(vec![QuadExt::one(), QuadExt::from_rational(rat(-1, 3))]),
                    rat(3, 1) * &a + rat(1, 2),
                ),
            ],
            params(rat(2, 1) * &a + rat(1, 3), &a + rat(1, 3), rat(3, 1) * &a + rat(1, 1)),
            Poly::from_ints(&[0, 0, 1]),
            Poly::one(),
        ),
        rhs: side(
            vec![],
            params(&a + rat(1, 6), &a + rat(1, 2), rat(2, 1) * &a + rat(1, 1)),
            num,
            den,
        ),
        check: CheckMode::Series { order: 30 },
    }
}

/// Shimura case of the cubic family (n = 2).
pub fn cubic_n2() -> IdentitySpec {
    cubic_pair("cubic_n2", rat(-1, 24))
}

pub fn cubic_generic() -> IdentitySpec {
    cubic_pair("cubic_generic", rat(1, 9))
}

/// The mixed degree-3/4 family member at `a = 1/24`:
/// `(1-z)^(9a+3/4) 2F1(4a+1/3, 2a+1/3; 6a+1; -27z^2(1-z)/(1-9z))
///  = (1-9z)^(a+1/12) 2F1(3a+1/4, a+1/4; 4a+1; -64z^3/((1-z)^3(1-9z)))`.
pub fn mixed34_a() -> IdentitySpec {
    let a = rat(1, 24);
    let lnum = &Poly::from_ints(&[0, 0, -27]) * &Poly::from_ints(&[1, -1]);
    let lden = Poly::from_ints(&[1, -9]);
    let rnum = Poly::from_ints(&[0, 0, 0, -64]);
    let rden = &Poly::from_ints(&[1, -1]).pow(3) * &Poly::from_ints(&[1, -9]);
    IdentitySpec {
        name: "mixed34_a".into(),
        field: FieldSpec::Rationals,
        lhs: side(
            vec![pf(Poly::from_ints(&[1, -1]), rat(9, 1) * &a + rat(3, 4))],
            params(rat(4, 1) * &a + rat(1, 3), rat(2, 1) * &a + rat(1, 3), rat(6, 1) * &a + rat(1, 1)),
            lnum,
            lden,
        ),
        rhs: side(
            vec![pf(Poly::from_ints(&[1, -9]), &a + rat(1, 12))],
            params(rat(3, 1) * &a + rat(1, 4), &a + rat(1, 4), rat(4, 1) * &a + rat(1, 1)),
            rnum,
            rden,
        ),
        check: CheckMode::Series { order: 30 },
    }
}

/// Every bundled identity, in corpus order.
pub fn all() -> Vec<IdentitySpec> {
    vec![
        kummer(),
        quintic_a(),
        quintic_b(),
        sextic_a(),
        sextic_b(),
        goursat96(),
        vidunas32(),
        quad_a(),
        quad_b(),
        quad_c(),
        cubic_n2(),
        cubic_generic(),
        mixed34_a(),
    ]
}
