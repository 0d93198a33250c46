//! Exact root extraction for univariate polynomials over Q and Q(√d).
//!
//! Numerics only steer the search: complex roots are isolated by the
//! Durand–Kerner iteration at high precision, candidate rational values and
//! monic quadratic factors are reconstructed by continued fractions, and
//! every candidate is verified by exact division before being reported.
//! Roots outside the declared working field are discarded with a notice.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::complexval::ComplexApprox;
use crate::algebra::poly::Poly;
use crate::algebra::rational::{squarefree_decompose_rational, Rational};
use crate::algebra::{BigFloat, QuadExt};

/// Working field for cover solving and root extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Quadratic(i64),
}

impl FieldSpec {
    pub fn admits(&self, v: &QuadExt) -> bool {
        match self {
            FieldSpec::Rationals => v.is_rational(),
            FieldSpec::Quadratic(d) => v.is_rational() || v.field_d() == *d,
        }
    }
}

/// Roots found in the working field plus notices about discarded factors.
#[derive(Clone, Debug, Default)]
pub struct RootReport {
    pub roots: Vec<QuadExt>,
    /// Human-readable notes about roots outside the field or unresolved
    /// factors.
    pub notices: Vec<String>,
}

/// All roots of `p` (QuadExt coefficients) inside `field`, without
/// multiplicity. Irrational coefficients are handled through the norm form.
pub fn roots_in_field(p: &Poly, field: FieldSpec) -> RootReport {
    if p.is_zero() || p.degree() == 0 {
        return RootReport::default();
    }
    if p.is_rational() {
        return rational_poly_roots(p, field);
    }
    // p has coefficients in Q(sqrt d): candidates are roots of the rational
    // norm polynomial p * conj(p) that also kill p itself
    let norm = p * &p.conjugate();
    debug_assert!(norm.is_rational());
    let mut rep = rational_poly_roots(&norm, field);
    rep.roots.retain(|r| p.eval(r).is_zero());
    rep
}

/// Roots-with-multiplicity plus leftover squarefree blocks that have no root
/// in the field.
#[derive(Clone, Debug, Default)]
pub struct FactorReport {
    pub roots: Vec<(QuadExt, u32)>,
    /// `(squarefree factor, multiplicity)` blocks with no root in the field.
    pub blocks: Vec<(Poly, u32)>,
    pub notices: Vec<String>,
}

/// Factors `p` over the working field as far as linear factors go; what
/// remains is reported as squarefree blocks with multiplicity.
pub fn factor_in_field(p: &Poly, field: FieldSpec) -> FactorReport {
    let mut out = FactorReport::default();
    if p.is_zero() || p.degree() == 0 {
        return out;
    }
    let rep = roots_in_field(p, field);
    out.notices = rep.notices;
    let mut rest = p.monic();
    for r in rep.roots {
        let m = rest.root_multiplicity(&r);
        debug_assert!(m > 0);
        let lin = Poly::new(vec![-r.clone(), QuadExt::one()]);
        for _ in 0..m {
            rest = rest.div_exact(&lin).expect("verified root");
        }
        out.roots.push((r, m));
    }
    if rest.degree() > 0 {
        out.blocks = rest.squarefree_decomposition();
    }
    out
}

fn rational_poly_roots(p: &Poly, field: FieldSpec) -> RootReport {
    let mut rep = RootReport::default();
    let sf = p.squarefree_part();
    if sf.degree() == 0 {
        return rep;
    }
    // clear to integer coefficients
    let rats: Vec<Rational> = sf
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational poly").clone())
        .collect();
    let mut den = BigInt::from(1);
    for r in &rats {
        den = num_integer::lcm(den, r.denom().clone());
    }
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| r.numer() * (&den / r.denom()))
        .collect();

    let max_bits = ints.iter().map(|c| c.bits()).max().unwrap_or(1);
    let prec: u32 = (256 + 4 * max_bits as u32 + 16 * sf.degree() as u32).min(4096);
    let roots = durand_kerner(&ints, prec);
    let tol_mag = -(prec as i64) / 3;
    let height = prec as i64 / 3;

    let verify_rational = |cand: &Rational| -> bool {
        sf.eval(&QuadExt::from_rational(cand.clone())).is_zero()
    };

    let mut seen: Vec<QuadExt> = vec![];
    let mut push = |rep: &mut RootReport, v: QuadExt| {
        if !seen.contains(&v) {
            seen.push(v.clone());
            rep.roots.push(v);
        }
    };

    // single real roots
    for r in &roots {
        if r.im.mag2() < tol_mag {
            if let Some(cand) = reconstruct(&r.re, height, tol_mag) {
                if verify_rational(&cand) {
                    push(&mut rep, QuadExt::from_rational(cand));
                }
            }
        }
    }
    // quadratic pairs
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let s = roots[i].add(&roots[j]);
            let t = roots[i].mul(&roots[j]);
            if s.im.mag2() >= tol_mag || t.im.mag2() >= tol_mag {
                continue;
            }
            let (Some(sr), Some(tr)) = (
                reconstruct(&s.re, height, tol_mag),
                reconstruct(&t.re, height, tol_mag),
            ) else {
                continue;
            };
            // x^2 - sr x + tr must divide exactly
            let quad = Poly::new(vec![
                QuadExt::from_rational(tr.clone()),
                QuadExt::from_rational(-sr.clone()),
                QuadExt::one(),
            ]);
            if sf.div_exact(&quad).is_none() {
                continue;
            }
            let disc = &sr * &sr - Rational::from_integer(4.into()) * &tr;
            if disc.is_zero() {
                continue; // double rational root, found above
            }
            let Some((d, m)) = squarefree_decompose_rational(&disc) else {
                rep.notices
                    .push(format!("unresolved discriminant {disc} of factor {quad}"));
                continue;
            };
            if d == 1 {
                continue; // rational pair, found above
            }
            let keep = match field {
                FieldSpec::Rationals => false,
                FieldSpec::Quadratic(fd) => fd == d,
            };
            if !keep {
                rep.notices.push(format!(
                    "discarded conjugate root pair of x^2-({sr})x+({tr}) in Q(sqrt({d}))"
                ));
                continue;
            }
            let half = Rational::new(BigInt::from(1), BigInt::from(2));
            let x = &sr * &half;
            let y = &m * &half;
            for yy in [y.clone(), -y] {
                let v = QuadExt::new(d, x.clone(), yy).expect("squarefree d");
                if sf.eval(&v).is_zero() {
                    push(&mut rep, v);
                }
            }
        }
    }
    rep
}

/// Durand–Kerner iteration on integer coefficients; returns approximations
/// to all complex roots of a squarefree polynomial.
fn durand_kerner(ints: &[BigInt], prec: u32) -> Vec<ComplexApprox> {
    let n = ints.len() - 1;
    let coeffs: Vec<ComplexApprox> = ints
        .iter()
        .map(|c| ComplexApprox::from_real(BigFloat::from_bigint(c.clone(), prec)))
        .collect();
    let lead = coeffs.last().unwrap().clone();
    // root bound 1 + max|a_i / a_n|
    let mut bound = BigFloat::from_i64(1, prec);
    for c in &coeffs[..n] {
        let q = c.abs().div(&lead.abs());
        if q.cmp_value(&bound).is_gt() {
            bound = q;
        }
    }
    bound = bound.add(&BigFloat::from_i64(1, prec));

    let eval = |z: &ComplexApprox| -> ComplexApprox {
        let mut acc = ComplexApprox::zero(prec);
        for c in coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    };

    // spiral of initial guesses, scaled to the root bound
    let seed = ComplexApprox {
        re: BigFloat::from_rational(&Rational::new(2.into(), 5.into()), prec),
        im: BigFloat::from_rational(&Rational::new(9.into(), 10.into()), prec),
    };
    let mut z: Vec<ComplexApprox> = Vec::with_capacity(n);
    let mut cur = seed.clone();
    for _ in 0..n {
        z.push(cur.scale(&bound));
        cur = cur.mul(&seed);
    }

    let stop = -(prec as i64) * 2 / 3;
    for _ in 0..600 {
        let mut worst = i64::MIN;
        for k in 0..n {
            let mut denom = lead.clone();
            for j in 0..n {
                if j != k {
                    denom = denom.mul(&z[k].sub(&z[j]));
                }
            }
            if denom.is_zero() {
                // perturb coincident guesses
                z[k] = z[k].add(&ComplexApprox {
                    re: BigFloat::from_i64(1, prec).ldexp(-17),
                    im: BigFloat::from_i64(1, prec).ldexp(-19),
                });
                worst = worst.max(0);
                continue;
            }
            let delta = eval(&z[k]).div(&denom);
            z[k] = z[k].sub(&delta);
            let rel = delta.abs().mag2().saturating_sub(z[k].abs().mag2().max(0));
            worst = worst.max(rel);
        }
        if worst < stop {
            break;
        }
    }
    z
}

/// Continued-fraction reconstruction of a rational from a dyadic
/// approximation: the smallest-denominator rational within `2^tol_mag`.
fn reconstruct(x: &BigFloat, height: i64, tol_mag: i64) -> Option<Rational> {
    let target = x.to_rational();
    let tol_check = |cand: &Rational| -> bool {
        let diff = (&target - cand).abs();
        if diff.is_zero() {
            return true;
        }
        // |diff| < 2^tol_mag
        let bits = diff.numer().bits() as i64 - diff.denom().bits() as i64;
        bits < tol_mag
    };
    // continued fraction of target
    let mut a = target.numer().clone();
    let mut b = target.denom().clone();
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::from(0));
    let (mut p1, mut q1) = (target.floor().to_integer(), BigInt::from(1));
    {
        let f = target.floor().to_integer();
        let r = &a - &f * &b;
        a = b;
        b = r;
        if tol_check(&Rational::new(p1.clone(), q1.clone())) {
            return Some(Rational::new(p1, q1));
        }
    }
    for _ in 0..500 {
        if b.is_zero() {
            break;
        }
        let f = num_integer::div_floor(a.clone(), b.clone());
        let r = &a - &f * &b;
        let p2 = &f * &p1 + &p0;
        let q2 = &f * &q1 + &q0;
        if q2.bits() as i64 > height {
            return None;
        }
        let cand = Rational::new(p2.clone(), q2.clone());
        if tol_check(&cand) {
            return Some(cand);
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        a = b;
        b = r;
    }
    None
}

/// Gcd of univariate rational-coefficient polynomials through the
/// integer primitive remainder sequence (controlled coefficient growth).
pub fn gcd_rational(a: &Poly, b: &Poly) -> Poly {
    use super::intpoly::{clear_to_int, int_gcd, int_to_poly};
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let g = int_gcd(&clear_to_int(a), &clear_to_int(b));
    int_to_poly(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn rational_roots() {
        // (x - 2/3)(x + 5)(x^2 + 1)
        let p = &(&Poly::new(vec![QuadExt::from_rational(rat(-2, 3)), QuadExt::one()])
            * &Poly::from_ints(&[5, 1]))
            * &Poly::from_ints(&[1, 0, 1]);
        let rep = roots_in_field(&p, FieldSpec::Rationals);
        let mut roots = rep.roots.clone();
        roots.sort_by_key(|r| r.rational_part().clone());
        assert_eq!(
            roots,
            vec![QuadExt::from_i64(-5), QuadExt::from_rational(rat(2, 3))]
        );
        // the x^2+1 factor is discarded with a notice over Q
        assert!(!rep.notices.is_empty());
    }

    #[test]
    fn quadratic_field_roots() {
        // x^2 + 2 has roots ±sqrt(-2) in Q(sqrt(-2)) only
        let p = Poly::from_ints(&[2, 0, 1]);
        let rep = roots_in_field(&p, FieldSpec::Quadratic(-2));
        assert_eq!(rep.roots.len(), 2);
        for r in &rep.roots {
            assert!(p.eval(r).is_zero());
        }
        let rep = roots_in_field(&p, FieldSpec::Quadratic(-1));
        assert!(rep.roots.is_empty());
        assert!(!rep.notices.is_empty());

        // golden-ratio style: x^2 + x - 1 over Q(sqrt 5)
        let p = Poly::from_ints(&[-1, 1, 1]);
        let rep = roots_in_field(&p, FieldSpec::Quadratic(5));
        assert_eq!(rep.roots.len(), 2);
        for r in &rep.roots {
            assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn mixed_field_poly_via_norm() {
        // (x - sqrt(-2))(x - 3) has QuadExt coefficients
        let beta = QuadExt::sqrt_d(-2).unwrap();
        let p = &Poly::new(vec![-&beta, QuadExt::one()]) * &Poly::from_ints(&[-3, 1]);
        let rep = roots_in_field(&p, FieldSpec::Quadratic(-2));
        assert!(rep.roots.contains(&beta));
        assert!(rep.roots.contains(&QuadExt::from_i64(3)));
        assert_eq!(rep.roots.len(), 2);
    }

    #[test]
    fn factorisation_with_multiplicity() {
        // 3 (x-1)^2 (x^2+1)^3 over Q
        let p = &Poly::from_ints(&[-1, 1]).pow(2) * &Poly::from_ints(&[1, 0, 1]).pow(3);
        let p = p.scale(&QuadExt::from_i64(3));
        let rep = factor_in_field(&p, FieldSpec::Rationals);
        assert_eq!(rep.roots, vec![(QuadExt::one(), 2)]);
        assert_eq!(rep.blocks.len(), 1);
        assert_eq!(rep.blocks[0].0, Poly::from_ints(&[1, 0, 1]).monic());
        assert_eq!(rep.blocks[0].1, 3);
    }

    #[test]
    fn big_coefficient_roots() {
        // roots 1/9 and large-ish rationals survive reconstruction
        let p = &Poly::new(vec![QuadExt::from_rational(rat(-1, 9)), QuadExt::one()])
            * &Poly::new(vec![QuadExt::from_rational(rat(355, 113)), QuadExt::one()]);
        let rep = roots_in_field(&p, FieldSpec::Rationals);
        assert!(rep.roots.contains(&QuadExt::from_rational(rat(1, 9))));
        assert!(rep.roots.contains(&QuadExt::from_rational(rat(-355, 113))));
    }

    #[test]
    fn gcd_of_rational_polys() {
        let g = Poly::from_ints(&[-1, 0, 1]);
        let a = &g * &Poly::from_ints(&[7, 3, 1]);
        let b = &g * &Poly::from_ints(&[2, 9]);
        assert_eq!(gcd_rational(&a, &b), g.monic());
    }
}
