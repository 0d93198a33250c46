//! Pochhammer symbols, the Gauss hypergeometric series, point evaluation
//! with a rigorous tail bound, and the hypergeometric differential operator.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::complexval::{embed_quadext, ComplexApprox, EmbedBranch};
use crate::algebra::rational::{is_nonpositive_integer, rat, rat_int, Rational};
use crate::algebra::{BigFloat, FracSeries, QuadExt};

#[derive(Debug, Error)]
pub enum HgError {
    #[error("parameter c = {0} is a nonpositive integer")]
    BadParameterC(String),
    #[error("argument lies outside both convergence regions (|z| and |z/(z-1)| >= 9/10)")]
    OutOfDomain,
    #[error("precision must be at least 64 bits")]
    PrecisionTooLow,
}

/// The parameter triple (a, b; c) of a hypergeometric function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGParams {
    pub a: QuadExt,
    pub b: QuadExt,
    pub c: QuadExt,
}

impl HGParams {
    pub fn new(a: QuadExt, b: QuadExt, c: QuadExt) -> Result<Self, HgError> {
        if let Some(cr) = c.as_rational() {
            if is_nonpositive_integer(cr) {
                return Err(HgError::BadParameterC(c.to_string()));
            }
        }
        Ok(HGParams { a, b, c })
    }

    pub fn from_rationals(a: Rational, b: Rational, c: Rational) -> Result<Self, HgError> {
        Self::new(a.into(), b.into(), c.into())
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &QuadExt, n: u32) -> QuadExt {
    let mut acc = QuadExt::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc = &acc * &term;
        term = &term + &QuadExt::one();
    }
    acc
}

/// Exact coefficients of the hypergeometric series up to (excluding) `z^n`.
pub fn hg_coefficients(p: &HGParams, n: u32) -> Vec<QuadExt> {
    let mut v = Vec::with_capacity(n as usize);
    let mut c = QuadExt::one();
    for k in 0..n {
        v.push(c.clone());
        let kq = QuadExt::from_i64(k as i64);
        let num = &(&p.a + &kq) * &(&p.b + &kq);
        let den = &(&p.c + &kq) * &QuadExt::from_i64(k as i64 + 1);
        c = &(&c * &num) / &den;
    }
    v
}

/// The hypergeometric series as a [`FracSeries`], truncated at exponent `n`.
pub fn hg_series(p: &HGParams, n: u32) -> FracSeries {
    FracSeries::from_parts(
        Rational::zero(),
        Rational::from_integer(1.into()),
        hg_coefficients(p, n),
        rat_int(n as i64),
    )
}

/// Residual of the hypergeometric operator applied to a series:
/// `th(th+c-1)F - z(th+a)(th+b)F` with `th = z d/dz`.
pub fn hg_ode_residual(p: &HGParams, f: &FracSeries) -> FracSeries {
    let one = Rational::from_integer(1.into());
    let apply = |f: &FracSeries, shift: &QuadExt| -> FracSeries {
        // (th + shift) F: multiply each term by (exponent + shift)
        let terms = f.terms();
        let mut acc = FracSeries::zero(f.trunc().clone());
        for (e, c) in terms {
            let w = &QuadExt::from_rational(e.clone()) + shift;
            acc = &acc + &FracSeries::monomial(&c * &w, e, f.trunc().clone());
        }
        acc
    };
    let lhs = apply(&apply(f, &QuadExt::zero()), &(&p.c - &QuadExt::one()));
    let rhs = apply(&apply(f, &p.a), &p.b);
    let rhs = rhs.mul_monomial(&QuadExt::one(), &one);
    &lhs - &rhs
}

fn upper_bound_abs(v: &QuadExt) -> Rational {
    // |x + y sqrt(d)| <= |x| + |y| ceil(sqrt(|d|))
    let x = v.rational_part().abs();
    let y = v.surd_part().abs();
    if y.is_zero() {
        return x;
    }
    let d = v.field_d().unsigned_abs();
    let root_ceil = (d as f64).sqrt().ceil() as i64;
    x + y * rat_int(root_ceil)
}

/// Evaluates 2F1(a,b;c;z) to absolute error below `2^-prec`.
///
/// Sums the series with a geometric tail bound. When `|z| >= 9/10` but the
/// Pfaff image `z/(z-1)` is inside that disc, the Pfaff transformation
/// `(1-z)^(-a) 2F1(a, c-b; c; z/(z-1))` is applied first.
pub fn hg_eval(p: &HGParams, z: &ComplexApprox, prec: u32) -> Result<ComplexApprox, HgError> {
    if prec < 64 {
        return Err(HgError::PrecisionTooLow);
    }
    let work = prec + 32;
    let z = lift_precision(z, work);
    let nine_tenth2 = BigFloat::from_rational(&rat(81, 100), work);
    // strictly inside the unit disc, with a whisker so the geometric tail
    // bound still terminates
    let one_minus2 = BigFloat::from_rational(
        &(rat(1, 1) - rat(1, 1024)),
        work,
    );
    let one_minus2 = one_minus2.mul(&one_minus2);
    let inside = |w: &ComplexApprox| w.norm2().cmp_value(&nine_tenth2).is_lt();
    let converges = |w: &ComplexApprox| w.norm2().cmp_value(&one_minus2).is_lt();
    if inside(&z) {
        let v = hg_sum(p, &z, prec, work);
        return Ok(round_precision(&v, prec));
    }
    // Pfaff first when it brings the argument into the fast region
    let one = ComplexApprox::one(work);
    let zm1 = z.sub(&one);
    if zm1.is_zero() {
        return Err(HgError::OutOfDomain);
    }
    let w = z.div(&zm1);
    if !inside(&w) {
        // fall back to direct summation anywhere strictly inside the disc
        if converges(&z) {
            let v = hg_sum(p, &z, prec, work);
            return Ok(round_precision(&v, prec));
        }
        if !converges(&w) {
            return Err(HgError::OutOfDomain);
        }
    }
    let q = HGParams { a: p.a.clone(), b: &p.c - &p.b, c: p.c.clone() };
    let inner = hg_sum(&q, &w, prec, work);
    let a_rat = p
        .a
        .as_rational()
        .cloned()
        .ok_or(HgError::OutOfDomain)?;
    let factor = one
        .sub(&z)
        .pow_rational(&-a_rat)
        .map_err(|_| HgError::OutOfDomain)?;
    Ok(round_precision(&factor.mul(&inner), prec))
}

fn lift_precision(z: &ComplexApprox, prec: u32) -> ComplexApprox {
    ComplexApprox {
        re: BigFloat::from_rational(&z.re.to_rational(), prec),
        im: BigFloat::from_rational(&z.im.to_rational(), prec),
    }
}

fn round_precision(z: &ComplexApprox, prec: u32) -> ComplexApprox {
    ComplexApprox {
        re: BigFloat::from_rational(&z.re.to_rational(), prec),
        im: BigFloat::from_rational(&z.im.to_rational(), prec),
    }
}

fn hg_sum(p: &HGParams, z: &ComplexApprox, prec: u32, work: u32) -> ComplexApprox {
    let branch = EmbedBranch::Principal;
    let ea = embed_quadext(&p.a, branch, work);
    let eb = embed_quadext(&p.b, branch, work);
    let ec = embed_quadext(&p.c, branch, work);
    let abs_z = z.abs();
    // magnitude bounds for the tail estimate
    let ba = upper_bound_abs(&p.a);
    let bb = upper_bound_abs(&p.b);
    let bc = upper_bound_abs(&p.c);

    let mut sum = ComplexApprox::one(work);
    let mut term = ComplexApprox::one(work);
    let tol = BigFloat::from_i64(1, work).ldexp(-(prec as i64) - 2);
    let one = BigFloat::from_i64(1, work);
    let mut n: u32 = 0;
    loop {
        let nn = ComplexApprox::from_real(BigFloat::from_i64(n as i64, work));
        let num = ea.add(&nn).mul(&eb.add(&nn));
        let den = ec
            .add(&nn)
            .mul(&ComplexApprox::from_real(BigFloat::from_i64(n as i64 + 1, work)));
        term = term.mul(&num).div(&den).mul(z);
        sum = sum.add(&term);
        n += 1;
        // ratio bound valid for all later terms: |z| (m+A)/(m-C) * max(1,(m+B)/(m+1))
        let nf = rat_int(n as i64);
        if nf > &bc * rat_int(2) && n > 4 {
            let f1 = (&nf + &ba) / (&nf - &bc);
            let f2 = {
                let r = (&nf + &bb) / (&nf + rat_int(1));
                if r > Rational::from_integer(1.into()) {
                    r
                } else {
                    Rational::from_integer(1.into())
                }
            };
            let rho = abs_z.mul(&BigFloat::from_rational(&(f1 * f2), work));
            if rho.cmp_value(&one).is_lt() {
                // tail <= |term| * rho / (1 - rho)
                let tail = term.abs().mul(&rho).div(&one.sub(&rho));
                if tail.cmp_value(&tol).is_lt() {
                    break;
                }
            }
        }
        assert!(n < 1_000_000, "hypergeometric sum failed to converge");
    }
    sum
}

/// Expands the Pfaff transform `(1-z)^(-a) 2F1(a, c-b; c; z/(z-1))` as an
/// exact series to exponent `n` (used by the degree-1 identity tests).
pub fn pfaff_series(p: &HGParams, n: u32) -> FracSeries {
    use crate::algebra::poly::Poly;
    use crate::algebra::ratfunc::RationalFunction;
    use crate::algebra::series::{compose_outer, series_from_rational};
    let nn = rat_int(n as i64);
    let q = HGParams { a: p.a.clone(), b: &p.c - &p.b, c: p.c.clone() };
    let outer = hg_coefficients(&q, n);
    let map = RationalFunction::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[-1, 1]));
    let inner = series_from_rational(&map, &nn).expect("no pole at 0");
    let body = compose_outer(&outer, &inner, &nn);
    let pref = FracSeries::from_poly(&Poly::from_ints(&[1, -1]), nn)
        .pow_rational(&-p.a.as_rational().expect("rational a").clone())
        .expect("unit base");
    &pref * &body
}

/// Expands the Euler transform `(1-z)^(c-a-b) 2F1(c-a, c-b; c; z)` to `n`.
pub fn euler_series(p: &HGParams, n: u32) -> FracSeries {
    use crate::algebra::poly::Poly;
    let nn = rat_int(n as i64);
    let q = HGParams { a: &p.c - &p.a, b: &p.c - &p.b, c: p.c.clone() };
    let body = hg_series(&q, n);
    let e = &(&p.c - &p.a) - &p.b;
    let pref = FracSeries::from_poly(&Poly::from_ints(&[1, -1]), nn)
        .pow_rational(&e.as_rational().expect("rational exponent").clone())
        .expect("unit base");
    &pref * &body
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn params(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> HGParams {
        HGParams::from_rationals(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1)).unwrap()
    }

    #[test]
    fn pochhammer_values() {
        let half = QuadExt::from_rational(rat(1, 2));
        assert!(pochhammer(&half, 0).is_one());
        // (1)_n = n!
        assert_eq!(pochhammer(&QuadExt::one(), 5), QuadExt::from_i64(120));
        // (1/2)_3 = 1/2 * 3/2 * 5/2 = 15/8
        assert_eq!(pochhammer(&half, 3), QuadExt::from_rational(rat(15, 8)));
    }

    #[test]
    fn series_basics() {
        let p = params((1, 1), (1, 1), (1, 1));
        let s = hg_coefficients(&p, 6);
        assert!(s.iter().all(|c| c.is_one()), "geometric series");
        let p = params((1, 2), (1, 2), (1, 1));
        let s = hg_coefficients(&p, 4);
        assert_eq!(s[0], QuadExt::one());
        assert_eq!(s[1], QuadExt::from_rational(rat(1, 4)));
        assert_eq!(s[2], QuadExt::from_rational(rat(9, 64)));
        assert_eq!(s[3], QuadExt::from_rational(rat(25, 256)));
    }

    #[test]
    fn bad_c_rejected() {
        assert!(HGParams::from_rationals(rat(1, 2), rat(1, 3), rat(0, 1)).is_err());
        assert!(HGParams::from_rationals(rat(1, 2), rat(1, 3), rat(-2, 1)).is_err());
        assert!(HGParams::from_rationals(rat(1, 2), rat(1, 3), rat(-1, 2)).is_ok());
    }

    #[test]
    fn contiguity_ratio() {
        let p = params((3, 7), (-2, 5), (9, 4));
        let cs = hg_coefficients(&p, 20);
        for n in 0..19i64 {
            let nq = QuadExt::from_i64(n);
            let num = &(&p.a + &nq) * &(&p.b + &nq);
            let den = &(&p.c + &nq) * &QuadExt::from_i64(n + 1);
            assert_eq!(&cs[n as usize + 1] * &den, &cs[n as usize] * &num);
        }
    }

    #[test]
    fn ode_residual_vanishes_on_series() {
        let p = params((1, 3), (2, 5), (7, 4));
        let f = hg_series(&p, 25);
        let r = hg_ode_residual(&p, &f);
        // residual known below exponent 25; orders 0..24 must vanish
        for (e, c) in r.terms() {
            assert!(e >= rat_int(24), "unexpected residual at {e}: {c}");
        }
    }

    #[test]
    fn ode_residual_nonzero_for_non_solution() {
        use crate::algebra::poly::Poly;
        let p = params((1, 3), (2, 5), (7, 4));
        let f = FracSeries::from_poly(&Poly::from_ints(&[1, 1]), rat_int(10));
        let r = hg_ode_residual(&p, &f);
        assert!(!r.is_zero());
        // F = 1 with a = 0 is killed by both operators
        let p0 = params((0, 1), (2, 5), (7, 4));
        let f = FracSeries::one(rat_int(10));
        assert!(hg_ode_residual(&p0, &f).is_zero());
    }

    #[test]
    fn eval_at_zero_and_log_value() {
        let p = params((1, 1), (1, 1), (2, 1));
        let z0 = ComplexApprox::zero(256);
        let v = hg_eval(&p, &z0, 256).unwrap();
        assert!(v.sub(&ComplexApprox::one(256)).abs().is_zero());

        // 2F1(1,1;2;1/2) = -ln(1-z)/z at 1/2 = 2 ln 2
        let prec = 256;
        let z = ComplexApprox::from_rational(&rat(1, 2), prec);
        let v = hg_eval(&p, &z, prec).unwrap();
        // ln 2 = 2 atanh(1/3) = 2 sum (1/3)^(2k+1)/(2k+1)
        let work = prec + 32;
        let third = BigFloat::from_rational(&rat(1, 3), work);
        let t2 = third.mul(&third);
        let mut acc = BigFloat::zero(work);
        let mut pw = third.clone();
        for k in 0..((prec as i64) / 3 * 2 + 8) {
            acc = acc.add(&pw.div(&BigFloat::from_i64(2 * k + 1, work)));
            pw = pw.mul(&t2);
        }
        let two_ln2 = acc.mul_i64(4);
        let err = v.re.to_rational() - two_ln2.to_rational();
        assert!(
            err.abs() < rat(1, 1) / Rational::from_integer(num_bigint::BigInt::from(2).pow(250)),
            "2 ln 2 mismatch"
        );
    }

    #[test]
    fn euler_identity_numeric() {
        // Euler at z = 1/3, a=1/5, b=1/7, c=1/2
        let prec = 200;
        let p = params((1, 5), (1, 7), (1, 2));
        let z = ComplexApprox::from_rational(&rat(1, 3), prec);
        let lhs = hg_eval(&p, &z, prec).unwrap();
        let q = params((3, 10), (5, 14), (1, 2)); // c-a, c-b
        let rhs_f = hg_eval(&q, &z, prec).unwrap();
        let e = rat(1, 2) - rat(1, 5) - rat(1, 7);
        let pref = ComplexApprox::one(prec).sub(&z).pow_rational(&e).unwrap();
        let diff = lhs.sub(&pref.mul(&rhs_f)).abs();
        assert!(diff.mag2() < -(prec as i64 - 8), "euler residual {}", diff.mag2());
    }

    #[test]
    fn pfaff_region_used_for_large_argument() {
        let prec = 128;
        let p = params((1, 4), (1, 3), (3, 2));
        // |z| = 0.95 but |z/(z-1)| = 0.95/1.95 < 0.9
        let z = ComplexApprox::from_rational(&rat(-19, 20), prec);
        let v = hg_eval(&p, &z, prec).unwrap();
        // compare against the Pfaff side computed directly
        let w = rat(-19, 20) / (rat(-19, 20) - rat(1, 1));
        let qq = HGParams::from_rationals(rat(1, 4), rat(7, 6), rat(3, 2)).unwrap();
        let zz = ComplexApprox::from_rational(&w, prec);
        let inner = hg_eval(&qq, &zz, prec).unwrap();
        let pref = ComplexApprox::one(prec).sub(&z).pow_rational(&rat(-1, 4)).unwrap();
        let diff = v.sub(&pref.mul(&inner)).abs();
        assert!(diff.mag2() < -(prec as i64 - 10));
        // both regions fail
        let z = ComplexApprox::from_rational(&rat(1, 1), prec);
        assert!(hg_eval(&p, &z, prec).is_err());
    }

    #[test]
    fn degree_one_series_identities_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let a = rat(rng.gen_range(-8..=8), rng.gen_range(1..=6));
            let b = rat(rng.gen_range(-8..=8), rng.gen_range(1..=6));
            let mut c = rat(rng.gen_range(-8..=8), rng.gen_range(1..=6));
            if is_nonpositive_integer(&c) {
                c += rat(1, 2);
            }
            let p = HGParams::from_rationals(a, b, c).unwrap();
            let n = 30;
            let f = hg_series(&p, n);
            let pf = pfaff_series(&p, n);
            assert!(f.first_mismatch(&pf).is_none(), "pfaff fails for {p:?}");
            let eu = euler_series(&p, n);
            assert!(f.first_mismatch(&eu).is_none(), "euler fails for {p:?}");
        }
    }
}
