//! Integer-coefficient univariate kernels: primitive-PRS gcd and the exact
//! subresultant resultant. Used to keep coefficient growth under control in
//! the elimination hot paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::poly::Poly;
use crate::algebra::rational::Rational;
use crate::algebra::QuadExt;

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigInt::zero());
    }
}

fn is_zero_poly(v: &[BigInt]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&v);
    if !c.is_one() {
        for x in &mut v {
            *x /= &c;
        }
    }
    v
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let d = b.last().unwrap().clone();
    let delta = a.len() as i64 - b.len() as i64;
    assert!(delta >= 0);
    let mut r = a.to_vec();
    let mut e = delta + 1;
    loop {
        trim(&mut r);
        if is_zero_poly(&r) || r.len() < b.len() {
            break;
        }
        let sh = r.len() - b.len();
        let lc = r.last().unwrap().clone();
        for x in &mut r {
            *x *= &d;
        }
        for (j, bc) in b.iter().enumerate() {
            r[sh + j] -= &lc * bc;
        }
        e -= 1;
    }
    let mut scale = BigInt::one();
    for _ in 0..e.max(0) {
        scale *= &d;
    }
    if !scale.is_one() {
        for x in &mut r {
            *x *= &scale;
        }
    }
    r
}

/// Primitive-PRS gcd of two integer polynomials (result primitive, sign of
/// the leading coefficient positive).
pub fn int_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut f = primitive(a.to_vec());
    let mut g = primitive(b.to_vec());
    trim(&mut f);
    trim(&mut g);
    if is_zero_poly(&f) {
        return g;
    }
    if is_zero_poly(&g) {
        return f;
    }
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if is_zero_poly(&g) {
            break;
        }
        if g.len() == 1 {
            // nonzero constant: coprime
            f = vec![BigInt::one()];
            break;
        }
        let r = primitive(prem(&f, &g));
        f = g;
        g = r;
        trim(&mut g);
    }
    trim(&mut f);
    if f.last().unwrap().is_negative() {
        for x in &mut f {
            *x = -x.clone();
        }
    }
    f
}

/// Exact resultant of two integer polynomials by the subresultant PRS.
pub fn int_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    trim(&mut f);
    trim(&mut g);
    if is_zero_poly(&f) || is_zero_poly(&g) {
        return BigInt::zero();
    }
    let mut sign = BigInt::one();
    if f.len() < g.len() {
        if (f.len() - 1) % 2 == 1 && (g.len() - 1) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut f, &mut g);
    }
    if g.len() == 1 {
        return sign * num_traits::pow(g[0].clone(), f.len() - 1);
    }
    // strip contents up front and track the scale exactly
    let cf = content(&f);
    let cg = content(&g);
    let scale =
        num_traits::pow(cf.clone(), g.len() - 1) * num_traits::pow(cg.clone(), f.len() - 1);
    let mut f = primitive(f);
    let mut g = primitive(g);
    let mut h = BigInt::one();
    let mut s = BigInt::one();
    loop {
        let df = f.len() - 1;
        let dg = g.len() - 1;
        let delta = (df - dg) as u32;
        // sign of the pseudo-division step: prem multiplies by lc(g)^(δ+1);
        // bookkeeping follows the classical subresultant scheme
        if df % 2 == 1 && dg % 2 == 1 {
            sign = -sign;
        }
        let mut r = prem(&f, &g);
        trim(&mut r);
        if is_zero_poly(&r) {
            return BigInt::zero();
        }
        let divisor = &s * num_traits::pow(h.clone(), delta as usize);
        for x in &mut r {
            let (q, rem) = x.div_rem(&divisor);
            debug_assert!(rem.is_zero(), "subresultant division");
            *x = q;
        }
        f = g;
        s = f.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(s.clone(), delta as usize);
            if delta == 1 {
                num
            } else {
                let den = num_traits::pow(h.clone(), delta as usize - 1);
                let (q, rem) = num.div_rem(&den);
                debug_assert!(rem.is_zero());
                q
            }
        };
        g = r;
        if g.len() == 1 {
            break;
        }
    }
    let p = f.len() - 1;
    let num = num_traits::pow(g[0].clone(), p);
    let res = if p <= 1 {
        num
    } else {
        let den = num_traits::pow(h, p - 1);
        let (q, rem) = num.div_rem(&den);
        debug_assert!(rem.is_zero());
        q
    };
    sign * scale * res
}

/// Clears a rational-coefficient polynomial to a primitive integer vector.
pub fn clear_to_int(p: &Poly) -> Vec<BigInt> {
    if p.is_zero() {
        return vec![BigInt::zero()];
    }
    let rats: Vec<Rational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients").clone())
        .collect();
    let mut den = BigInt::one();
    for r in &rats {
        den = den.lcm(r.denom());
    }
    primitive(
        rats.iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect(),
    )
}

/// Monic rational polynomial from an integer coefficient vector.
pub fn int_to_poly(v: &[BigInt]) -> Poly {
    Poly::new(
        v.iter()
            .map(|c| QuadExt::from_rational(Rational::from_integer(c.clone())))
            .collect(),
    )
    .monic()
}
