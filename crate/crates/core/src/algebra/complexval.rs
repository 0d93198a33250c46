//! Complex numbers over [`BigFloat`], with principal roots and rational
//! powers continued from the principal branch.

use std::fmt;

use num_traits::Signed;

use super::bigfloat::BigFloat;
use super::quad::QuadExt;
use super::rational::Rational;
use super::AlgebraError;

/// Which embedding of `sqrt(d)` to use when mapping a quadratic field into
/// the complex numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedBranch {
    /// `sqrt(d)` goes to the principal complex square root of `d`.
    Principal,
    /// The negated (Galois-conjugate) embedding.
    Conjugate,
}

/// A complex number at a stated binary precision.
#[derive(Clone)]
pub struct ComplexApprox {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl ComplexApprox {
    pub fn zero(prec: u32) -> Self {
        ComplexApprox { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        ComplexApprox { re: BigFloat::from_i64(1, prec), im: BigFloat::zero(prec) }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.precision();
        ComplexApprox { re, im: BigFloat::zero(prec) }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Self::from_real(BigFloat::from_rational(q, prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexApprox { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexApprox { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        ComplexApprox { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexApprox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexApprox { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm2(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm2().sqrt()
    }

    pub fn div(&self, o: &Self) -> Self {
        let n2 = o.norm2();
        assert!(!n2.is_zero(), "complex division by zero");
        let t = self.mul(&o.conj());
        ComplexApprox { re: t.re.div(&n2), im: t.im.div(&n2) }
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        ComplexApprox { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Integer power (negative exponents via the inverse).
    pub fn powi(&self, e: i64) -> Self {
        let prec = self.precision();
        if e < 0 {
            return ComplexApprox::one(prec).div(self).powi(-e);
        }
        let mut acc = ComplexApprox::one(prec);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Principal n-th root by Newton iteration from an f64 seed.
    pub fn nth_root(&self, n: u32) -> Result<Self, AlgebraError> {
        assert!(n >= 1);
        if n == 1 {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let prec = self.precision();
        // f64 principal-root seed; accurate to ~1e-15, well inside the
        // Newton basin of the principal root for the magnitudes seen here.
        let (re, im) = self.to_f64();
        let r = (re * re + im * im).sqrt().powf(1.0 / n as f64);
        let th = im.atan2(re) / n as f64;
        let mut x = ComplexApprox {
            re: BigFloat::from_rational(&f64_to_rational(r * th.cos()), prec),
            im: BigFloat::from_rational(&f64_to_rational(r * th.sin()), prec),
        };
        let nn = ComplexApprox::from_real(BigFloat::from_i64(n as i64, prec));
        let n1 = BigFloat::from_i64(n as i64 - 1, prec);
        // quadratic convergence: ~log2(prec) rounds from a 50-bit seed
        let rounds = (64 - (prec as u64).leading_zeros()) + 3;
        for _ in 0..rounds {
            let xp = x.powi(n as i64 - 1);
            let next = x.scale(&n1).add(&self.div(&xp)).div(&nn);
            let delta = next.sub(&x);
            x = next;
            if delta.abs().mag2() < x.abs().mag2() - prec as i64 - 2 {
                break;
            }
        }
        Ok(x)
    }

    /// Principal rational power `self^(u/v)`.
    pub fn pow_rational(&self, r: &Rational) -> Result<Self, AlgebraError> {
        use num_traits::ToPrimitive;
        let v = r.denom().to_u32().ok_or(AlgebraError::Parse("exponent too large".into()))?;
        let u = r.numer().to_i64().ok_or(AlgebraError::Parse("exponent too large".into()))?;
        Ok(self.nth_root(v)?.powi(u))
    }
}

/// Embeds `x + y*sqrt(d)` into the complex numbers at precision `prec`.
///
/// For `branch = Principal`, `sqrt(d)` maps to the principal complex square
/// root (`i*sqrt(|d|)` for negative `d`); the conjugate branch negates it.
pub fn embed_quadext(v: &QuadExt, branch: EmbedBranch, prec: u32) -> ComplexApprox {
    let x = BigFloat::from_rational(v.rational_part(), prec);
    if v.is_rational() {
        return ComplexApprox { re: x, im: BigFloat::zero(prec) };
    }
    let d = v.field_d();
    let root = BigFloat::from_i64(d.abs(), prec).sqrt();
    let y = BigFloat::from_rational(v.surd_part(), prec);
    let signed = match branch {
        EmbedBranch::Principal => y.mul(&root),
        EmbedBranch::Conjugate => y.mul(&root).neg(),
    };
    if d > 0 {
        ComplexApprox { re: x.add(&signed), im: BigFloat::zero(prec) }
    } else {
        ComplexApprox { re: x, im: signed }
    }
}

fn f64_to_rational(x: f64) -> Rational {
    if !x.is_finite() {
        return Rational::from_integer(0.into());
    }
    // exact binary decomposition of the f64
    let (m, e) = {
        let bits = x.abs().to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        }
    };
    let mut q = Rational::from_integer(m.into());
    if e >= 0 {
        q *= Rational::from_integer(num_bigint::BigInt::from(2).pow(e as u32));
    } else {
        q /= Rational::from_integer(num_bigint::BigInt::from(2).pow((-e) as u32));
    }
    if x.is_negative() {
        -q
    } else {
        q
    }
}

impl fmt::Debug for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re.to_decimal(17), self.im.to_decimal(17))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn embed_sqrt_minus_three() {
        let a = QuadExt::sqrt_d(-3).unwrap();
        let z = embed_quadext(&a, EmbedBranch::Principal, 128);
        assert!(z.re.is_zero());
        assert!((z.im.to_f64() - 3f64.sqrt()).abs() < 1e-15);
        let square = z.mul(&z);
        let err = square.re.add(&BigFloat::from_i64(3, 128)).abs();
        assert!(err.mag2() < -120, "squared embed error {}", err.mag2());
        // conjugate branch is the negation
        let zc = embed_quadext(&a, EmbedBranch::Conjugate, 128);
        assert!(z.add(&zc).abs().mag2() < -120);
    }

    #[test]
    fn embed_rational() {
        let v = QuadExt::from_rational(rat(5, 4));
        let z = embed_quadext(&v, EmbedBranch::Principal, 96);
        assert_eq!(z.re.to_f64(), 1.25);
        assert!(z.im.is_zero());
    }

    #[test]
    fn principal_roots() {
        let prec = 256;
        // 4th root of (unit-ish complex): check x^4 = w and principality
        let w = ComplexApprox {
            re: BigFloat::from_rational(&rat(3, 2), prec),
            im: BigFloat::from_rational(&rat(1, 5), prec),
        };
        let r = w.nth_root(4).unwrap();
        let err = r.powi(4).sub(&w).abs();
        assert!(err.mag2() < -240, "root residual {}", err.mag2());
        assert!(!r.re.is_negative(), "principal root has positive real part");

        // rational powers: w^(3/2) * w^(-3/2) = 1
        let p = w.pow_rational(&rat(3, 2)).unwrap();
        let q = w.pow_rational(&rat(-3, 2)).unwrap();
        let err = p.mul(&q).sub(&ComplexApprox::one(prec)).abs();
        assert!(err.mag2() < -240);
    }

    #[test]
    fn embedding_is_ring_hom() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let prec = 128;
        for _ in 0..200 {
            let a = QuadExt::new(
                -2,
                rat(rng.gen_range(-20..=20), rng.gen_range(1..=7)),
                rat(rng.gen_range(-20..=20), rng.gen_range(1..=7)),
            )
            .unwrap();
            let b = QuadExt::new(
                -2,
                rat(rng.gen_range(-20..=20), rng.gen_range(1..=7)),
                rat(rng.gen_range(-20..=20), rng.gen_range(1..=7)),
            )
            .unwrap();
            let za = embed_quadext(&a, EmbedBranch::Principal, prec);
            let zb = embed_quadext(&b, EmbedBranch::Principal, prec);
            let prod = embed_quadext(&(&a * &b), EmbedBranch::Principal, prec);
            let err = za.mul(&zb).sub(&prod).abs();
            let scale = prod.abs().mag2().max(0);
            // within 4 ulp at the working precision
            assert!(
                err.mag2() <= scale - prec as i64 + 2,
                "hom error {} vs scale {}",
                err.mag2(),
                scale
            );
        }
    }
}
