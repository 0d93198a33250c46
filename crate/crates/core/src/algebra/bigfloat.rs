//! Dyadic floating-point numbers `mant * 2^exp` with an explicit mantissa
//! precision in bits.
//!
//! Every operation rounds its result to the precision of its operands (which
//! must agree; precision is a parameter of the computation, never a global).
//! Rounding is to nearest, so each primitive operation is accurate to 1 ulp.
//! Callers that need guaranteed bounds work at `p + guard` bits and discount
//! the guard at the end.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// Arbitrary-precision binary floating-point value.
#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        BigFloat { mant: BigInt::from(n), exp: 0, prec }.normalized()
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> Self {
        BigFloat { mant: n, exp: 0, prec }.normalized()
    }

    /// Rounds the rational `q` to `prec` bits.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero(prec);
        }
        let shift = prec as i64 + 2 + (q.denom().bits() as i64 - q.numer().bits() as i64).max(0);
        let scaled = (q.numer() << shift as u64).div_floor(q.denom());
        BigFloat { mant: scaled, exp: -shift, prec }.normalized()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let sh = bits - self.prec as u64;
            let neg = self.mant.is_negative();
            let mut m = self.mant.abs();
            let round_bit = (&m >> (sh - 1)) & BigInt::one();
            m >>= sh;
            if round_bit.is_one() {
                m += 1;
            }
            self.mant = if neg { -m } else { m };
            self.exp += sh as i64;
            // the rounding increment may have produced one bit too many
            if self.mant.bits() > self.prec as u64 {
                self.mant >>= 1;
                self.exp += 1;
            }
        }
        self
    }

    fn check_prec(&self, other: &Self) -> u32 {
        assert_eq!(self.prec, other.prec, "mixed BigFloat precisions");
        self.prec
    }

    /// log2 of the magnitude, rounded up; i64::MIN for zero.
    pub fn mag2(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.check_prec(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // If the magnitudes are too far apart the small term only matters
        // through rounding; clamp the alignment shift.
        let gap = self.mag2() - other.mag2();
        if gap > prec as i64 + 4 {
            return self.clone();
        }
        if gap < -(prec as i64 + 4) {
            return other.clone();
        }
        let (a, b) = (self, other);
        let (mant, exp) = if a.exp >= b.exp {
            ((&a.mant << (a.exp - b.exp) as u64) + &b.mant, b.exp)
        } else {
            ((&b.mant << (b.exp - a.exp) as u64) + &a.mant, a.exp)
        };
        BigFloat { mant, exp, prec }.normalized()
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -self.mant.clone(), exp: self.exp, prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.check_prec(other);
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp, prec }.normalized()
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigFloat { mant: &self.mant * k, exp: self.exp, prec: self.prec }.normalized()
    }

    pub fn div(&self, other: &Self) -> Self {
        let prec = self.check_prec(other);
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let sh = prec as i64 + 2 + (other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << sh as u64;
        let neg = num.is_negative() != other.mant.is_negative();
        let q = num.abs().div_floor(&other.mant.abs());
        let mant = if neg { -q } else { q };
        BigFloat { mant, exp: self.exp - other.exp - sh, prec }.normalized()
    }

    /// Multiplies by 2^k.
    pub fn ldexp(&self, k: i64) -> Self {
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Square root (value must be >= 0).
    pub fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        // Shift so the operand has about 2*(prec+2) bits and an even exponent.
        let bits = self.mant.bits() as i64;
        let mut sh = (2 * (self.prec as i64 + 2) - bits).max(0);
        if (self.exp - sh) % 2 != 0 {
            sh += 1;
        }
        let m = &self.mant << sh as u64;
        let r = m.sqrt();
        BigFloat { mant: r, exp: (self.exp - sh) / 2, prec: self.prec }.normalized()
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp_value(&other.abs())
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let d = self.sub(other);
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let take = 63.min(bits);
        let top = (&self.mant >> (bits - take) as u64).to_i64().unwrap_or(0);
        (top as f64) * 2f64.powi((self.exp + bits - take) as i32)
    }

    /// Converts to an exact rational (the stored dyadic value).
    pub fn to_rational(&self) -> Rational {
        let two = BigInt::from(2);
        if self.exp >= 0 {
            Rational::from_integer(&self.mant * num_traits::pow(two, self.exp as usize))
        } else {
            Rational::new(self.mant.clone(), num_traits::pow(two, (-self.exp) as usize))
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.mant.is_negative();
        let q = self.to_rational().abs();
        // d10 = floor(log10(q)) via bit length estimate then correction
        let mut d10 = ((q.numer().bits() as i64 - q.denom().bits() as i64) as f64 * 0.30103) as i64;
        let ten = BigInt::from(10);
        let pow10 = |k: i64| -> Rational {
            if k >= 0 {
                Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
            } else {
                Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
            }
        };
        while q < pow10(d10) {
            d10 -= 1;
        }
        while q >= pow10(d10 + 1) {
            d10 += 1;
        }
        // mantissa digits
        let scaled = &q * pow10(digits as i64 - 1 - d10);
        let int = scaled.to_integer().to_string();
        let (head, tail) = int.split_at(1);
        let sign = if neg { "-" } else { "" };
        format!("{sign}{head}.{tail}e{d10}")
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(17))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn arithmetic_matches_f64() {
        let p = 96;
        let a = BigFloat::from_rational(&rat(355, 113), p);
        let b = BigFloat::from_rational(&rat(-7, 16), p);
        assert!((a.add(&b).to_f64() - (355.0 / 113.0 - 0.4375)).abs() < 1e-12);
        assert!((a.mul(&b).to_f64() - (355.0 / 113.0 * -0.4375)).abs() < 1e-12);
        assert!((a.div(&b).to_f64() - (355.0 / 113.0 / -0.4375)).abs() < 1e-12);
    }

    #[test]
    fn sqrt_accuracy() {
        let p = 256;
        let two = BigFloat::from_i64(2, p);
        let r = two.sqrt();
        let err = r.mul(&r).sub(&two).abs();
        // 1-ulp accurate root: squared error below 2^-250
        assert!(err.mag2() < -250, "error magnitude {}", err.mag2());
    }

    #[test]
    fn rounding_keeps_precision() {
        let p = 64;
        let third = BigFloat::from_rational(&rat(1, 3), p);
        let one = BigFloat::from_i64(1, p);
        let err = third.mul_i64(3).sub(&one).abs();
        assert!(err.mag2() < -60);
    }

    #[test]
    fn far_apart_addition() {
        let p = 64;
        let big = BigFloat::from_i64(1, p);
        let tiny = BigFloat::from_rational(&rat(1, 1), p).ldexp(-500);
        let s = big.add(&tiny);
        assert_eq!(s.cmp_value(&big), Ordering::Equal);
    }

    #[test]
    fn decimal_rendering() {
        let p = 128;
        let x = BigFloat::from_rational(&rat(1, 4), p);
        assert_eq!(x.to_decimal(3), "2.50e-1");
        let y = BigFloat::from_rational(&rat(-1234, 1), p);
        assert!(y.to_decimal(4).starts_with("-1.234e3"));
    }

    #[test]
    fn random_ops_vs_f64() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let p = 128;
        for _ in 0..500 {
            let an = rng.gen_range(-1_000_000i64..1_000_000);
            let ad = rng.gen_range(1i64..1000);
            let bn = rng.gen_range(-1_000_000i64..1_000_000);
            let bd = rng.gen_range(1i64..1000);
            if bn == 0 {
                continue;
            }
            let a = BigFloat::from_rational(&rat(an, ad), p);
            let b = BigFloat::from_rational(&rat(bn, bd), p);
            let fa = an as f64 / ad as f64;
            let fb = bn as f64 / bd as f64;
            assert!((a.add(&b).to_f64() - (fa + fb)).abs() <= 1e-9 * (1.0 + (fa + fb).abs()));
            assert!((a.mul(&b).to_f64() - (fa * fb)).abs() <= 1e-9 * (1.0 + (fa * fb).abs()));
            assert!((a.div(&b).to_f64() - (fa / fb)).abs() <= 1e-9 * (1.0 + (fa / fb).abs()));
        }
    }
}
