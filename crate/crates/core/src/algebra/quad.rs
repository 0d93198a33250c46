//! Exact arithmetic in a quadratic field Q(√d).
//!
//! A [`QuadExt`] stores `x + y·√d` with rational `x`, `y` and a squarefree
//! integer `d`. Elements with `y = 0` are plain rationals and carry the
//! canonical marker `d = 1`, so rationals from different contexts mix freely;
//! two genuinely irrational elements must share the same `d`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{
    exact_nth_root, format_rational, parse_rational, rat_int, squarefree_decompose, Rational,
};
use super::AlgebraError;

/// An element `x + y*sqrt(d)` of the quadratic field Q(√d).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    d: i64,
    x: Rational,
    y: Rational,
}

fn check_squarefree(d: i64) -> Result<(), AlgebraError> {
    if d == 0 || d == 1 {
        return Err(AlgebraError::NotSquarefree(d));
    }
    match squarefree_decompose(&BigInt::from(d)) {
        Some((sf, _)) if sf == d => Ok(()),
        _ => Err(AlgebraError::NotSquarefree(d)),
    }
}

impl QuadExt {
    /// Builds `x + y*sqrt(d)`. `d` must be squarefree and neither 0 nor 1.
    pub fn new(d: i64, x: Rational, y: Rational) -> Result<Self, AlgebraError> {
        check_squarefree(d)?;
        Ok(Self::make(d, x, y))
    }

    fn make(d: i64, x: Rational, y: Rational) -> Self {
        if y.is_zero() {
            QuadExt { d: 1, x, y }
        } else {
            QuadExt { d, x, y }
        }
    }

    /// The rational `x` as an element of the trivial extension.
    pub fn from_rational(x: Rational) -> Self {
        QuadExt { d: 1, x, y: Rational::zero() }
    }

    /// Small-integer convenience constructor.
    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: i64) -> Result<Self, AlgebraError> {
        Self::new(d, Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.y.is_zero() && self.x.is_one()
    }

    /// Rational part `x`.
    pub fn rational_part(&self) -> &Rational {
        &self.x
    }

    /// Coefficient `y` of `sqrt(d)`.
    pub fn surd_part(&self) -> &Rational {
        &self.y
    }

    /// The `d` of the ambient field; 1 for plain rationals.
    pub fn field_d(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.y.is_zero() {
            Some(&self.x)
        } else {
            None
        }
    }

    /// Field marker compatible with both operands, or an error.
    pub fn combine_d(a: i64, b: i64) -> Result<i64, AlgebraError> {
        match (a, b) {
            (1, d) | (d, 1) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(AlgebraError::IncompatibleFields(d1, d2)),
        }
    }

    fn combine(&self, other: &Self) -> i64 {
        Self::combine_d(self.d, other.d).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Galois conjugate `x - y*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self::make(self.d, self.x.clone(), -self.y.clone())
    }

    /// Field norm `x^2 - d*y^2`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - rat_int(self.d) * &self.y * &self.y
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Self::make(self.d, c.x / &n, c.y / &n))
    }

    /// Integer power (negative exponents via the inverse).
    pub fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        if e < 0 {
            return self.inv()?.powi(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact square root within the same field, if one exists.
    ///
    /// For a rational this finds a rational or pure-surd root; for a proper
    /// quadratic element it solves `(p + q*sqrt(d))^2 = self` over Q.
    pub fn exact_sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.y.is_zero() {
            if let Some(r) = exact_nth_root(&self.x, 2) {
                return Some(Self::from_rational(r));
            }
            if self.d != 1 {
                // x = d * q^2 gives sqrt(x) = q * sqrt(d)
                let q2 = &self.x / rat_int(self.d);
                if let Some(q) = exact_nth_root(&q2, 2) {
                    return Some(Self::make(self.d, Rational::zero(), q));
                }
            }
            return None;
        }
        // (p + q sqrt(d))^2 = x + y sqrt(d): p^2 + d q^2 = x, 2pq = y.
        // p^2 satisfies t^2 - x t + d y^2/4 = 0.
        let x = &self.x;
        let dy24 = rat_int(self.d) * &self.y * &self.y / rat_int(4);
        let disc = x * x - rat_int(4) * &dy24;
        let s = exact_nth_root(&disc, 2)?;
        for root in [(x + &s) / rat_int(2), (x - &s) / rat_int(2)] {
            if let Some(p) = exact_nth_root(&root, 2) {
                if p.is_zero() {
                    continue;
                }
                let q = &self.y / (rat_int(2) * &p);
                let cand = Self::make(self.d, p, q);
                if &(&cand * &cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Exact k-th root within the same field, if one exists.
    pub fn exact_nth_root(&self, k: u32) -> Option<Self> {
        match k {
            0 => None,
            1 => Some(self.clone()),
            2 => self.exact_sqrt(),
            _ => {
                if k % 2 == 0 {
                    // either square-root branch may carry the deeper root
                    let r = self.exact_sqrt()?;
                    return r
                        .exact_nth_root(k / 2)
                        .or_else(|| (-&r).exact_nth_root(k / 2));
                }
                // odd k beyond 1: only the rational case is supported
                self.as_rational()
                    .and_then(|r| exact_nth_root(r, k))
                    .map(Self::from_rational)
            }
        }
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        let d = self.combine(rhs);
        QuadExt::make(d, &self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        let d = self.combine(rhs);
        QuadExt::make(d, &self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        // rational operands dominate in practice
        if self.y.is_zero() && rhs.y.is_zero() {
            return QuadExt { d: 1, x: &self.x * &rhs.x, y: Rational::zero() };
        }
        let d = self.combine(rhs);
        let x = &self.x * &rhs.x + rat_int(d) * &self.y * &rhs.y;
        let y = &self.x * &rhs.y + &self.y * &rhs.x;
        QuadExt::make(d, x, y)
    }
}

impl Div for &QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        let inv = rhs.inv().unwrap_or_else(|e| panic!("{e}"));
        self * &inv
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::make(self.d, -self.x.clone(), -self.y.clone())
    }
}

macro_rules! forward_owned {
    ($($t:ident :: $m:ident),*) => {$(
        impl $t for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl fmt::Display for QuadExt {
    /// Canonical form `p/q`, `r/s*sqrt(D)` or `p/q+r/s*sqrt(D)` (with the
    /// sign of the surd term folded into the separator).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", format_rational(&self.x));
        }
        let surd = format!("{}*sqrt({})", format_rational(&self.y.abs()), self.d);
        if self.x.is_zero() {
            if self.y.is_negative() {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else {
            let sep = if self.y.is_negative() { "-" } else { "+" };
            write!(f, "{}{}{}", format_rational(&self.x), sep, surd)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the canonical scalar format: `p/q`, `r/s*sqrt(D)`,
/// `p/q+r/s*sqrt(D)` or `p/q-r/s*sqrt(D)`.
pub fn parse_quadext(s: &str) -> Result<QuadExt, AlgebraError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || AlgebraError::Parse(s.to_string());

    let parse_surd = |part: &str| -> Result<(Rational, i64), AlgebraError> {
        // "[coef*]sqrt(D)"
        let (coef, rest) = match part.find("*sqrt(") {
            Some(i) => (parse_rational(&part[..i])?, &part[i + 1..]),
            None => (Rational::one(), part),
        };
        let inner = rest
            .strip_prefix("sqrt(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let d: i64 = inner.parse().map_err(|_| bad())?;
        Ok((coef, d))
    };

    if !t.contains("sqrt(") {
        return Ok(QuadExt::from_rational(parse_rational(&t)?));
    }
    // Split at the +/- joining the rational and surd parts, if any. Skip a
    // leading sign and any sign directly inside sqrt( ).
    let mut split: Option<(usize, bool)> = None;
    for (i, c) in t.char_indices() {
        if i == 0 || !(c == '+' || c == '-') {
            continue;
        }
        let prev = t.as_bytes()[i - 1];
        if prev == b'(' || prev == b'+' || prev == b'-' || prev == b'/' || prev == b'*' {
            continue;
        }
        split = Some((i, c == '-'));
        break;
    }
    match split {
        Some((i, neg)) => {
            let x = parse_rational(&t[..i])?;
            let (coef, d) = parse_surd(&t[i + 1..])?;
            let y = if neg { -coef } else { coef };
            QuadExt::new(d, x, y)
        }
        None => {
            let (mut body, neg) = match t.strip_prefix('-') {
                Some(rest) => (rest, true),
                None => (t.as_str(), false),
            };
            if let Some(rest) = body.strip_prefix('+') {
                body = rest;
            }
            let (coef, d) = parse_surd(body)?;
            let y = if neg { -coef } else { coef };
            QuadExt::new(d, Rational::zero(), y)
        }
    }
}
