//! Rational functions num/den over a quadratic field, normalised so that
//! gcd(num, den) = 1 and the denominator is monic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::quad::QuadExt;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() > 0 {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        } else {
            (num, den)
        };
        let lc = den.leading().inv().expect("nonzero denominator");
        num = num.scale(&lc);
        den = den.scale(&lc);
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: QuadExt) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0 || self.is_zero()
    }

    /// Degree as a map of the projective line: max(deg num, deg den).
    pub fn map_degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn eval(&self, x: &QuadExt) -> Option<QuadExt> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    pub fn derivative(&self) -> RationalFunction {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        RationalFunction::new(n, d)
    }

    pub fn inv(&self) -> RationalFunction {
        assert!(!self.is_zero(), "inverting the zero rational function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &RationalFunction) -> RationalFunction {
        let m = self.num.degree().max(self.den.degree());
        let n = &inner.num;
        let d = &inner.den;
        // powers of n and d up to m
        let mut npow = vec![Poly::one()];
        let mut dpow = vec![Poly::one()];
        for i in 1..=m {
            npow.push(&npow[i - 1] * n);
            dpow.push(&dpow[i - 1] * d);
        }
        let lift = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&npow[i] * &dpow[m - i]).scale(c);
                }
            }
            acc
        };
        RationalFunction::new(lift(&self.num), lift(&self.den))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "rational function division by zero");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation() {
        // (x^2-1)/(x-1) = x+1
        let r = RationalFunction::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 1]));
        assert_eq!(r.num(), &Poly::from_ints(&[1, 1]));
        assert_eq!(r.den(), &Poly::one());
        // denominator made monic
        let r = RationalFunction::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 2]));
        assert_eq!(r.den(), &Poly::x());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let r = RationalFunction::new(Poly::one(), Poly::x());
        let d = r.derivative();
        assert_eq!(d.num(), &Poly::from_ints(&[-1]));
        assert_eq!(d.den(), &Poly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn composition() {
        // f(x) = x^2, g(x) = (x+1)/(x-1): f(g) = (x+1)^2/(x-1)^2
        let f = RationalFunction::from_poly(Poly::from_ints(&[0, 0, 1]));
        let g = RationalFunction::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[-1, 1]));
        let fg = f.compose(&g);
        assert_eq!(fg.num(), &Poly::from_ints(&[1, 2, 1]));
        assert_eq!(fg.den(), &Poly::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn field_ops() {
        let f = RationalFunction::new(Poly::one(), Poly::from_ints(&[1, 1]));
        let g = RationalFunction::new(Poly::one(), Poly::from_ints(&[-1, 1]));
        // 1/(x+1) + 1/(x-1) = 2x/(x^2-1)
        let s = &f + &g;
        assert_eq!(s.num(), &Poly::from_ints(&[0, 2]));
        assert_eq!(s.den(), &Poly::from_ints(&[-1, 0, 1]));
        let p = &s / &s;
        assert_eq!(p.num(), &Poly::one());
        assert_eq!(p.den(), &Poly::one());
    }
}
