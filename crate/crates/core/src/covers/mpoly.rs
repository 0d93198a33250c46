//! Sparse multivariate polynomials over the rationals, sized for small
//! elimination problems (a handful of unknowns, modest degrees).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::poly::Poly;
use crate::algebra::rational::Rational;
use crate::algebra::QuadExt;

/// Exponent vector; index = variable.
pub type Monomial = Vec<u16>;

/// Polynomial in a fixed set of variables with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(vec![0; nvars], c);
        }
        MPoly { nvars, terms: t }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = vec![0u16; nvars];
        m[i] = 1;
        let mut t = BTreeMap::new();
        t.insert(m, Rational::one());
        MPoly { nvars, terms: t }
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m[var] > 0)
    }

    /// Viewed as univariate in `var`: coefficient of `var^k` for each k.
    pub fn univariate_view(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let k = m[var] as usize;
            let mut m2 = m.clone();
            m2[var] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_var_pow(&self, var: usize, e: u16) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = m.clone();
                    m2[var] += e;
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the rational content and normalises the sign of the
    /// lexicographically-leading coefficient to be positive.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scale = Rational::new(den_lcm, num_gcd);
        let mut p = self.scale(&scale);
        if let Some((_, c)) = p.terms.iter().next_back() {
            if c.is_negative() {
                p = p.scale(&-Rational::one());
            }
        }
        p
    }

    /// Lexicographically-leading (monomial, coefficient).
    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when `den` does not divide `self`.
    pub fn div_exact(&self, den: &MPoly) -> Option<MPoly> {
        assert!(!den.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        let (dm, dc) = {
            let (m, c) = den.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let mut qm = vec![0u16; self.nvars];
            for i in 0..self.nvars {
                if rm[i] < dm[i] {
                    return None;
                }
                qm[i] = rm[i] - dm[i];
            }
            let qc = rc / &dc;
            let t = MPoly::from_terms(self.nvars, vec![(qm, qc)]);
            rem = &rem - &(&t * den);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Substitutes values for every variable except `var`; returns the
    /// univariate polynomial in `var`. `values[var]` is ignored.
    pub fn eval_univariate(&self, var: usize, values: &[Option<QuadExt>]) -> Poly {
        assert_eq!(values.len(), self.nvars);
        let mut coeffs: Vec<QuadExt> = vec![QuadExt::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let mut v = QuadExt::from_rational(c.clone());
            for i in 0..self.nvars {
                if i == var || m[i] == 0 {
                    continue;
                }
                let val = values[i]
                    .as_ref()
                    .unwrap_or_else(|| panic!("missing value for variable {i}"));
                v = &v * &val.powi(m[i] as i64).expect("power");
            }
            let k = m[var] as usize;
            coeffs[k] = &coeffs[k] + &v;
        }
        Poly::new(coeffs)
    }

    /// Full evaluation at a point.
    pub fn eval(&self, values: &[QuadExt]) -> QuadExt {
        assert_eq!(values.len(), self.nvars);
        let mut acc = QuadExt::zero();
        for (m, c) in &self.terms {
            let mut v = QuadExt::from_rational(c.clone());
            for i in 0..self.nvars {
                if m[i] > 0 {
                    v = &v * &values[i].powi(m[i] as i64).expect("power");
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Embeds a univariate rational-coefficient polynomial as an MPoly in
    /// variable `var`.
    pub fn from_univariate(nvars: usize, var: usize, p: &Poly) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let r = c
                .as_rational()
                .expect("rational coefficients required")
                .clone();
            let mut m = vec![0u16; nvars];
            m[var] = k as u16;
            out.add_term(m, r);
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Polynomial in a distinguished variable `z` whose coefficients are
/// [`MPoly`]s in the unknowns (index = power of z).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    pub coeffs: Vec<MPoly>,
}

impl ZPoly {
    pub fn zero(nvars: usize) -> Self {
        ZPoly { coeffs: vec![MPoly::zero(nvars)] }
    }

    pub fn constant(p: MPoly) -> Self {
        ZPoly { coeffs: vec![p] }
    }

    pub fn from_ints(nvars: usize, cs: &[i64]) -> Self {
        ZPoly {
            coeffs: cs
                .iter()
                .map(|&c| MPoly::constant(nvars, Rational::from_integer(c.into())))
                .collect(),
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
        self
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn add(&self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let nv = self.nvars();
        let get = |v: &ZPoly, i: usize| v.coeffs.get(i).cloned().unwrap_or_else(|| MPoly::zero(nv));
        ZPoly { coeffs: (0..n).map(|i| &get(self, i) + &get(rhs, i)).collect() }.trimmed()
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &ZPoly) -> ZPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &ZPoly) -> ZPoly {
        let nv = self.nvars();
        let mut out = vec![MPoly::zero(nv); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ZPoly { coeffs: out }.trimmed()
    }

    pub fn scale(&self, k: &MPoly) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }.trimmed()
    }

    pub fn pow(&self, e: u32) -> ZPoly {
        let mut acc = ZPoly::constant(MPoly::one(self.nvars()));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Instantiates the unknowns, producing a plain polynomial in z.
    pub fn instantiate(&self, values: &[QuadExt]) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.eval(values)).collect())
    }
}
