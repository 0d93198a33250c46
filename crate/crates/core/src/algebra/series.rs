//! Truncated power series with a rational leading exponent.
//!
//! A [`FracSeries`] is `sum_k coeffs[k] * z^(offset + k*step)` with rational
//! `offset`, positive rational `step`, and a truncation bound `trunc`:
//! coefficients of exponents below `trunc` are exact, everything above is
//! unknown. Mixed-lattice operations refine `step` to the common lattice.
//! The zero series has empty coefficients and canonical offset 0.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, ToPrimitive, Zero};

use super::quad::QuadExt;
use super::rational::{rational_gcd, Rational};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FracSeries {
    offset: Rational,
    step: Rational,
    coeffs: Vec<QuadExt>,
    trunc: Rational,
}

impl FracSeries {
    /// The zero series, known to vanish below exponent `trunc`.
    pub fn zero(trunc: Rational) -> Self {
        FracSeries {
            offset: Rational::zero(),
            step: Rational::from_integer(1.into()),
            coeffs: vec![],
            trunc,
        }
    }

    pub fn one(trunc: Rational) -> Self {
        Self::monomial(QuadExt::one(), Rational::zero(), trunc)
    }

    /// `c * z^exp`, truncated at `trunc`.
    pub fn monomial(c: QuadExt, exp: Rational, trunc: Rational) -> Self {
        if c.is_zero() || exp >= trunc {
            return Self::zero(trunc);
        }
        FracSeries { offset: exp, step: Rational::from_integer(1.into()), coeffs: vec![c], trunc }
    }

    /// Integer-exponent series from polynomial coefficients (index = degree).
    pub fn from_poly(p: &super::poly::Poly, trunc: Rational) -> Self {
        FracSeries {
            offset: Rational::zero(),
            step: Rational::from_integer(1.into()),
            coeffs: p.coeffs().to_vec(),
            trunc,
        }
        .normalized()
    }

    /// Raw constructor; normalises.
    pub fn from_parts(
        offset: Rational,
        step: Rational,
        coeffs: Vec<QuadExt>,
        trunc: Rational,
    ) -> Self {
        assert!(step.is_positive(), "series step must be positive");
        FracSeries { offset, step, coeffs, trunc }.normalized()
    }

    fn normalized(mut self) -> Self {
        // drop terms at or above the truncation bound
        while !self.coeffs.is_empty() {
            let last_exp = &self.offset + &self.step * Rational::from_integer((self.coeffs.len() as i64 - 1).into());
            if last_exp >= self.trunc {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        // strip leading zeros into the offset
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                let t = self.trunc.clone();
                FracSeries::zero(t)
            }
            Some(0) => self,
            Some(k) => {
                self.offset += &self.step * Rational::from_integer((k as i64).into());
                self.coeffs.drain(..k);
                self
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading exponent (the order at the origin). Meaningless for zero.
    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    pub fn trunc(&self) -> &Rational {
        &self.trunc
    }

    pub fn leading_coeff(&self) -> QuadExt {
        self.coeffs.first().cloned().unwrap_or_else(QuadExt::zero)
    }

    /// Coefficient of `z^exp`; zero off the lattice. Panics when `exp` is not
    /// below the truncation bound.
    pub fn coeff_at(&self, exp: &Rational) -> QuadExt {
        assert!(exp < &self.trunc, "queried coefficient beyond truncation");
        if self.is_zero() {
            return QuadExt::zero();
        }
        let rel = exp - &self.offset;
        let idx = &rel / &self.step;
        if !idx.is_integer() || idx.is_negative() {
            return QuadExt::zero();
        }
        match idx.to_integer().to_usize() {
            Some(i) => self.coeffs.get(i).cloned().unwrap_or_else(QuadExt::zero),
            None => QuadExt::zero(),
        }
    }

    /// All nonzero terms `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> Vec<(Rational, QuadExt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                (&self.offset + &self.step * Rational::from_integer((k as i64).into()), c.clone())
            })
            .collect()
    }

    pub fn with_trunc(&self, trunc: Rational) -> Self {
        let mut s = self.clone();
        s.trunc = s.trunc.min(trunc);
        s.normalized()
    }

    /// Re-expresses on a finer lattice; `new_step` must divide `step`.
    fn regrid(&self, new_step: &Rational) -> Self {
        if self.is_zero() || &self.step == new_step {
            let mut s = self.clone();
            s.step = new_step.clone();
            return s;
        }
        let ratio = &self.step / new_step;
        assert!(ratio.is_integer(), "regrid to non-divisor step");
        let r = ratio.to_integer().to_usize().expect("regrid ratio");
        let mut v = vec![QuadExt::zero(); (self.coeffs.len() - 1) * r + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * r] = c.clone();
        }
        FracSeries { offset: self.offset.clone(), step: new_step.clone(), coeffs: v, trunc: self.trunc.clone() }
    }

    /// Common lattice step for a binary operation.
    fn common_step(&self, other: &Self) -> Rational {
        let mut s = rational_gcd(&self.step, &other.step);
        let diff = (&self.offset - &other.offset).abs();
        if !diff.is_zero() {
            s = rational_gcd(&s, &diff);
        }
        s
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        if k.is_zero() {
            return Self::zero(self.trunc.clone());
        }
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = &*c * k;
        }
        s
    }

    /// Multiplies by the monomial `c * z^e` (shifts the truncation bound too).
    pub fn mul_monomial(&self, c: &QuadExt, e: &Rational) -> Self {
        let mut s = self.scale(c);
        s.offset += e;
        s.trunc += e;
        s.normalized()
    }

    /// Derivative d/dz.
    pub fn derivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = &self.offset + &self.step * Rational::from_integer((k as i64).into());
            coeffs.push(c * &QuadExt::from_rational(e));
        }
        FracSeries {
            offset: &self.offset - Rational::from_integer(1.into()),
            step: self.step.clone(),
            coeffs,
            trunc: &self.trunc - Rational::from_integer(1.into()),
        }
        .normalized()
    }

    /// Integer power by repeated squaring.
    pub fn pow_int(&self, e: u32) -> Self {
        if e == 0 {
            // the truncation of a 0th power is only limited by self's window
            let rel = &self.trunc - &self.offset;
            return Self::one(rel);
        }
        let mut acc: Option<FracSeries> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.unwrap()
    }

    /// Multiplicative inverse; the series must have a nonzero leading
    /// coefficient (every truncated unit does).
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::NonUnitSeries);
        }
        let c0 = self.leading_coeff();
        let c0_inv = c0.inv()?;
        let rel_trunc = &self.trunc - &self.offset;
        let n = ((&rel_trunc / &self.step).ceil().to_integer().to_usize()).unwrap_or(0);
        let mut w = vec![QuadExt::zero(); n.max(1)];
        w[0] = c0_inv.clone();
        for k in 1..n {
            let mut s = QuadExt::zero();
            for i in 1..=k {
                let ci = self.coeffs.get(i).cloned().unwrap_or_else(QuadExt::zero);
                if !ci.is_zero() {
                    s = &s + &(&ci * &w[k - i]);
                }
            }
            w[k] = -&(&s * &c0_inv);
        }
        Ok(FracSeries {
            offset: -self.offset.clone(),
            step: self.step.clone(),
            coeffs: w,
            trunc: &rel_trunc - &self.offset,
        }
        .normalized())
    }

    /// Splits as `c0 * z^offset * (1 + u)` and returns `(c0, offset, 1+u)`.
    pub fn decompose(&self) -> Option<(QuadExt, Rational, FracSeries)> {
        if self.is_zero() {
            return None;
        }
        let c0 = self.leading_coeff();
        let unit = FracSeries {
            offset: Rational::zero(),
            step: self.step.clone(),
            coeffs: self.coeffs.iter().map(|c| c / &c0).collect(),
            trunc: &self.trunc - &self.offset,
        };
        Some((c0, self.offset.clone(), unit))
    }

    /// Raises a series with leading coefficient 1 to a rational power by the
    /// binomial expansion.
    pub fn unit_pow_rational(&self, r: &Rational) -> Self {
        assert!(
            self.leading_coeff().is_one() && self.offset.is_zero(),
            "unit_pow_rational requires a 1 + O(z^s) series"
        );
        let trunc = self.trunc.clone();
        let mut u = self.clone();
        u.coeffs[0] = QuadExt::zero();
        let u = u.normalized();
        if u.is_zero() {
            return Self::one(trunc);
        }
        let ord = u.offset.clone();
        let mut acc = Self::one(trunc.clone());
        let mut upow = Self::one(trunc.clone());
        let mut binom = Rational::from_integer(1.into());
        let mut k = Rational::zero();
        loop {
            k += Rational::from_integer(1.into());
            binom = binom * (r - (&k - Rational::from_integer(1.into()))) / &k;
            upow = &upow * &u;
            if binom.is_zero() || upow.is_zero() {
                break;
            }
            // u^k has order >= k*ord; stop once past the window
            if &ord * &k >= trunc {
                break;
            }
            acc = &acc + &upow.scale(&QuadExt::from_rational(binom.clone()));
        }
        acc
    }

    /// `self^r` for rational `r`: `offset*r` plus the binomial expansion of
    /// the unit part. The leading coefficient must possess an exact root in
    /// its field when `r` is not an integer.
    pub fn pow_rational(&self, r: &Rational) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return if r.is_positive() {
                Ok(Self::zero(&self.trunc * r))
            } else {
                Err(AlgebraError::ZeroSeriesPower)
            };
        }
        if r.is_integer() {
            let n = r.to_integer().to_i64().expect("small exponent");
            return Ok(if n >= 0 {
                self.pow_int(n as u32)
            } else {
                self.inverse()?.pow_int((-n) as u32)
            });
        }
        let (c0, off, unit) = self.decompose().expect("nonzero");
        let v = r.denom().to_u32().unwrap_or(u32::MAX);
        let scale = c0
            .exact_nth_root(v)
            .ok_or_else(|| AlgebraError::NoExactRoot(c0.to_string(), v))?
            .powi(r.numer().to_i64().expect("small exponent"))
            .map_err(|_| AlgebraError::DivisionByZero)?;
        let body = unit.unit_pow_rational(r);
        Ok(body.mul_monomial(&scale, &(off * r)))
    }

    /// First exponent (below both truncations) where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<(Rational, QuadExt, QuadExt)> {
        let d = self - other;
        if d.is_zero() {
            return None;
        }
        let e = d.offset.clone();
        let min_trunc = self.trunc.clone().min(other.trunc.clone());
        if e >= min_trunc {
            return None;
        }
        Some((e.clone(), self.coeff_at(&e), other.coeff_at(&e)))
    }
}

impl Add for &FracSeries {
    type Output = FracSeries;
    fn add(self, rhs: &FracSeries) -> FracSeries {
        let trunc = self.trunc.clone().min(rhs.trunc.clone());
        if self.is_zero() {
            return rhs.with_trunc(trunc);
        }
        if rhs.is_zero() {
            return self.with_trunc(trunc);
        }
        let step = self.common_step(rhs);
        let a = self.regrid(&step);
        let b = rhs.regrid(&step);
        let offset = a.offset.clone().min(b.offset.clone());
        let idx = |s: &FracSeries, k: usize| -> usize {
            let shift = (&s.offset - &offset) / &step;
            shift.to_integer().to_usize().unwrap() + k
        };
        let len_a = if a.coeffs.is_empty() { 0 } else { idx(&a, a.coeffs.len() - 1) + 1 };
        let len_b = if b.coeffs.is_empty() { 0 } else { idx(&b, b.coeffs.len() - 1) + 1 };
        let mut v = vec![QuadExt::zero(); len_a.max(len_b)];
        for (k, c) in a.coeffs.iter().enumerate() {
            v[idx(&a, k)] = c.clone();
        }
        for (k, c) in b.coeffs.iter().enumerate() {
            let i = idx(&b, k);
            v[i] = &v[i] + c;
        }
        FracSeries { offset, step, coeffs: v, trunc }.normalized()
    }
}

impl Sub for &FracSeries {
    type Output = FracSeries;
    fn sub(self, rhs: &FracSeries) -> FracSeries {
        self + &(-rhs)
    }
}

impl Neg for &FracSeries {
    type Output = FracSeries;
    fn neg(self) -> FracSeries {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = -&*c;
        }
        s
    }
}

impl Mul for &FracSeries {
    type Output = FracSeries;
    fn mul(self, rhs: &FracSeries) -> FracSeries {
        // product of values known mod z^t1 / z^t2
        if self.is_zero() || rhs.is_zero() {
            let t = if self.is_zero() {
                &self.trunc + &rhs.offset
            } else {
                &rhs.trunc + &self.offset
            };
            return FracSeries::zero(t);
        }
        let trunc = (&self.trunc + &rhs.offset).min(&rhs.trunc + &self.offset);
        let step = rational_gcd(&self.step, &rhs.step);
        let a = self.regrid(&step);
        let b = rhs.regrid(&step);
        let offset = &a.offset + &b.offset;
        let max_rel = {
            let r = (&trunc - &offset) / &step;
            r.ceil().to_integer().to_usize().unwrap_or(0)
        };
        let mut v = vec![QuadExt::zero(); max_rel.min(a.coeffs.len() + b.coeffs.len() - 1)];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() || i >= v.len() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if i + j >= v.len() {
                    break;
                }
                if cb.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(ca * cb);
            }
        }
        FracSeries { offset, step, coeffs: v, trunc }.normalized()
    }
}

/// Taylor expansion of a rational function about 0, to exponent `n`.
pub fn series_from_rational(
    s: &super::ratfunc::RationalFunction,
    n: &Rational,
) -> Result<FracSeries, AlgebraError> {
    if s.den().eval(&QuadExt::zero()).is_zero() {
        return Err(AlgebraError::PoleAtOrigin);
    }
    let num = FracSeries::from_poly(s.num(), n.clone());
    let den = FracSeries::from_poly(s.den(), n.clone());
    Ok(&num * &den.inverse()?)
}

/// Substitutes a series of positive order into a polynomial-indexed series:
/// `sum_k outer[k] * inner^k`, truncated at `n`.
pub fn compose_outer(outer: &[QuadExt], inner: &FracSeries, n: &Rational) -> FracSeries {
    assert!(
        inner.is_zero() || inner.offset().is_positive(),
        "inner series must vanish at the origin"
    );
    let mut acc = FracSeries::zero(n.clone());
    for c in outer.iter().rev() {
        acc = &(&acc * inner).with_trunc(n.clone())
            + &FracSeries::monomial(c.clone(), Rational::zero(), n.clone());
    }
    acc.with_trunc(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::ratfunc::RationalFunction;
    use crate::algebra::rational::{rat, rat_int};

    fn qi(n: i64) -> QuadExt {
        QuadExt::from_i64(n)
    }

    #[test]
    fn difference_of_squares() {
        // z^(1/2)(1+z) * z^(1/2)(1-z) = z(1-z^2)
        let t = rat_int(10);
        let a = FracSeries::from_parts(rat(1, 2), rat_int(1), vec![qi(1), qi(1)], t.clone());
        let b = FracSeries::from_parts(rat(1, 2), rat_int(1), vec![qi(1), qi(-1)], t.clone());
        let p = &a * &b;
        assert_eq!(p.coeff_at(&rat_int(1)), qi(1));
        assert_eq!(p.coeff_at(&rat_int(2)), qi(0));
        assert_eq!(p.coeff_at(&rat_int(3)), qi(-1));
    }

    #[test]
    fn identity_and_geometric() {
        let t = rat_int(8);
        let one = FracSeries::one(t.clone());
        let a = FracSeries::from_parts(rat(1, 3), rat_int(1), vec![qi(2), qi(5)], t.clone());
        assert_eq!(&one * &a, a);
        // (1 + z + z^2 + ...) * (1 - z) = 1
        let geo = FracSeries::from_parts(rat_int(0), rat_int(1), vec![qi(1); 8], t.clone());
        let m = FracSeries::from_poly(&Poly::from_ints(&[1, -1]), t.clone());
        let p = &geo * &m;
        assert!(p.terms().iter().skip(1).all(|(_, c)| c.is_zero()));
        assert_eq!(p.coeff_at(&rat_int(0)), qi(1));
    }

    #[test]
    fn binomial_square_root() {
        // (1+z)^(1/2) = 1 + z/2 - z^2/8 + z^3/16 - ...
        let t = rat_int(6);
        let s = FracSeries::from_poly(&Poly::from_ints(&[1, 1]), t);
        let r = s.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(r.coeff_at(&rat_int(0)), qi(1));
        assert_eq!(r.coeff_at(&rat_int(1)), QuadExt::from_rational(rat(1, 2)));
        assert_eq!(r.coeff_at(&rat_int(2)), QuadExt::from_rational(rat(-1, 8)));
        assert_eq!(r.coeff_at(&rat_int(3)), QuadExt::from_rational(rat(1, 16)));
        // and (A^(1/2))^2 = A
        let sq = r.pow_int(2);
        assert!(sq.first_mismatch(&FracSeries::from_poly(&Poly::from_ints(&[1, 1]), rat_int(6))).is_none());
    }

    #[test]
    fn power_zero_and_offset() {
        let t = rat_int(6);
        let a = FracSeries::from_parts(rat_int(0), rat_int(1), vec![qi(1), qi(3)], t.clone());
        let p0 = a.pow_rational(&rat_int(0)).unwrap();
        assert_eq!(p0.coeff_at(&rat_int(0)), qi(1));
        assert!(p0.terms().len() == 1);
        // (z^2(1+z))^(1/2) = z (1+z)^(1/2)
        let b = FracSeries::from_parts(rat_int(2), rat_int(1), vec![qi(1), qi(1)], rat_int(8));
        let r = b.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(*r.offset(), rat_int(1));
        assert_eq!(r.coeff_at(&rat_int(2)), QuadExt::from_rational(rat(1, 2)));
    }

    #[test]
    fn rational_expansion() {
        // 4z/(1+z)^2 = 4z - 8z^2 + 12z^3 - 16z^4 + ...
        let s = RationalFunction::new(Poly::from_ints(&[0, 4]), Poly::from_ints(&[1, 2, 1]));
        let e = series_from_rational(&s, &rat_int(5)).unwrap();
        assert_eq!(e.coeff_at(&rat_int(1)), qi(4));
        assert_eq!(e.coeff_at(&rat_int(2)), qi(-8));
        assert_eq!(e.coeff_at(&rat_int(3)), qi(12));
        assert_eq!(e.coeff_at(&rat_int(4)), qi(-16));
        // pole at origin is rejected
        let bad = RationalFunction::new(Poly::one(), Poly::x());
        assert!(series_from_rational(&bad, &rat_int(5)).is_err());
        // identity and square maps
        let idm = RationalFunction::x();
        let e = series_from_rational(&idm, &rat_int(5)).unwrap();
        assert_eq!(e.terms(), vec![(rat_int(1), qi(1))]);
    }

    #[test]
    fn mixed_lattice() {
        let t = rat_int(3);
        let a = FracSeries::from_parts(rat(1, 2), rat(1, 2), vec![qi(1), qi(2)], t.clone());
        let b = FracSeries::from_parts(rat(1, 3), rat(1, 3), vec![qi(1), qi(4)], t.clone());
        let s = &a + &b;
        assert_eq!(*s.step(), rat(1, 6));
        assert_eq!(s.coeff_at(&rat(1, 2)), qi(1));
        assert_eq!(s.coeff_at(&rat(1, 3)), qi(1));
        assert_eq!(s.coeff_at(&rat(2, 3)), qi(4));
        assert_eq!(s.coeff_at(&rat_int(1)), qi(2));
    }

    #[test]
    fn algebra_axioms_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let t = rat_int(30);
        let random = |rng: &mut rand_chacha::ChaCha8Rng| {
            let len = rng.gen_range(1..8);
            let coeffs: Vec<QuadExt> = (0..len)
                .map(|_| QuadExt::from_rational(rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))))
                .collect();
            FracSeries::from_parts(
                rat(rng.gen_range(0..4), rng.gen_range(1..=3)),
                rat(1, rng.gen_range(1..=3)),
                coeffs,
                t.clone(),
            )
        };
        for _ in 0..60 {
            let a = random(&mut rng);
            let b = random(&mut rng);
            let c = random(&mut rng);
            let ab_c = &(&a * &b) * &c;
            let a_bc = &a * &(&b * &c);
            assert!(ab_c.first_mismatch(&a_bc).is_none(), "associativity");
            assert!((&a * &b).first_mismatch(&(&b * &a)).is_none(), "commutativity");
            let lhs = &a * &(&b + &c);
            let rhs = &(&a * &b) + &(&a * &c);
            assert!(lhs.first_mismatch(&rhs).is_none(), "distributivity");
        }
    }

    #[test]
    fn pow_addition_and_inversion_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let t = rat_int(14);
        for _ in 0..40 {
            let len = rng.gen_range(1..6);
            let mut coeffs: Vec<QuadExt> = (0..len)
                .map(|_| QuadExt::from_rational(rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))))
                .collect();
            coeffs[0] = QuadExt::one();
            let a = FracSeries::from_parts(rat_int(0), rat_int(1), coeffs, t.clone());
            let r = rat(rng.gen_range(-12..=12).max(1), rng.gen_range(1..=12));
            let s = rat(rng.gen_range(-12..=12), rng.gen_range(1..=12));
            let p1 = a.pow_rational(&r).unwrap();
            let p2 = a.pow_rational(&s).unwrap();
            let p12 = a.pow_rational(&(&r + &s)).unwrap();
            assert!((&p1 * &p2).first_mismatch(&p12).is_none(), "exponent addition");
            // (A^r)^(1/r) = A
            let back = p1.pow_rational(&(rat_int(1) / &r)).unwrap();
            assert!(back.first_mismatch(&a).is_none(), "root of power");
        }
    }
}
