//! Dense univariate polynomials over a quadratic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::quad::QuadExt;


/// Polynomial with coefficients in Q(√d); index = degree.
///
/// The zero polynomial has an empty coefficient vector; otherwise the
/// trailing (leading-degree) coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<QuadExt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<QuadExt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(QuadExt::one())
    }

    pub fn constant(c: QuadExt) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * x^n`.
    pub fn monomial(c: QuadExt, n: usize) -> Self {
        let mut v = vec![QuadExt::zero(); n + 1];
        v[n] = c;
        Poly::new(v)
    }

    /// `x` itself.
    pub fn x() -> Self {
        Poly::monomial(QuadExt::one(), 1)
    }

    /// Builds from small integer coefficients, index = degree.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| QuadExt::from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial by convention (query `is_zero`).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QuadExt {
        self.coeffs.get(i).cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn leading(&self) -> QuadExt {
        self.coeffs.last().cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn eval(&self, x: &QuadExt) -> QuadExt {
        let mut acc = QuadExt::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| &QuadExt::from_i64((i + 1) as i64) * c)
                .collect(),
        )
    }

    pub fn scale(&self, k: &QuadExt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Makes the leading coefficient 1 (no-op on zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.inv().expect("nonzero leading coefficient"))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = div.leading().inv().unwrap();
        let mut q = vec![QuadExt::zero(); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] * &lead_inv;
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = &f * dc;
                rem[i - dd + j] = &rem[i - dd + j] - &t;
            }
            q[i - dd] = f;
        }
        (Poly::new(q), Poly::new(rem))
    }

    /// Monic greatest common divisor (Euclid over the field).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(div);
        r.is_zero().then_some(q)
    }

    /// Squarefree part `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's squarefree decomposition: `(factor, multiplicity)` pairs with
    /// pairwise-coprime squarefree monic factors, `self ~ prod f_i^{m_i}`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = vec![];
        if self.is_zero() || self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a).unwrap();
        let c = df.div_exact(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while b.degree() > 0 {
            let ai = b.gcd(&d);
            if ai.degree() > 0 {
                out.push((ai.monic(), i));
            }
            b = b.div_exact(&ai).unwrap();
            let cc = d.div_exact(&ai).unwrap();
            d = &cc - &b.derivative();
            i += 1;
        }
        out
    }

    /// Multiplicity of `root` in `self` (0 if not a root).
    pub fn root_multiplicity(&self, root: &QuadExt) -> u32 {
        let lin = Poly::new(vec![-root.clone(), QuadExt::one()]);
        let mut m = 0;
        let mut p = self.clone();
        while !p.is_zero() && p.degree() >= 1 {
            match p.div_exact(&lin) {
                Some(q) if p.eval(root).is_zero() => {
                    m += 1;
                    p = q;
                }
                _ => break,
            }
        }
        m
    }

    /// Conjugates every coefficient.
    pub fn conjugate(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.conjugate()).collect())
    }

    /// True if every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    /// Substitutes `x -> (a x + b) / (c x + d)` and clears denominators:
    /// returns `(c x + d)^deg * self((a x + b)/(c x + d))`.
    pub fn moebius_substitute(&self, a: &QuadExt, b: &QuadExt, c: &QuadExt, d: &QuadExt) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let n = self.degree();
        let num = Poly::new(vec![b.clone(), a.clone()]);
        let den = Poly::new(vec![d.clone(), c.clone()]);
        let mut acc = Poly::zero();
        let mut num_pow = Poly::one();
        let mut den_pows: Vec<Poly> = Vec::with_capacity(n + 1);
        let mut dp = Poly::one();
        for _ in 0..=n {
            den_pows.push(dp.clone());
            dp = &dp * &den;
        }
        for (i, coef) in self.coeffs.iter().enumerate() {
            if !coef.is_zero() {
                acc = &acc + &(&num_pow * &den_pows[n - i]).scale(coef);
            }
            if i < n {
                num_pow = &num_pow * &num;
            }
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(&self.coeff(i) + &rhs.coeff(i));
        }
        Poly::new(v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![QuadExt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Poly::new(v)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a polynomial from a JSON array of scalar strings (index = degree).
pub fn poly_from_scalar_strings(strings: &[String]) -> Result<Poly, super::AlgebraError> {
    let mut v = Vec::with_capacity(strings.len());
    for s in strings {
        v.push(super::quad::parse_quadext(s)?);
    }
    Ok(Poly::new(v))
}

/// Serialises a polynomial as scalar strings, index = degree.
pub fn poly_to_scalar_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// Evaluates a polynomial at a complex point via an embedding of its
/// coefficients.
pub fn eval_complex(
    p: &Poly,
    z: &super::complexval::ComplexApprox,
    branch: super::complexval::EmbedBranch,
) -> super::complexval::ComplexApprox {
    use super::complexval::{embed_quadext, ComplexApprox};
    let prec = z.precision();
    let mut acc = ComplexApprox::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&embed_quadext(c, branch, prec));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn division_and_gcd() {
        // (x^2-1) = (x-1)(x+1)
        let p = Poly::from_ints(&[-1, 0, 1]);
        let a = Poly::from_ints(&[-1, 1]);
        let b = Poly::from_ints(&[1, 1]);
        assert_eq!(&a * &b, p);
        let (q, r) = p.div_rem(&a);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(p.gcd(&a), a.monic());
        // gcd of coprime polys is 1
        assert_eq!(a.gcd(&b).degree(), 0);
    }

    #[test]
    fn multiplicity() {
        // (x-2)^3 (x+1)
        let p = Poly::from_ints(&[-2, 1]).pow(3);
        let p = &p * &Poly::from_ints(&[1, 1]);
        assert_eq!(p.root_multiplicity(&QuadExt::from_i64(2)), 3);
        assert_eq!(p.root_multiplicity(&QuadExt::from_i64(-1)), 1);
        assert_eq!(p.root_multiplicity(&QuadExt::from_i64(5)), 0);
    }

    #[test]
    fn moebius_substitution() {
        // p(x) = x^2 + 1 under x -> (x-1)/(x+1):
        // (x+1)^2 p((x-1)/(x+1)) = (x-1)^2 + (x+1)^2 = 2x^2 + 2
        let p = Poly::from_ints(&[1, 0, 1]);
        let one = QuadExt::one();
        let m = p.moebius_substitute(&one, &QuadExt::from_i64(-1), &one, &one);
        assert_eq!(m, Poly::from_ints(&[2, 0, 2]));
    }

    #[test]
    fn squarefree() {
        let p = &Poly::from_ints(&[-1, 1]).pow(3) * &Poly::from_ints(&[1, 0, 1]);
        let sf = p.squarefree_part();
        // (x-1)(x^2+1)
        assert_eq!(sf, (&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[1, 0, 1])).monic());
    }

    #[test]
    fn quadext_coefficients() {
        let alpha = QuadExt::sqrt_d(-3).unwrap();
        // (x - alpha)(x + alpha) = x^2 + 3
        let a = Poly::new(vec![-alpha.clone(), QuadExt::one()]);
        let b = Poly::new(vec![alpha.clone(), QuadExt::one()]);
        assert_eq!(&a * &b, Poly::from_ints(&[3, 0, 1]));
        assert_eq!(a.conjugate().coeff(0), alpha);
        assert_eq!(a.eval(&alpha), QuadExt::zero());
    }

    #[test]
    fn scalar_string_round_trip() {
        let p = Poly::new(vec![
            QuadExt::from_rational(rat(1, 2)),
            QuadExt::new(-2, rat(0, 1), rat(1, 1)).unwrap(),
            QuadExt::from_i64(-3),
        ]);
        let ss = poly_to_scalar_strings(&p);
        assert_eq!(poly_from_scalar_strings(&ss).unwrap(), p);
    }
}
