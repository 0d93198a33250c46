//! Dimension formula and explicit series bases for automorphic forms on
//! genus-zero curves with finite elliptic orders.
//!
//! Two basis constructions are provided:
//! - the hypergeometric form for triangle signatures, built from the six
//!   derived parameters and a mixing constant, and
//! - the Frobenius form for general configurations, `(f1 + C f2)^k` divided
//!   by the product of `(t - a_i)` powers, with `f1`, `f2` the series
//!   solutions of the associated second-order equation.

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::poly::Poly;
use crate::algebra::rational::{rat, rat_int, Rational};
use crate::algebra::{FracSeries, QuadExt};
use crate::hypergeom::{hg_coefficients, HGParams};
use crate::schwarzian::{frobenius, indicial_exponents, Location, SchwarzianQ, SchwarzianError};

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("weight must be even, got {0}")]
    OddWeight(i64),
    #[error("signature has a cusp or an order below 2")]
    BadSignature,
    #[error("index j = {0} outside 0..{1}")]
    IndexOutOfRange(i64, i64),
    #[error("operation requires a triangle signature (three elliptic points)")]
    NotTriangle,
    #[error(transparent)]
    Schwarzian(#[from] SchwarzianError),
    #[error(transparent)]
    Hypergeom(#[from] crate::hypergeom::HgError),
}

/// Orbifold signature `(genus; e_1, ..., e_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbSignature {
    pub genus: u32,
    /// Elliptic orders, kept sorted ascending.
    pub orders: Vec<u32>,
}

impl OrbSignature {
    pub fn new(genus: u32, mut orders: Vec<u32>) -> Result<Self, FormsError> {
        if orders.iter().any(|&e| e < 2) {
            return Err(FormsError::BadSignature);
        }
        orders.sort_unstable();
        Ok(OrbSignature { genus, orders })
    }

    /// Hyperbolic covolume measure `2g - 2 + sum(1 - 1/e)`.
    pub fn covolume(&self) -> Rational {
        let mut v = rat_int(2 * self.genus as i64 - 2);
        for &e in &self.orders {
            v += rat_int(1) - rat(1, e as i64);
        }
        v
    }
}

/// Dimension of the space of weight-`k` automorphic forms for a cocompact
/// group of the given signature (`k` even).
pub fn dim_forms(sig: &OrbSignature, k: i64) -> Result<i64, FormsError> {
    if k % 2 != 0 {
        return Err(FormsError::OddWeight(k));
    }
    Ok(match k {
        _ if k < 0 => 0,
        0 => 1,
        2 => sig.genus as i64,
        _ => {
            let g = sig.genus as i64;
            let mut d = (k - 1) * (g - 1);
            for &e in &sig.orders {
                let term = rat(k, 2) * (rat_int(1) - rat(1, e as i64));
                d += term.floor().to_integer().to_i64().expect("small dimension");
            }
            d
        }
    })
}

/// The six hypergeometric parameters attached to a triangle signature
/// `(e1, e2, e3)` (орders listed at the points 0, 1, infinity):
/// `(a, b, c)` for the first solution and `(a', b', c')` for the second.
pub fn triangle_params(e1: u32, e2: u32, e3: u32) -> (HGParams, HGParams) {
    let inv = |e: u32| rat(1, e as i64);
    let a = (rat_int(1) - inv(e1) - inv(e2) - inv(e3)) / rat_int(2);
    let b = &a + inv(e3);
    let c = rat_int(1) - inv(e1);
    let a2 = &a + inv(e1);
    let b2 = &b + inv(e1);
    let c2 = &c + rat_int(2) * inv(e1);
    let mk = |a: Rational, b: Rational, c: Rational| HGParams {
        a: a.into(),
        b: b.into(),
        c: c.into(),
    };
    (mk(a, b, c), mk(a2, b2, c2))
}

/// Specification of one basis element of the weight-`k` space.
#[derive(Clone, Debug)]
pub struct FormSpec {
    /// Elliptic orders at the Hauptmodul values 0, 1 and infinity. The order
    /// matters: it fixes which point carries which exponent.
    pub orders: (u32, u32, u32),
    pub weight: i64,
    /// Mixing constant in `F + C t^(1/e1) F'`.
    pub mixing: QuadExt,
    /// Index `j` in `0 ..= d_k - 1`.
    pub index: u32,
}

fn fractional_part(x: &Rational) -> Rational {
    x - x.floor()
}

/// Basis element for a triangle signature, expanded in the Hauptmodul `t`:
/// `t^{frac(k(1-1/e1)/2)} (1-t)^{frac(k(1-1/e2)/2)} t^j (F + C t^(1/e1) F')^k`.
pub fn triangle_form(spec: &FormSpec, n: u32) -> Result<FracSeries, FormsError> {
    let k = spec.weight;
    if k % 2 != 0 {
        return Err(FormsError::OddWeight(k));
    }
    let (e1, e2, e3) = spec.orders;
    let sig = OrbSignature::new(0, vec![e1, e2, e3])?;
    let dk = dim_forms(&sig, k)?;
    if (spec.index as i64) >= dk {
        return Err(FormsError::IndexOutOfRange(spec.index as i64, dk));
    }
    let (p, p2) = triangle_params(e1, e2, e3);
    let nn = rat_int(n as i64);

    let base = FracSeries::from_parts(
        Rational::zero(),
        Rational::from_integer(1.into()),
        hg_coefficients(&p, n + 1),
        &nn + rat_int(1),
    );
    let second = FracSeries::from_parts(
        rat(1, e1 as i64),
        Rational::from_integer(1.into()),
        hg_coefficients(&p2, n + 1),
        &nn + rat_int(1),
    )
    .scale(&spec.mixing);
    let mixed = (&base + &second).pow_int(k as u32);

    let exp1 = fractional_part(&(rat(k, 2) * (rat_int(1) - rat(1, e1 as i64))));
    let exp2 = fractional_part(&(rat(k, 2) * (rat_int(1) - rat(1, e2 as i64))));
    let pref2 = FracSeries::from_poly(&Poly::from_ints(&[1, -1]), nn.clone())
        .pow_rational(&exp2)
        .expect("unit base");
    let shifted = mixed.mul_monomial(&QuadExt::one(), &(&exp1 + rat_int(spec.index as i64)));
    Ok((&shifted * &pref2).with_trunc(nn))
}

/// Basis element in the Frobenius form: `(f1 + C f2)^k / prod (t-a_i)^m_i`
/// with `m_i = floor(k (1 - 1/e_i)/2)` over the finite elliptic points of
/// `q`, expanded at the origin to exponent `n`.
pub fn schwarzian_form(
    q: &SchwarzianQ,
    k: i64,
    mixing: &QuadExt,
    n: u32,
) -> Result<FracSeries, FormsError> {
    if k % 2 != 0 || k < 4 {
        return Err(FormsError::OddWeight(k));
    }
    let (mu1, mu2) = indicial_exponents(q, &Location::Finite(QuadExt::zero()))?;
    // relative order needed after dividing by the pole part
    let rel = n as i64 + 2 + denominator_exponent_sum(q, k);
    let f1 = frobenius(q, &mu1, rel as u32)?;
    let f2 = frobenius(q, &mu2, rel as u32)?;
    let mixed = (&f1 + &f2.scale(mixing)).pow_int(k as u32);
    let mut acc = mixed;
    for (a, e, _) in &q.points {
        let m = (rat(k, 2) * (rat_int(1) - rat(1, *e as i64)))
            .floor()
            .to_integer()
            .to_i64()
            .expect("small exponent");
        if m == 0 {
            continue;
        }
        let lin = Poly::new(vec![-a.clone(), QuadExt::one()]);
        let lin_pow = FracSeries::from_poly(&lin.pow(m as u32), acc.trunc().clone());
        acc = &acc * &lin_pow.inverse().expect("nonvanishing factor at 0");
    }
    Ok(acc.with_trunc(rat_int(n as i64)))
}

fn denominator_exponent_sum(q: &SchwarzianQ, k: i64) -> i64 {
    q.points
        .iter()
        .map(|(_, e, _)| {
            (rat(k, 2) * (rat_int(1) - rat(1, *e as i64)))
                .floor()
                .to_integer()
                .to_i64()
                .unwrap()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schwarzian::{build_q, EllipticPoint, MoebiusMap};

    fn sig(genus: u32, orders: &[u32]) -> OrbSignature {
        OrbSignature::new(genus, orders.to_vec()).unwrap()
    }

    #[test]
    fn dimension_formula_printed_values() {
        assert_eq!(dim_forms(&sig(0, &[4, 6, 6]), 6).unwrap(), 1);
        assert_eq!(dim_forms(&sig(0, &[4, 4, 4]), 6).unwrap(), 1);
        assert_eq!(dim_forms(&sig(0, &[4, 4, 4, 4, 4, 4]), 6).unwrap(), 7);
        assert_eq!(dim_forms(&sig(0, &[2, 5, 5]), 8).unwrap(), 1);
        assert_eq!(dim_forms(&sig(0, &[5, 10, 10]), 8).unwrap(), 2);
        assert_eq!(dim_forms(&sig(0, &[5, 5, 5, 5]), 8).unwrap(), 5);
        assert_eq!(dim_forms(&sig(0, &[3, 3, 12]), 6).unwrap(), 1);
        // quadrilateral family: (3,3,2n,6n) at weight 6
        assert_eq!(dim_forms(&sig(0, &[3, 3, 4, 12]), 6).unwrap(), 3);
        assert_eq!(dim_forms(&sig(0, &[2, 3, 3, 6]), 6).unwrap(), 2);
        // the low-weight branches
        assert_eq!(dim_forms(&sig(0, &[2, 5, 5]), 0).unwrap(), 1);
        assert_eq!(dim_forms(&sig(2, &[3, 3, 3]), 2).unwrap(), 2);
        assert_eq!(dim_forms(&sig(0, &[2, 3, 7]), -4).unwrap(), 0);
        assert!(dim_forms(&sig(0, &[2, 3, 7]), 5).is_err());
    }

    #[test]
    fn dimension_nonnegative_and_j_range_consistency() {
        // for triangle signatures the index range of the series basis has
        // exactly dim elements: sum floor(k(1-1/e)/2) - k + 1 = dim
        for (e1, e2, e3) in [(4u32, 6u32, 6u32), (5, 2, 5), (3, 3, 12), (2, 3, 7), (4, 4, 4)] {
            for k in (4..=16i64).step_by(2) {
                let s = sig(0, &[e1, e2, e3]);
                let d = dim_forms(&s, k).unwrap();
                assert!(d >= 0);
                let mut range = 1 - k;
                for e in [e1, e2, e3] {
                    range += (rat(k, 2) * (rat_int(1) - rat(1, e as i64)))
                        .floor()
                        .to_integer()
                        .to_i64()
                        .unwrap();
                }
                assert_eq!(range, d, "signature ({e1},{e2},{e3}) weight {k}");
            }
        }
    }

    #[test]
    fn triangle_parameter_table() {
        let (p, _) = triangle_params(4, 6, 6);
        assert_eq!(p.a, QuadExt::from_rational(rat(5, 24)));
        assert_eq!(p.b, QuadExt::from_rational(rat(3, 8)));
        assert_eq!(p.c, QuadExt::from_rational(rat(3, 4)));
        let (p, p2) = triangle_params(5, 2, 5);
        assert_eq!(p.a, QuadExt::from_rational(rat(1, 20)));
        assert_eq!(p.b, QuadExt::from_rational(rat(1, 4)));
        assert_eq!(p.c, QuadExt::from_rational(rat(4, 5)));
        assert_eq!(p2.a, QuadExt::from_rational(rat(1, 4)));
        assert_eq!(p2.b, QuadExt::from_rational(rat(9, 20)));
        assert_eq!(p2.c, QuadExt::from_rational(rat(6, 5)));
        // (e,e,e) has a = (1 - 3/e)/2
        let (p, _) = triangle_params(9, 9, 9);
        assert_eq!(p.a, QuadExt::from_rational(rat(1, 3)));
    }

    #[test]
    fn triangle_form_leading_exponents() {
        let spec = FormSpec {
            orders: (4, 6, 6),
            weight: 6,
            mixing: QuadExt::zero(),
            index: 0,
        };
        let f = triangle_form(&spec, 8).unwrap();
        assert_eq!(*f.offset(), rat(1, 4));
        let spec = FormSpec {
            orders: (5, 2, 5),
            weight: 8,
            mixing: QuadExt::zero(),
            index: 0,
        };
        let f = triangle_form(&spec, 8).unwrap();
        assert_eq!(*f.offset(), rat(1, 5));
        // j shifts the exponent by exactly 1 (need a signature with dim >= 2)
        let spec = FormSpec {
            orders: (5, 5, 5),
            weight: 8,
            mixing: QuadExt::zero(),
            index: 0,
        };
        let f0 = triangle_form(&spec, 8).unwrap();
        let spec1 = FormSpec { index: 1, ..spec };
        let f1 = triangle_form(&spec1, 8).unwrap();
        assert_eq!(f1.offset() - f0.offset(), rat_int(1));
        // out-of-range index is rejected
        let bad = FormSpec { index: 99, ..spec1 };
        assert!(matches!(triangle_form(&bad, 8), Err(FormsError::IndexOutOfRange(99, _))));
    }

    #[test]
    fn triangle_form_with_zero_mixing_reduces_to_hg_series() {
        // strip prefactors, take the k-th root, recover the plain series
        let spec = FormSpec {
            orders: (4, 6, 6),
            weight: 6,
            mixing: QuadExt::zero(),
            index: 0,
        };
        let n = 10u32;
        let f = triangle_form(&spec, n).unwrap();
        let inv1 = f.mul_monomial(&QuadExt::one(), &rat(-1, 4));
        let pref2 = FracSeries::from_poly(&Poly::from_ints(&[1, -1]), rat_int(n as i64))
            .pow_rational(&rat(1, 2))
            .unwrap();
        let stripped = &inv1 * &pref2.inverse().unwrap();
        let root = stripped.pow_rational(&rat(1, 6)).unwrap();
        let (p, _) = triangle_params(4, 6, 6);
        let direct = crate::hypergeom::hg_series(&p, n);
        assert!(root.first_mismatch(&direct).is_none());
    }

    #[test]
    fn schwarzian_form_leading_exponents() {
        // pentagonal configuration at weight 8: offset 8 * 2/5 - 3*1 ... = 1/5
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 5),
            EllipticPoint::finite(QuadExt::one(), 5),
            EllipticPoint::finite(QuadExt::from_i64(-1), 5),
            EllipticPoint::at_infinity(5),
        ];
        let q = build_q(&pts, &[MoebiusMap::negation()]).unwrap();
        let g = schwarzian_form(&q, 8, &QuadExt::zero(), 6).unwrap();
        assert_eq!(*g.offset(), rat(1, 5));
        // only the pole at the origin shifts the leading exponent:
        // k mu1 - floor(k(1 - 1/e_0)/2)
        let g = schwarzian_form(&q, 6, &QuadExt::zero(), 6).unwrap();
        assert_eq!(*g.offset(), rat(6, 1) * rat(2, 5) - rat_int(2));

        // hexagonal configuration at weight 6: offset 6 * 3/8 - 2*... = 1/4
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 4),
            EllipticPoint::finite(QuadExt::one(), 4),
            EllipticPoint::finite(QuadExt::from_i64(-1), 4),
            EllipticPoint::finite(QuadExt::from_rational(rat(1, 3)), 4),
            EllipticPoint::finite(QuadExt::from_rational(rat(-1, 3)), 4),
            EllipticPoint::at_infinity(4),
        ];
        let rot = MoebiusMap::new(
            QuadExt::from_i64(3),
            QuadExt::one(),
            QuadExt::from_i64(-3),
            QuadExt::from_i64(3),
        )
        .unwrap();
        let q6 = build_q(&pts, &[MoebiusMap::negation(), rot]).unwrap();
        let g = schwarzian_form(&q6, 6, &QuadExt::one(), 6).unwrap();
        assert_eq!(*g.offset(), rat(1, 4));
    }
}
