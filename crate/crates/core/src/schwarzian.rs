//! The rational coefficient Q(t) of the second-order equation f'' + Q f = 0
//! attached to a genus-zero curve with prescribed elliptic points.
//!
//! Q(t) has a double pole with known coefficient (1 - 1/e^2)/4 at every
//! finite elliptic point and unknown residues constrained by linear moment
//! relations plus, optionally, functional equations coming from Moebius
//! symmetries of the configuration. This module solves for the residues,
//! produces Frobenius series solutions at the origin, and computes
//! automorphic derivatives of rational maps.

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::linalg::{solve_linear, LinearSolution};
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RationalFunction;
use crate::algebra::rational::{rat, rat_int, Rational};
use crate::algebra::{FracSeries, QuadExt};

#[derive(Debug, Error)]
pub enum SchwarzianError {
    #[error("point locations must be pairwise distinct")]
    DuplicatePoints,
    #[error("at most one elliptic point may sit at infinity")]
    TwoInfinitePoints,
    #[error("elliptic orders must be at least 2")]
    BadOrder,
    #[error("symmetry does not permute the elliptic points: {0}")]
    NotASymmetry(String),
    #[error("residue system is underdetermined: needs more symmetry ({0} degrees of freedom left)")]
    Underdetermined(usize),
    #[error("residue system is inconsistent")]
    Contradiction,
    #[error("{0} is not a singular point of Q")]
    NotSingular(String),
    #[error("{0} is not an indicial exponent at the origin")]
    NotIndicial(String),
    #[error("automorphic derivative of a constant map")]
    ConstantMap,
    #[error("Frobenius expansion requires an elliptic point at the origin")]
    NoPointAtOrigin,
    #[error("degenerate Moebius map (zero determinant)")]
    DegenerateMap,
}

/// Location of an elliptic point on the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Finite(QuadExt),
    Infinity,
}

/// An elliptic point: a location and the order of its isotropy group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticPoint {
    pub location: Location,
    pub order: u32,
}

impl EllipticPoint {
    pub fn finite(v: QuadExt, order: u32) -> Self {
        EllipticPoint { location: Location::Finite(v), order }
    }

    pub fn at_infinity(order: u32) -> Self {
        EllipticPoint { location: Location::Infinity, order }
    }
}

/// A fractional-linear map `z -> (a z + b) / (c z + d)` with `ad - bc != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap {
    pub a: QuadExt,
    pub b: QuadExt,
    pub c: QuadExt,
    pub d: QuadExt,
}

impl MoebiusMap {
    pub fn new(a: QuadExt, b: QuadExt, c: QuadExt, d: QuadExt) -> Result<Self, SchwarzianError> {
        let m = MoebiusMap { a, b, c, d };
        if m.det().is_zero() {
            return Err(SchwarzianError::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: QuadExt::one(),
            b: QuadExt::zero(),
            c: QuadExt::zero(),
            d: QuadExt::one(),
        }
    }

    /// `z -> -z`.
    pub fn negation() -> Self {
        MoebiusMap {
            a: -&QuadExt::one(),
            b: QuadExt::zero(),
            c: QuadExt::zero(),
            d: QuadExt::one(),
        }
    }

    pub fn det(&self) -> QuadExt {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn apply(&self, z: &Location) -> Location {
        match z {
            Location::Infinity => {
                if self.c.is_zero() {
                    Location::Infinity
                } else {
                    Location::Finite(&self.a / &self.c)
                }
            }
            Location::Finite(v) => {
                let den = &(&self.c * v) + &self.d;
                if den.is_zero() {
                    Location::Infinity
                } else {
                    Location::Finite(&(&(&self.a * v) + &self.b) / &den)
                }
            }
        }
    }

    /// The map as a rational function of z.
    pub fn as_ratfunc(&self) -> RationalFunction {
        RationalFunction::new(
            Poly::new(vec![self.b.clone(), self.a.clone()]),
            Poly::new(vec![self.d.clone(), self.c.clone()]),
        )
    }

    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
        }
    }
}

/// The solved coefficient function Q(t): double-pole data and residues at
/// the finite elliptic points, plus the order of an optional point at
/// infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwarzianQ {
    /// `(location, order, residue)` per finite elliptic point.
    pub points: Vec<(QuadExt, u32, QuadExt)>,
    pub infinity_order: Option<u32>,
}

impl SchwarzianQ {
    /// Double-pole coefficient `(1 - 1/e^2)/4`.
    pub fn double_pole_coeff(order: u32) -> Rational {
        let e2 = rat_int(order as i64 * order as i64);
        (rat_int(1) - rat_int(1) / e2) / rat_int(4)
    }

    /// Q as an explicit rational function of t.
    pub fn as_ratfunc(&self) -> RationalFunction {
        let mut acc = RationalFunction::from_poly(Poly::zero());
        for (a, e, b) in &self.points {
            let lin = Poly::new(vec![-a.clone(), QuadExt::one()]);
            let q = QuadExt::from_rational(Self::double_pole_coeff(*e));
            acc = &acc
                + &RationalFunction::new(Poly::constant(q), &lin * &lin);
            acc = &acc + &RationalFunction::new(Poly::constant(b.clone()), lin);
        }
        acc
    }

    /// Residues in the order the points were supplied.
    pub fn residues(&self) -> Vec<QuadExt> {
        self.points.iter().map(|(_, _, b)| b.clone()).collect()
    }

    fn order_at(&self, at: &Location) -> Option<u32> {
        match at {
            Location::Infinity => self.infinity_order,
            Location::Finite(v) => self
                .points
                .iter()
                .find(|(a, _, _)| a == v)
                .map(|(_, e, _)| *e),
        }
    }
}

/// A polynomial whose coefficients are affine-linear forms in the unknown
/// residues: `constant + sum_j B_j * basis[j]`.
#[derive(Clone)]
struct LinPoly {
    constant: Poly,
    basis: Vec<Poly>,
}

impl LinPoly {
    fn mul_poly(&self, p: &Poly) -> LinPoly {
        LinPoly {
            constant: &self.constant * p,
            basis: self.basis.iter().map(|q| q * p).collect(),
        }
    }

    fn add(&self, other: &LinPoly) -> LinPoly {
        LinPoly {
            constant: &self.constant + &other.constant,
            basis: self
                .basis
                .iter()
                .zip(&other.basis)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Formal-degree Moebius substitution applied to every component.
    fn moebius_substitute(&self, g: &MoebiusMap, formal_deg: usize) -> LinPoly {
        let sub = |p: &Poly| -> Poly {
            let raw = p.moebius_substitute(&g.a, &g.b, &g.c, &g.d);
            let deg = if p.is_zero() { 0 } else { p.degree() };
            let pad = Poly::new(vec![g.d.clone(), g.c.clone()]).pow((formal_deg - deg) as u32);
            &raw * &pad
        };
        LinPoly { constant: sub(&self.constant), basis: self.basis.iter().map(sub).collect() }
    }
}

/// Solves for the residues of Q(t) given the elliptic points and a list of
/// Moebius symmetries of the configuration.
///
/// The moment relations always apply; each symmetry `g` adds the linear
/// constraints obtained by clearing denominators in the functional equation
/// `det(g)^2 / (c x + d)^4 * Q(g x) = Q(x)` and equating coefficients.
pub fn build_q(
    points: &[EllipticPoint],
    symmetries: &[MoebiusMap],
) -> Result<SchwarzianQ, SchwarzianError> {
    // validate configuration
    let mut finite: Vec<(QuadExt, u32)> = vec![];
    let mut infinity_order = None;
    for p in points {
        if p.order < 2 {
            return Err(SchwarzianError::BadOrder);
        }
        match &p.location {
            Location::Infinity => {
                if infinity_order.replace(p.order).is_some() {
                    return Err(SchwarzianError::TwoInfinitePoints);
                }
            }
            Location::Finite(v) => {
                if finite.iter().any(|(w, _)| w == v) {
                    return Err(SchwarzianError::DuplicatePoints);
                }
                finite.push((v.clone(), p.order));
            }
        }
    }
    let r = finite.len();
    let locations: Vec<Location> = points.iter().map(|p| p.location.clone()).collect();
    for g in symmetries {
        for loc in &locations {
            let img = g.apply(loc);
            if !locations.contains(&img) {
                return Err(SchwarzianError::NotASymmetry(format!("{g:?}")));
            }
        }
    }

    let q_of = |e: u32| QuadExt::from_rational(SchwarzianQ::double_pole_coeff(e));

    // moment relations
    let mut rows: Vec<(Vec<QuadExt>, QuadExt)> = vec![];
    let row_sum = (vec![QuadExt::one(); r], QuadExt::zero());
    rows.push(row_sum);
    {
        // sum(a_j B_j) = rhs
        let coeffs: Vec<QuadExt> = finite.iter().map(|(a, _)| a.clone()).collect();
        let q_sum = finite
            .iter()
            .fold(QuadExt::zero(), |acc, (_, e)| &acc + &q_of(*e));
        let rhs = match infinity_order {
            Some(e_inf) => &q_of(e_inf) - &q_sum,
            None => -&q_sum,
        };
        rows.push((coeffs, rhs));
    }
    if infinity_order.is_none() {
        // sum(a_j^2 B_j) = -sum( a_j (1 - 1/e_j^2)/2 )
        let coeffs: Vec<QuadExt> = finite.iter().map(|(a, _)| a * a).collect();
        let rhs = -&finite.iter().fold(QuadExt::zero(), |acc, (a, e)| {
            &acc + &(&(a * &q_of(*e)) * &QuadExt::from_i64(2))
        });
        rows.push((coeffs, rhs));
    }

    // numerator of Q over the common denominator D = prod (x - a_j)^2,
    // as a linear form in the residues
    let lin_factors: Vec<Poly> = finite
        .iter()
        .map(|(a, _)| Poly::new(vec![-a.clone(), QuadExt::one()]))
        .collect();
    let squares: Vec<Poly> = lin_factors.iter().map(|l| l * l).collect();
    let mut denom = Poly::one();
    for s in &squares {
        denom = &denom * s;
    }
    let mut numer = LinPoly { constant: Poly::zero(), basis: vec![Poly::zero(); r] };
    for j in 0..r {
        let mut rest = Poly::one();
        for (i, s) in squares.iter().enumerate() {
            if i != j {
                rest = &rest * s;
            }
        }
        numer.constant = &numer.constant + &rest.scale(&q_of(finite[j].1));
        numer.basis[j] = &lin_factors[j] * &rest;
    }
    let n_deg = 2 * r.saturating_sub(1) + 1; // formal degree 2r-1
    let d_deg = 2 * r;

    for g in symmetries {
        // det^2 N^g (cx+d) D - (cx+d)^4 N D^g = 0, coefficientwise
        let det2 = g.det().powi(2).expect("nonzero determinant");
        let cxd = Poly::new(vec![g.d.clone(), g.c.clone()]);
        let n_sub = numer.moebius_substitute(g, n_deg);
        let d_sub = {
            let raw = denom.moebius_substitute(&g.a, &g.b, &g.c, &g.d);
            let pad = cxd.pow((d_deg - denom.degree()) as u32);
            &raw * &pad
        };
        let lhs = n_sub
            .mul_poly(&cxd)
            .mul_poly(&denom)
            .mul_poly(&Poly::constant(det2));
        let rhs = numer.mul_poly(&cxd.pow(4)).mul_poly(&d_sub);
        let diff = lhs.add(&LinPoly {
            constant: -&rhs.constant,
            basis: rhs.basis.iter().map(|p| -p).collect(),
        });
        let max_deg = diff
            .basis
            .iter()
            .chain(std::iter::once(&diff.constant))
            .map(|p| if p.is_zero() { 0 } else { p.degree() })
            .max()
            .unwrap_or(0);
        for k in 0..=max_deg {
            let coeffs: Vec<QuadExt> = diff.basis.iter().map(|p| p.coeff(k)).collect();
            let rhs = -&diff.constant.coeff(k);
            if coeffs.iter().all(|c| c.is_zero()) && rhs.is_zero() {
                continue;
            }
            rows.push((coeffs, rhs));
        }
    }

    match solve_linear(&rows, r) {
        LinearSolution::Unique(b) => {
            let q = SchwarzianQ {
                points: finite
                    .iter()
                    .zip(b)
                    .map(|((a, e), b)| (a.clone(), *e, b))
                    .collect(),
                infinity_order,
            };
            debug_assert!(moment_constraints_hold(&q));
            Ok(q)
        }
        LinearSolution::Underdetermined(k) => Err(SchwarzianError::Underdetermined(k)),
        LinearSolution::Inconsistent => Err(SchwarzianError::Contradiction),
    }
}

/// Re-checks the moment relations on a solved Q (used as a post-condition).
pub fn moment_constraints_hold(q: &SchwarzianQ) -> bool {
    let q_of = |e: u32| QuadExt::from_rational(SchwarzianQ::double_pole_coeff(e));
    let sum_b = q
        .points
        .iter()
        .fold(QuadExt::zero(), |acc, (_, _, b)| &acc + b);
    if !sum_b.is_zero() {
        return false;
    }
    let first = q.points.iter().fold(QuadExt::zero(), |acc, (a, e, b)| {
        &acc + &(&(a * b) + &q_of(*e))
    });
    match q.infinity_order {
        Some(e) => {
            if first != q_of(e) {
                return false;
            }
        }
        None => {
            if !first.is_zero() {
                return false;
            }
            let second = q.points.iter().fold(QuadExt::zero(), |acc, (a, e, b)| {
                let t = &(a * a) * b;
                let u = &(a * &q_of(*e)) * &QuadExt::from_i64(2);
                &acc + &(&t + &u)
            });
            if !second.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Indicial exponents `(1 ± 1/e)/2` of `f'' + Q f = 0` at a singular point,
/// smaller first.
pub fn indicial_exponents(
    q: &SchwarzianQ,
    at: &Location,
) -> Result<(Rational, Rational), SchwarzianError> {
    let e = q
        .order_at(at)
        .ok_or_else(|| SchwarzianError::NotSingular(format!("{at:?}")))?;
    let inv = rat(1, e as i64);
    Ok((
        (rat_int(1) - &inv) / rat_int(2),
        (rat_int(1) + &inv) / rat_int(2),
    ))
}

/// Laurent coefficients of `A(z) = z^2 Q(z)` at the origin, to order `n`
/// (exclusive). Requires an elliptic point at 0.
fn origin_expansion(q: &SchwarzianQ, n: usize) -> Result<Vec<QuadExt>, SchwarzianError> {
    let mut a_coeffs = vec![QuadExt::zero(); n];
    let mut saw_origin = false;
    for (a, e, b) in &q.points {
        let qv = QuadExt::from_rational(SchwarzianQ::double_pole_coeff(*e));
        if a.is_zero() {
            saw_origin = true;
            a_coeffs[0] = &a_coeffs[0] + &qv;
            if n > 1 {
                a_coeffs[1] = &a_coeffs[1] + b;
            }
        } else {
            // q z^2/(z-a)^2 = q sum (k+1) z^{k+2} / a^{k+2}
            // b z^2/(z-a)   = -b sum z^{k+2} / a^{k+1}
            let inv_a = a.inv().expect("nonzero");
            let mut inv_pow = &inv_a * &inv_a; // a^{-2}
            for k in 0..n.saturating_sub(2) {
                let t1 = &(&qv * &QuadExt::from_i64((k + 1) as i64)) * &inv_pow;
                let t2 = &(b * &inv_pow) * a; // b / a^{k+1}
                a_coeffs[k + 2] = &(&a_coeffs[k + 2] + &t1) - &t2;
                inv_pow = &inv_pow * &inv_a;
            }
        }
    }
    if !saw_origin {
        return Err(SchwarzianError::NoPointAtOrigin);
    }
    Ok(a_coeffs)
}

/// Frobenius solution `z^mu (1 + c_1 z + ...)` of `f'' + Q f = 0` at the
/// origin, truncated at relative order `n`.
pub fn frobenius(q: &SchwarzianQ, mu: &Rational, n: u32) -> Result<FracSeries, SchwarzianError> {
    let a = origin_expansion(q, n as usize + 1)?;
    // mu must solve mu(mu-1) + A_0 = 0
    let mu_q = QuadExt::from_rational(mu.clone());
    let indicial = &(&mu_q * &(&mu_q - &QuadExt::one())) + &a[0];
    if !indicial.is_zero() {
        return Err(SchwarzianError::NotIndicial(format!("{mu}")));
    }
    let mut c = vec![QuadExt::zero(); n as usize];
    c[0] = QuadExt::one();
    for k in 1..n as usize {
        let mut s = QuadExt::zero();
        for i in 1..=k {
            if !a[i].is_zero() {
                s = &s + &(&a[i] * &c[k - i]);
            }
        }
        // denominator (mu+k)(mu+k-1) + A_0 = k (2 mu + k - 1)
        let den = QuadExt::from_rational(
            rat_int(k as i64) * (rat_int(2) * mu + rat_int(k as i64 - 1)),
        );
        assert!(!den.is_zero(), "resonant indicial roots");
        c[k] = -&(&s / &den);
    }
    Ok(FracSeries::from_parts(
        mu.clone(),
        Rational::from_integer(1.into()),
        c,
        mu + rat_int(n as i64),
    ))
}

/// Residual `f'' + Q f` of a candidate series solution, computed as
/// `(z^2 f'' + A f) / z^2` with the exact Laurent data of Q.
pub fn frobenius_residual(q: &SchwarzianQ, f: &FracSeries) -> Result<FracSeries, SchwarzianError> {
    let rel = f.trunc() - f.offset();
    let n = rel.to_integer().to_usize().unwrap_or(0) + 2;
    let a = origin_expansion(q, n)?;
    let two = rat_int(2);
    let f2 = f.derivative().derivative().mul_monomial(&QuadExt::one(), &two);
    let a_series = FracSeries::from_parts(
        Rational::zero(),
        Rational::from_integer(1.into()),
        a,
        rat_int(n as i64),
    );
    let sum = &f2 + &(&a_series * f);
    Ok(sum.mul_monomial(&QuadExt::one(), &-two))
}

/// The automorphic derivative `D(f, z) = -{f, z} / (2 f'(z)^2)` of a
/// nonconstant rational map, as an exact rational function.
pub fn automorphic_derivative(f: &RationalFunction) -> Result<RationalFunction, SchwarzianError> {
    if f.is_constant() {
        return Err(SchwarzianError::ConstantMap);
    }
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    // {f, z} = f'''/f' - (3/2) (f''/f')^2
    let r1 = &f3 / &f1;
    let r2 = &f2 / &f1;
    let three_half = RationalFunction::constant(QuadExt::from_rational(rat(3, 2)));
    let schwarzian = &r1 - &(&three_half * &(&r2 * &r2));
    let two = RationalFunction::constant(QuadExt::from_i64(2));
    Ok(&(-&schwarzian) / &(&two * &(&f1 * &f1)))
}

/// Exact test of the functional equation
/// `det(g)^2 / (c x + d)^4 * R(g x) = R(x)`.
pub fn check_symmetry(r: &RationalFunction, g: &MoebiusMap) -> bool {
    let det2 = g.det().powi(2).expect("nonzero determinant");
    let composed = r.compose(&g.as_ratfunc());
    let cxd = Poly::new(vec![g.d.clone(), g.c.clone()]);
    let lhs = &composed * &RationalFunction::new(Poly::constant(det2), cxd.pow(4));
    lhs == *r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qx(n: i64, d: i64) -> QuadExt {
        QuadExt::from_rational(rat(n, d))
    }

    fn pentagonal_q() -> SchwarzianQ {
        // points 0, 1, -1 of order 5 plus infinity of order 5, symmetric
        // under z -> -z
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 5),
            EllipticPoint::finite(QuadExt::one(), 5),
            EllipticPoint::finite(QuadExt::from_i64(-1), 5),
            EllipticPoint::at_infinity(5),
        ];
        build_q(&pts, &[MoebiusMap::negation()]).unwrap()
    }

    fn hexagonal_q() -> SchwarzianQ {
        // points 0, ±1, ±1/3 of order 4 plus infinity of order 4
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 4),
            EllipticPoint::finite(QuadExt::one(), 4),
            EllipticPoint::finite(QuadExt::from_i64(-1), 4),
            EllipticPoint::finite(qx(1, 3), 4),
            EllipticPoint::finite(qx(-1, 3), 4),
            EllipticPoint::at_infinity(4),
        ];
        let rot = MoebiusMap::new(
            QuadExt::from_i64(3),
            QuadExt::one(),
            QuadExt::from_i64(-3),
            QuadExt::from_i64(3),
        )
        .unwrap();
        build_q(&pts, &[MoebiusMap::negation(), rot]).unwrap()
    }

    #[test]
    fn pentagonal_residues() {
        let q = pentagonal_q();
        assert_eq!(
            q.residues(),
            vec![QuadExt::zero(), qx(-6, 25), qx(6, 25)]
        );
        assert!(moment_constraints_hold(&q));
    }

    #[test]
    fn hexagonal_residues() {
        let q = hexagonal_q();
        assert_eq!(
            q.residues(),
            vec![QuadExt::zero(), qx(-45, 128), qx(45, 128), qx(-45, 128), qx(45, 128)]
        );
        assert!(moment_constraints_hold(&q));
    }

    #[test]
    fn triangle_without_symmetry() {
        // 0, 1 of order 4 and infinity of order 4: two relations suffice
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 4),
            EllipticPoint::finite(QuadExt::one(), 4),
            EllipticPoint::at_infinity(4),
        ];
        let q = build_q(&pts, &[]).unwrap();
        assert_eq!(q.residues(), vec![qx(15, 64), qx(-15, 64)]);
    }

    #[test]
    fn underdetermined_without_symmetry() {
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 5),
            EllipticPoint::finite(QuadExt::one(), 5),
            EllipticPoint::finite(QuadExt::from_i64(-1), 5),
            EllipticPoint::at_infinity(5),
        ];
        match build_q(&pts, &[]) {
            Err(SchwarzianError::Underdetermined(1)) => {}
            other => panic!("expected 1 leftover dof, got {other:?}"),
        }
    }

    #[test]
    fn non_symmetry_rejected() {
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 5),
            EllipticPoint::finite(QuadExt::one(), 5),
            EllipticPoint::at_infinity(5),
        ];
        // z -> z + 1 does not permute {0, 1, inf}
        let shift = MoebiusMap::new(
            QuadExt::one(),
            QuadExt::one(),
            QuadExt::zero(),
            QuadExt::one(),
        )
        .unwrap();
        assert!(matches!(
            build_q(&pts, &[shift]),
            Err(SchwarzianError::NotASymmetry(_))
        ));
    }

    #[test]
    fn indicial_exponent_table() {
        let q = hexagonal_q();
        let at = Location::Finite(QuadExt::zero());
        assert_eq!(indicial_exponents(&q, &at).unwrap(), (rat(3, 8), rat(5, 8)));
        let q5 = pentagonal_q();
        assert_eq!(
            indicial_exponents(&q5, &Location::Finite(QuadExt::zero())).unwrap(),
            (rat(2, 5), rat(3, 5))
        );
        // e = 2 gives (1/4, 3/4)
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 2),
            EllipticPoint::finite(QuadExt::one(), 4),
            EllipticPoint::at_infinity(4),
        ];
        let q2 = build_q(&pts, &[]).unwrap();
        assert_eq!(
            indicial_exponents(&q2, &Location::Finite(QuadExt::zero())).unwrap(),
            (rat(1, 4), rat(3, 4))
        );
        assert!(indicial_exponents(&q2, &Location::Finite(qx(1, 2))).is_err());
    }

    #[test]
    fn frobenius_pentagonal_printed_coefficients() {
        let q = pentagonal_q();
        let f1 = frobenius(&q, &rat(2, 5), 12).unwrap();
        let expect1 = [
            (2, rat(-4, 15)),
            (4, rat(-52, 475)),
            (6, rat(-13436, 206625)),
            (8, rat(-46348, 1033125)),
            (10, rat(-2024924, 60265625)),
        ];
        for (k, v) in expect1 {
            let e = rat(2, 5) + rat_int(k);
            assert_eq!(f1.coeff_at(&e), QuadExt::from_rational(v), "f1 z^{k}");
        }
        let f2 = frobenius(&q, &rat(3, 5), 12).unwrap();
        let expect2 = [
            (2, rat(-12, 55)),
            (4, rat(-28, 275)),
            (6, rat(-2708, 42625)),
            (8, rat(-393636, 8738125)),
            (10, rat(-7503908, 218453125)),
        ];
        for (k, v) in expect2 {
            let e = rat(3, 5) + rat_int(k);
            assert_eq!(f2.coeff_at(&e), QuadExt::from_rational(v), "f2 z^{k}");
        }
    }

    #[test]
    fn frobenius_hexagonal_printed_coefficients() {
        let q = hexagonal_q();
        let f1 = frobenius(&q, &rat(3, 8), 12).unwrap();
        let expect1 = [
            (2, rat(-15, 7)),
            (4, rat(-111, 14)),
            (6, rat(-2045, 46)),
            (8, rat(-11355195, 39928)),
            (10, rat(-77997477, 39928)),
        ];
        for (k, v) in expect1 {
            let e = rat(3, 8) + rat_int(k);
            assert_eq!(f1.coeff_at(&e), QuadExt::from_rational(v), "f1 z^{k}");
        }
        let f2 = frobenius(&q, &rat(5, 8), 12).unwrap();
        let expect2 = [
            (2, rat(-5, 3)),
            (4, rat(-245, 34)),
            (6, rat(-7269, 170)),
            (8, rat(-115223, 408)),
            (10, rat(-55230121, 27880)),
        ];
        for (k, v) in expect2 {
            let e = rat(5, 8) + rat_int(k);
            assert_eq!(f2.coeff_at(&e), QuadExt::from_rational(v), "f2 z^{k}");
        }
    }

    #[test]
    fn frobenius_residual_vanishes() {
        for q in [pentagonal_q(), hexagonal_q()] {
            for mu in [
                indicial_exponents(&q, &Location::Finite(QuadExt::zero())).unwrap().0,
                indicial_exponents(&q, &Location::Finite(QuadExt::zero())).unwrap().1,
            ] {
                let f = frobenius(&q, &mu, 20).unwrap();
                let r = frobenius_residual(&q, &f).unwrap();
                for (e, c) in r.terms() {
                    assert!(
                        e >= f.trunc() - rat_int(2),
                        "nonzero residual at {e}: {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_pure_double_pole() {
        // Q = mu(1-mu)/z^2 alone: solution exactly z^mu
        let pts = vec![
            EllipticPoint::finite(QuadExt::zero(), 4),
            EllipticPoint::finite(QuadExt::one(), 4),
            EllipticPoint::at_infinity(4),
        ];
        let mut q = build_q(&pts, &[]).unwrap();
        // strip everything but the double pole at 0
        q.points.truncate(1);
        q.points[0].2 = QuadExt::zero();
        let f = frobenius(&q, &rat(3, 8), 10).unwrap();
        assert_eq!(f.terms().len(), 1);
        assert_eq!(*f.offset(), rat(3, 8));
    }

    #[test]
    fn automorphic_derivative_values() {
        // any Moebius map has derivative zero
        let m = MoebiusMap::new(
            QuadExt::from_i64(2),
            QuadExt::one(),
            QuadExt::from_i64(3),
            QuadExt::from_i64(-1),
        )
        .unwrap();
        let d = automorphic_derivative(&m.as_ratfunc()).unwrap();
        assert!(d.is_zero());
        // f = z^2 -> 3/(16 z^4), stored with monic denominator
        let f = RationalFunction::from_poly(Poly::from_ints(&[0, 0, 1]));
        let d = automorphic_derivative(&f).unwrap();
        assert_eq!(d.num(), &Poly::new(vec![qx(3, 16)]));
        assert_eq!(d.den(), &Poly::from_ints(&[0, 0, 0, 0, 1]));
        // constants are rejected
        assert!(automorphic_derivative(&RationalFunction::constant(QuadExt::one())).is_err());
    }

    #[test]
    fn symmetry_check_on_solved_q() {
        let q = hexagonal_q();
        let r = q.as_ratfunc();
        let rot = MoebiusMap::new(
            QuadExt::from_i64(3),
            QuadExt::one(),
            QuadExt::from_i64(-3),
            QuadExt::from_i64(3),
        )
        .unwrap();
        assert!(check_symmetry(&r, &MoebiusMap::negation()));
        assert!(check_symmetry(&r, &rot));
        assert!(check_symmetry(&r, &MoebiusMap::identity()));
        // z -> z + 1 is not a symmetry
        let shift = MoebiusMap::new(
            QuadExt::one(),
            QuadExt::one(),
            QuadExt::zero(),
            QuadExt::one(),
        )
        .unwrap();
        assert!(!check_symmetry(&r, &shift));
    }

    #[test]
    fn chain_rule_properties() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            // random rational f of degree <= 3
            let f = loop {
                let num = Poly::new(
                    (0..rng.gen_range(2..4))
                        .map(|_| qx(rng.gen_range(-4..=4), 1))
                        .collect(),
                );
                let den = Poly::new(
                    (0..rng.gen_range(1..3))
                        .map(|_| qx(rng.gen_range(-4..=4), 1))
                        .collect(),
                );
                if den.is_zero() {
                    continue;
                }
                let r = RationalFunction::new(num, den);
                if !r.is_constant() {
                    break r;
                }
            };
            // Moebius g: D(g o f) = D(f)
            let g = loop {
                let m = MoebiusMap {
                    a: qx(rng.gen_range(-3..=3), 1),
                    b: qx(rng.gen_range(-3..=3), 1),
                    c: qx(rng.gen_range(-3..=3), 1),
                    d: qx(rng.gen_range(-3..=3), 1),
                };
                if !m.det().is_zero() {
                    break m;
                }
            };
            let g_rf = g.as_ratfunc();
            let gof = g_rf.compose(&f);
            if gof.is_constant() {
                continue;
            }
            // D(g o f) = D(g, f) + D(f)/(g'(f))^2 with D(g, .) = 0
            let lhs = automorphic_derivative(&gof).unwrap();
            let gp_at_f = g_rf.derivative().compose(&f);
            let rhs = &automorphic_derivative(&f).unwrap() / &(&gp_at_f * &gp_at_f);
            assert_eq!(lhs, rhs, "Moebius chain rule");

            // polynomial g of degree 2: D(g o f) = D(g) o f + D(f)/(g'(f))^2
            let g2 = Poly::new(vec![
                qx(rng.gen_range(-3..=3), 1),
                qx(rng.gen_range(-3..=3), 1),
                qx(rng.gen_range(1..=3), 1),
            ]);
            let g2r = RationalFunction::from_poly(g2.clone());
            let gof = g2r.compose(&f);
            if gof.is_constant() {
                continue;
            }
            let lhs = automorphic_derivative(&gof).unwrap();
            let dg_at_f = automorphic_derivative(&g2r).unwrap().compose(&f);
            let gp_at_f = RationalFunction::from_poly(g2.derivative()).compose(&f);
            let rhs = &dg_at_f + &(&automorphic_derivative(&f).unwrap() / &(&gp_at_f * &gp_at_f));
            assert_eq!(lhs, rhs, "chain rule");
        }
    }
}
