//! High-precision numeric certification with a branch sweep over quadratic
//! embeddings.
//!
//! All fractional powers are principal at the origin and continued along the
//! straight segment to each sample point; a point is rejected with a
//! diagnostic when a prefactor base approaches zero on the segment or the
//! continued branch leaves the principal sector.

use num_traits::Signed;
use serde::Serialize;

use crate::algebra::complexval::{embed_quadext, ComplexApprox, EmbedBranch};
use crate::algebra::poly::Poly;
use crate::algebra::rational::Rational;
use crate::algebra::{BigFloat, QuadExt};
use crate::hypergeom::{hg_eval, HGParams};

use super::{IdentitySide, IdentitySpec, VerifyError};

#[derive(Clone, Debug, Serialize)]
pub struct NumericReport {
    pub pass: bool,
    pub tolerance: String,
    pub precision_bits: u32,
    /// one report per embedding-sign combination, sorted by branch labels
    pub combos: Vec<ComboReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComboReport {
    /// `(d, branch)` choices for each quadratic field appearing in the spec
    pub branches: Vec<(i64, String)>,
    pub pass: bool,
    pub max_residual: String,
    pub points: Vec<PointReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub point: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<String>,
}

/// Distinct quadratic fields appearing anywhere in a side.
fn collect_fields(side: &IdentitySide, ds: &mut Vec<i64>) {
    let mut push = |v: &QuadExt| {
        let d = v.field_d();
        if d != 1 && !ds.contains(&d) {
            ds.push(d);
        }
    };
    for p in &side.prefactors {
        for c in p.base.coeffs() {
            push(c);
        }
    }
    for c in side.argument.num().coeffs() {
        push(c);
    }
    for c in side.argument.den().coeffs() {
        push(c);
    }
    push(&side.hg.a);
    push(&side.hg.b);
    push(&side.hg.c);
}

struct BranchAssign {
    ds: Vec<i64>,
    choices: Vec<EmbedBranch>,
}

impl BranchAssign {
    fn branch_for(&self, d: i64) -> EmbedBranch {
        self.ds
            .iter()
            .position(|&x| x == d)
            .map(|i| self.choices[i])
            .unwrap_or(EmbedBranch::Principal)
    }

    fn embed(&self, v: &QuadExt, prec: u32) -> ComplexApprox {
        embed_quadext(v, self.branch_for(v.field_d()), prec)
    }

    fn eval_poly(&self, p: &Poly, z: &ComplexApprox) -> ComplexApprox {
        let prec = z.precision();
        let mut acc = ComplexApprox::zero(prec);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z).add(&self.embed(c, prec));
        }
        acc
    }
}

/// Evaluates both sides at each sample point for every embedding-sign
/// combination; passes when some combination has residual at or below the
/// tolerance at every point.
pub fn verify_numeric(
    spec: &IdentitySpec,
    points: &[Rational],
    precision_bits: u32,
    tolerance: &str,
) -> Result<NumericReport, VerifyError> {
    spec.validate()?;
    let tol = parse_tolerance(tolerance)
        .ok_or_else(|| VerifyError::Malformed(format!("bad tolerance literal {tolerance}")))?;
    let work = precision_bits + 32;
    let tol_f = BigFloat::from_rational(&tol, work);

    let mut ds = vec![];
    collect_fields(&spec.lhs, &mut ds);
    collect_fields(&spec.rhs, &mut ds);
    ds.sort_unstable();
    let ncombos = 1usize << ds.len();
    let mut combos = vec![];
    let mut any_pass = false;
    for mask in 0..ncombos {
        let assign = BranchAssign {
            ds: ds.clone(),
            choices: (0..ds.len())
                .map(|i| {
                    if mask >> i & 1 == 0 {
                        EmbedBranch::Principal
                    } else {
                        EmbedBranch::Conjugate
                    }
                })
                .collect(),
        };
        let mut max_res = BigFloat::zero(work);
        let mut pass = true;
        let mut point_reports = vec![];
        for pt in points {
            let z = ComplexApprox::from_rational(pt, work);
            let lhs = side_value(&spec.lhs, &z, &assign, precision_bits);
            let rhs = side_value(&spec.rhs, &z, &assign, precision_bits);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => {
                    let res = l.sub(&r).abs();
                    if res.cmp_value(&max_res).is_gt() {
                        max_res = res.clone();
                    }
                    let ok = res.cmp_value(&tol_f).is_le();
                    pass = pass && ok;
                    point_reports.push(PointReport {
                        point: crate::algebra::rational::format_rational(pt),
                        residual: Some(res.to_decimal(6)),
                        rejected: None,
                    });
                }
                (l, r) => {
                    let msg = match (&l, &r) {
                        (Err(e), _) => format!("lhs: {e}"),
                        (_, Err(e)) => format!("rhs: {e}"),
                        _ => unreachable!(),
                    };
                    pass = false;
                    point_reports.push(PointReport {
                        point: crate::algebra::rational::format_rational(pt),
                        residual: None,
                        rejected: Some(msg),
                    });
                }
            }
        }
        any_pass = any_pass || pass;
        combos.push(ComboReport {
            branches: ds
                .iter()
                .zip(&assign.choices)
                .map(|(&d, b)| {
                    (d, match b {
                        EmbedBranch::Principal => "principal".to_string(),
                        EmbedBranch::Conjugate => "conjugate".to_string(),
                    })
                })
                .collect(),
            pass,
            max_residual: max_res.to_decimal(6),
            points: point_reports,
        });
    }
    Ok(NumericReport {
        pass: any_pass,
        tolerance: tolerance.to_string(),
        precision_bits,
        combos,
    })
}

fn parse_tolerance(s: &str) -> Option<Rational> {
    // decimal literal: [digits][.digits][e[-]exp]
    let t = s.trim().to_ascii_lowercase();
    let (mantissa, exp) = match t.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (t.as_str(), 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let value: num_bigint::BigInt = digits.parse().ok()?;
    let shift = exp - frac_part.len() as i64;
    let ten = num_bigint::BigInt::from(10);
    let mut q = Rational::from_integer(value);
    if shift >= 0 {
        q *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        q /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(q)
}

fn side_value(
    side: &IdentitySide,
    z: &ComplexApprox,
    assign: &BranchAssign,
    _prec: u32,
) -> Result<ComplexApprox, VerifyError> {
    // everything at the working precision of z; rounding happens at the
    // residual comparison
    let work = z.precision();
    let params = rational_params(&side.hg)?;
    let num = assign.eval_poly(side.argument.num(), z);
    let den = assign.eval_poly(side.argument.den(), z);
    if den.is_zero() {
        return Err(VerifyError::Malformed("argument pole at sample point".into()));
    }
    let arg = num.div(&den);
    let mut acc = hg_eval(&params, &arg, work)?;
    // prefactors with principal continuation along [0, z]
    for p in &side.prefactors {
        let w = prefactor_value(&p.base, &p.exponent, z, assign)?;
        acc = acc.mul(&w);
    }
    Ok(acc)
}

fn rational_params(hg: &HGParams) -> Result<HGParams, VerifyError> {
    for v in [&hg.a, &hg.b, &hg.c] {
        if !v.is_rational() {
            return Err(VerifyError::IrrationalParameters);
        }
    }
    Ok(hg.clone())
}

/// `base(z)^r` continued from the principal value at the origin along the
/// straight segment. Rejects the point when the base comes close to zero on
/// the segment or the accumulated argument leaves the principal sector.
fn prefactor_value(
    base: &Poly,
    exponent: &Rational,
    z: &ComplexApprox,
    assign: &BranchAssign,
) -> Result<ComplexApprox, VerifyError> {
    let w = assign.eval_poly(base, z);
    if w.is_zero() {
        return Err(VerifyError::Malformed(
            "prefactor base vanishes at sample point".into(),
        ));
    }
    // segment guard in f64: the bases here are low-degree and O(1)
    let prec = z.precision();
    let steps = 96;
    let mut prev: Option<(f64, f64)> = None;
    let mut total_angle = 0.0f64;
    for k in 0..=steps {
        let t = Rational::new((k as i64).into(), (steps as i64).into());
        let zt = z.scale(&BigFloat::from_rational(&t, prec));
        let v = assign.eval_poly(base, &zt);
        let (re, im) = v.to_f64();
        let norm = (re * re + im * im).sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(VerifyError::Malformed(
                "prefactor base vanishes on the segment to the sample point".into(),
            ));
        }
        if let Some((pre, pim)) = prev {
            // angle increment via the quotient v / prev
            let qr = re * pre + im * pim;
            let qi = im * pre - re * pim;
            total_angle += qi.atan2(qr);
        }
        prev = Some((re, im));
    }
    let (re, im) = w.to_f64();
    let principal = im.atan2(re);
    if (total_angle - principal).abs() > 0.5 {
        return Err(VerifyError::Malformed(
            "branch continuation leaves the principal sector".into(),
        ));
    }
    w.pow_rational(exponent).map_err(VerifyError::Algebra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn tolerance_parsing() {
        assert_eq!(parse_tolerance("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_tolerance("2.5e1").unwrap(), rat(25, 1));
        assert_eq!(parse_tolerance("0.125").unwrap(), rat(1, 8));
        assert!(parse_tolerance("xyz").is_none());
    }
}
