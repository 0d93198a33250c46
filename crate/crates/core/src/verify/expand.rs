//! Exact series expansion of one identity side.

use num_traits::ToPrimitive;

use crate::algebra::rational::{rat_int, Rational};
use crate::algebra::series::{compose_outer, series_from_rational};
use crate::algebra::{AlgebraError, FracSeries, QuadExt};
use crate::hypergeom::hg_coefficients;

use super::{IdentitySide, VerifyError};

/// Expansion of a side, together with any prefactor constants whose rational
/// power could not be taken exactly in the scalar field (the series part is
/// then normalised to leading coefficient of the unit expansion).
pub struct SideExpansion {
    pub series: FracSeries,
    pub pending_scales: Vec<(QuadExt, Rational)>,
}

/// Expands `prod base_i^(r_i) * 2F1(a, b; c; S(z))` as an exact series with
/// exponents below `order`, all fractional powers principal at the origin.
pub fn expand_side(side: &IdentitySide, order: u32) -> Result<SideExpansion, VerifyError> {
    let n = rat_int(order as i64);
    let inner = series_from_rational(&side.argument, &n).map_err(|e| match e {
        AlgebraError::PoleAtOrigin => VerifyError::ArgumentPole,
        other => VerifyError::Algebra(other),
    })?;
    if !inner.is_zero() && !num_traits::Signed::is_positive(inner.offset()) {
        return Err(VerifyError::ArgumentNotNormalised);
    }
    // enough outer coefficients: ord(S)*(m+1) >= order
    let outer_len = if inner.is_zero() {
        1
    } else {
        let v = inner.offset();
        ((rat_int(order as i64) / v).ceil().to_integer().to_u32().unwrap_or(order)).max(1) + 1
    };
    let outer = hg_coefficients(&side.hg, outer_len);
    let mut acc = compose_outer(&outer, &inner, &n);
    let mut pending = vec![];
    for p in &side.prefactors {
        let base = FracSeries::from_poly(&p.base, n.clone());
        let Some((c0, off, unit)) = base.decompose() else {
            return Err(VerifyError::PrefactorVanishes);
        };
        debug_assert!(off.is_integer() && off == Rational::from_integer(0.into()) || !c0.is_zero());
        if !off.is_integer() || off != Rational::from_integer(0.into()) {
            return Err(VerifyError::PrefactorVanishes);
        }
        let body = unit.unit_pow_rational(&p.exponent);
        acc = &acc * &body;
        // constant part c0^r: exact when possible, else recorded
        if c0.is_one() {
            continue;
        }
        if p.exponent.is_integer() {
            let e = p.exponent.to_integer().to_i64().expect("small exponent");
            let v = c0.powi(e).map_err(|_| VerifyError::PrefactorVanishes)?;
            acc = acc.scale(&v);
            continue;
        }
        let v = p.exponent.denom().to_u32().and_then(|k| c0.exact_nth_root(k));
        match v {
            Some(root) => {
                let e = p.exponent.numer().to_i64().expect("small exponent");
                let val = root.powi(e).map_err(|_| VerifyError::PrefactorVanishes)?;
                acc = acc.scale(&val);
            }
            None => pending.push((c0, p.exponent.clone())),
        }
    }
    Ok(SideExpansion { series: acc, pending_scales: pending })
}
