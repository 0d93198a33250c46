//! JSON wire format for identity specs.
//!
//! Schema:
//! ```json
//! {
//!   "name": "...",
//!   "field": {"type": "rational"} | {"type": "quadratic", "d": -2},
//!   "lhs": {"prefactors": [{"base": ["1","4","-1"], "exponent": "1/4"}],
//!            "hg": {"a": "1/20", "b": "1/4", "c": "4/5"},
//!            "arg": {"num": ["0","64"], "den": ["1"]}},
//!   "rhs": { ... },
//!   "check": {"mode": "series" | "numeric" | "ode",
//!             "order": 30,
//!             "points": ["1/16", "1/10"],
//!             "precision_bits": 256,
//!             "tolerance": "1e-30",
//!             "ode": {"c2": [...], "c1": [...], "c0": [...]}}
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::algebra::poly::{poly_from_scalar_strings, poly_to_scalar_strings, Poly};
use crate::algebra::quad::parse_quadext;
use crate::algebra::ratfunc::RationalFunction;
use crate::algebra::rational::{format_rational, parse_rational};
use crate::covers::FieldSpec;
use crate::hypergeom::HGParams;

use super::{CheckMode, IdentitySide, IdentitySpec, Prefactor, VerifyError};

#[derive(Serialize, Deserialize)]
struct SpecDto {
    name: String,
    field: FieldDto,
    lhs: SideDto,
    rhs: SideDto,
    check: CheckDto,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum FieldDto {
    Rational,
    Quadratic { d: i64 },
}

#[derive(Serialize, Deserialize)]
struct SideDto {
    prefactors: Vec<PrefactorDto>,
    hg: HgDto,
    arg: ArgDto,
}

#[derive(Serialize, Deserialize)]
struct PrefactorDto {
    base: Vec<String>,
    exponent: String,
}

#[derive(Serialize, Deserialize)]
struct HgDto {
    a: String,
    b: String,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct ArgDto {
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CheckDto {
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    precision_bits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ode: Option<OdeDto>,
}

#[derive(Serialize, Deserialize)]
struct OdeDto {
    c2: Vec<String>,
    c1: Vec<String>,
    c0: Vec<String>,
}

fn side_to_dto(s: &IdentitySide) -> SideDto {
    SideDto {
        prefactors: s
            .prefactors
            .iter()
            .map(|p| PrefactorDto {
                base: poly_to_scalar_strings(&p.base),
                exponent: format_rational(&p.exponent),
            })
            .collect(),
        hg: HgDto {
            a: s.hg.a.to_string(),
            b: s.hg.b.to_string(),
            c: s.hg.c.to_string(),
        },
        arg: ArgDto {
            num: poly_to_scalar_strings(s.argument.num()),
            den: poly_to_scalar_strings(s.argument.den()),
        },
    }
}

fn side_from_dto(dto: &SideDto) -> Result<IdentitySide, VerifyError> {
    let mut prefactors = vec![];
    for p in &dto.prefactors {
        prefactors.push(Prefactor {
            base: poly_from_scalar_strings(&p.base)?,
            exponent: parse_rational(&p.exponent)?,
        });
    }
    let hg = HGParams::new(
        parse_quadext(&dto.hg.a)?,
        parse_quadext(&dto.hg.b)?,
        parse_quadext(&dto.hg.c)?,
    )?;
    let num = poly_from_scalar_strings(&dto.arg.num)?;
    let den = poly_from_scalar_strings(&dto.arg.den)?;
    if den.is_zero() {
        return Err(VerifyError::Malformed("zero argument denominator".into()));
    }
    Ok(IdentitySide { prefactors, hg, argument: RationalFunction::new(num, den) })
}

pub fn spec_to_json(spec: &IdentitySpec) -> String {
    let check = match &spec.check {
        CheckMode::Series { order } => CheckDto {
            mode: "series".into(),
            order: Some(*order),
            points: None,
            precision_bits: None,
            tolerance: None,
            ode: None,
        },
        CheckMode::Numeric { points, precision_bits, tolerance } => CheckDto {
            mode: "numeric".into(),
            order: None,
            points: Some(points.iter().map(format_rational).collect()),
            precision_bits: Some(*precision_bits),
            tolerance: Some(tolerance.clone()),
            ode: None,
        },
        CheckMode::Ode { order, c2, c1, c0 } => CheckDto {
            mode: "ode".into(),
            order: Some(*order),
            points: None,
            precision_bits: None,
            tolerance: None,
            ode: Some(OdeDto {
                c2: poly_to_scalar_strings(c2),
                c1: poly_to_scalar_strings(c1),
                c0: poly_to_scalar_strings(c0),
            }),
        },
    };
    let dto = SpecDto {
        name: spec.name.clone(),
        field: match spec.field {
            FieldSpec::Rationals => FieldDto::Rational,
            FieldSpec::Quadratic(d) => FieldDto::Quadratic { d },
        },
        lhs: side_to_dto(&spec.lhs),
        rhs: side_to_dto(&spec.rhs),
        check,
    };
    serde_json::to_string_pretty(&dto).expect("serialisable") + "\n"
}

pub fn spec_from_json(s: &str) -> Result<IdentitySpec, VerifyError> {
    let dto: SpecDto =
        serde_json::from_str(s).map_err(|e| VerifyError::Malformed(e.to_string()))?;
    let check = match dto.check.mode.as_str() {
        "series" => CheckMode::Series {
            order: dto
                .check
                .order
                .ok_or_else(|| VerifyError::Malformed("series mode needs order".into()))?,
        },
        "numeric" => {
            let points = dto
                .check
                .points
                .as_ref()
                .ok_or_else(|| VerifyError::Malformed("numeric mode needs points".into()))?
                .iter()
                .map(|p| parse_rational(p))
                .collect::<Result<Vec<_>, _>>()?;
            CheckMode::Numeric {
                points,
                precision_bits: dto.check.precision_bits.unwrap_or(256),
                tolerance: dto
                    .check
                    .tolerance
                    .clone()
                    .ok_or_else(|| VerifyError::Malformed("numeric mode needs tolerance".into()))?,
            }
        }
        "ode" => {
            let ode = dto
                .check
                .ode
                .as_ref()
                .ok_or_else(|| VerifyError::Malformed("ode mode needs coefficients".into()))?;
            CheckMode::Ode {
                order: dto
                    .check
                    .order
                    .ok_or_else(|| VerifyError::Malformed("ode mode needs order".into()))?,
                c2: poly_from_scalar_strings(&ode.c2)?,
                c1: poly_from_scalar_strings(&ode.c1)?,
                c0: poly_from_scalar_strings(&ode.c0)?,
            }
        }
        other => return Err(VerifyError::Malformed(format!("unknown mode {other}"))),
    };
    Ok(IdentitySpec {
        name: dto.name.clone(),
        field: match dto.field {
            FieldDto::Rational => FieldSpec::Rationals,
            FieldDto::Quadratic { d } => FieldSpec::Quadratic(d),
        },
        lhs: side_from_dto(&dto.lhs)?,
        rhs: side_from_dto(&dto.rhs)?,
        check,
    })
}

/// Poly helper re-exported for CLI input handling.
pub fn parse_poly(strings: &[String]) -> Result<Poly, VerifyError> {
    Ok(poly_from_scalar_strings(strings)?)
}
