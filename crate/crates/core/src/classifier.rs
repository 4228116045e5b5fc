//! The irreducible unitary `(g, K)`-modules, as executable case analysis.
//!
//! Cone points `V(c, 2t)` with real `c` below the threshold `c(t)` are
//! irreducible and unitary on the full cone. At `c(t)` and at the special
//! values `c(l, t)` a wall appears and the strip constituent through the
//! cone vertex is unitary. Vertex points give `W(r, s)` inside the open
//! wedge `s + r + 1 > 0 > s - r - 1` and the rays `Z(s)` on its two edges.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coefficients::{validate_vertex, wrs_embeddings, ModuleParams};
use crate::error::{Result, Su21Error};
use crate::ktype::SupportRegion;
use crate::module::support_of;
use crate::scalar::{GaussianRational, Rational};

/// `c(t)`: the largest `c` for which `V(c, 2t)` is irreducible and unitary
/// on its full cone is every `c < c(t)`.
pub fn c_threshold(t: i64) -> Rational {
    let t = t.abs();
    let k = t / 2;
    match t {
        0 => Rational::zero(),
        1 => Rational::new(-1, 2).unwrap(),
        _ if t % 2 == 0 => Rational::new(-(k * k + 1), 2).unwrap(),
        _ => Rational::new(-(k * k + k + 1), 2).unwrap(),
    }
}

/// Largest admissible `l` for `c(l, t)`, if any.
pub fn l_max(t: i64) -> Option<i64> {
    let t = t.abs();
    (t >= 2).then_some(t / 2 - 1)
}

/// `c(l, t)`, the value at which `V(c, 2t)` has the unitary strip `U(l, 2t)`
/// of width `l`.
pub fn c_special(l: i64, t: i64) -> Result<Rational> {
    let Some(top) = l_max(t) else {
        return Err(Su21Error::InvalidParameter(format!("c(l,t) needs |t| >= 2, got t={t}")));
    };
    if l < 0 || l > top {
        return Err(Su21Error::InvalidParameter(format!("c(l,t) needs 0 <= l <= {top}, got l={l}")));
    }
    let t = t.abs();
    let k = t / 2;
    let num = if t % 2 == 0 { l * l - 2 * (k - 1) * l - 2 * k } else { l * l - (2 * k - 1) * l - 2 * k - 1 };
    Ok(Rational::new(num, 2).unwrap())
}

/// The two cones `V(c, 2t)` containing `W(r, s)`.
pub fn embed_w(r: i64, s: i64) -> Result<[ModuleParams; 2]> {
    validate_vertex(r, s)?;
    let [(c1, t1), (c2, t2)] = wrs_embeddings(r, s)?;
    Ok([ModuleParams::cone(c1, t1), ModuleParams::cone(c2, t2)])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilyLabel {
    V {
        c: GaussianRational,
        two_t: i64,
    },
    /// The continuous family `V(c, 2t)`, `c < upper`.
    VInterval {
        two_t: i64,
        upper: Rational,
    },
    U0,
    U2,
    Uminus2,
    U {
        l: i64,
        two_t: i64,
    },
    W {
        r: i64,
        s: i64,
    },
    Z {
        s: i64,
    },
}

impl FamilyLabel {
    /// A parameter point realising the label.
    pub fn params(&self) -> Result<ModuleParams> {
        let cone = |c: Rational, t| ModuleParams::cone(GaussianRational::real(c), t);
        Ok(match self {
            FamilyLabel::V { c, two_t } => ModuleParams::cone(c.clone(), two_t / 2),
            FamilyLabel::VInterval { two_t, upper } => cone(upper - &Rational::one(), two_t / 2),
            FamilyLabel::U0 => cone(Rational::zero(), 0),
            FamilyLabel::U2 | FamilyLabel::Z { s: 2 } => cone(c_threshold(1), 1),
            FamilyLabel::Uminus2 | FamilyLabel::Z { s: -2 } => cone(c_threshold(1), -1),
            FamilyLabel::U { l, two_t } => cone(c_special(*l, two_t / 2)?, two_t / 2),
            FamilyLabel::W { r, s } => ModuleParams::vertex(*r, *s)?,
            FamilyLabel::Z { s } => ModuleParams::vertex(s.abs() - 1, *s)?,
        })
    }

    fn check(self) -> Result<Self> {
        let bad = |msg: String| Err(Su21Error::InvalidParameter(msg));
        match self {
            FamilyLabel::V { two_t, .. } | FamilyLabel::VInterval { two_t, .. } | FamilyLabel::U { two_t, .. }
                if two_t % 2 != 0 =>
            {
                bad(format!("2t={two_t} is odd"))
            }
            FamilyLabel::U { l, two_t } => c_special(l, two_t / 2).map(|_| self),
            FamilyLabel::W { r, s } => validate_vertex(r, s).map(|_| self),
            FamilyLabel::Z { s } if (-1..=1).contains(&s) => bad(format!("Z({s}) is not defined")),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyLabel::V { c, two_t } => write!(f, "V(c={c},2t={two_t})"),
            FamilyLabel::VInterval { two_t, upper } => write!(f, "V(c<{upper},2t={two_t})"),
            FamilyLabel::U0 => f.write_str("U(0)"),
            FamilyLabel::U2 => f.write_str("U(2)"),
            FamilyLabel::Uminus2 => f.write_str("U(-2)"),
            FamilyLabel::U { l, two_t } => write!(f, "U(l={l},2t={two_t})"),
            FamilyLabel::W { r, s } => write!(f, "W({r},{s})"),
            FamilyLabel::Z { s } => write!(f, "Z({s})"),
        }
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Su21Error::Parse(format!("bad integer {s:?}")))
}

impl FromStr for FamilyLabel {
    type Err = Su21Error;

    fn from_str(input: &str) -> Result<Self> {
        let text = input.trim().replace('\u{2212}', "-");
        let err = || Su21Error::Parse(format!("unrecognised family label {input:?}"));
        let (head, rest) = text.split_once('(').ok_or_else(err)?;
        let body = rest.strip_suffix(')').ok_or_else(err)?;
        let label = match head {
            "U" => match body {
                "0" => FamilyLabel::U0,
                "2" => FamilyLabel::U2,
                "-2" => FamilyLabel::Uminus2,
                _ => {
                    let (l, two_t) = body.split_once(',').ok_or_else(err)?;
                    FamilyLabel::U {
                        l: parse_int(l.strip_prefix("l=").ok_or_else(err)?)?,
                        two_t: parse_int(two_t.strip_prefix("2t=").ok_or_else(err)?)?,
                    }
                }
            },
            "W" => {
                let (r, s) = body.split_once(',').ok_or_else(err)?;
                FamilyLabel::W { r: parse_int(r)?, s: parse_int(s)? }
            }
            "Z" => FamilyLabel::Z { s: parse_int(body)? },
            "V" => {
                let (c, two_t) = body.rsplit_once(",2t=").ok_or_else(err)?;
                let two_t = parse_int(two_t)?;
                if let Some(c) = c.strip_prefix("c=") {
                    FamilyLabel::V { c: c.parse()?, two_t }
                } else if let Some(upper) = c.strip_prefix("c<") {
                    FamilyLabel::VInterval { two_t, upper: upper.parse()? }
                } else {
                    return Err(err());
                }
            }
            _ => return Err(err()),
        };
        label.check()
    }
}

impl Serialize for FamilyLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub label: FamilyLabel,
    pub params: ModuleParams,
    pub support: SupportRegion,
    pub unitary: bool,
    pub notes: Vec<String>,
}

fn record(
    label: FamilyLabel,
    params: &ModuleParams,
    support: SupportRegion,
    unitary: bool,
    notes: Vec<String>,
) -> ClassificationRecord {
    ClassificationRecord { label, params: params.clone(), support, unitary, notes }
}

/// Assigns a parameter point to its family.
pub fn classify(point: &ModuleParams) -> Result<ClassificationRecord> {
    point.validate()?;
    match point {
        ModuleParams::Cone { c, t } => classify_cone(point, c, *t),
        ModuleParams::Vertex { r, s } => classify_vertex(point, *r, *s),
    }
}

fn classify_cone(point: &ModuleParams, c: &GaussianRational, t: i64) -> Result<ClassificationRecord> {
    let support = support_of(point)?;
    let v_label = FamilyLabel::V { c: c.clone(), two_t: 2 * t };
    let Some(c_real) = c.as_real() else {
        return Ok(record(v_label, point, support, false, vec!["nonreal c gives nonreal products".into()]));
    };
    let threshold = c_threshold(t);
    if *c_real < threshold {
        let note = format!("c < c({t}) = {threshold}");
        return Ok(record(v_label, point, support, true, vec![note]));
    }
    if *c_real == threshold {
        let label = match (t, l_max(t)) {
            (0, _) => FamilyLabel::U0,
            (1, _) => FamilyLabel::U2,
            (-1, _) => FamilyLabel::Uminus2,
            (_, Some(l)) => FamilyLabel::U { l, two_t: 2 * t },
            _ => unreachable!("|t| >= 2 has an l range"),
        };
        let mut notes = vec![format!("c = c({t}) = {threshold}")];
        if let FamilyLabel::U { l, .. } = label {
            notes.push(format!("c({t}) coincides with c({l},{t})"));
        }
        return Ok(record(label, point, support, true, notes));
    }
    if let Some(top) = l_max(t) {
        for l in 0..top {
            if *c_real == c_special(l, t)? {
                let label = FamilyLabel::U { l, two_t: 2 * t };
                return Ok(record(label, point, support, true, vec![format!("c = c({l},{t}) = {c_real}")]));
            }
        }
    }
    let note = format!("c > c({t}) = {threshold} and c is no special value c(l,{t})");
    Ok(record(v_label, point, support, false, vec![note]))
}

fn classify_vertex(point: &ModuleParams, r: i64, s: i64) -> Result<ClassificationRecord> {
    let support = support_of(point)?;
    if s + r + 1 == 0 || s - r - 1 == 0 {
        let note = format!("W({r},{s}) lies on the edge s {} r + 1 = 0", if s < 0 { "+" } else { "-" });
        return Ok(record(FamilyLabel::Z { s }, point, support, true, vec![note]));
    }
    let inside = s + r + 1 > 0 && s - r - 1 < 0;
    let note = if inside { "s + r + 1 > 0 and s - r - 1 < 0" } else { "outside the unitary wedge |s| < r + 1" };
    Ok(record(FamilyLabel::W { r, s }, point, support, inside, vec![note.into()]))
}

/// Bounds for [`enumerate`]; `denominator_max` sets how far below `c(t)`
/// the representative of each continuous family sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub t_max: i64,
    pub r_max: i64,
    pub denominator_max: i64,
}

/// Every unitary family member within the bounds, continuous families as
/// interval records.
pub fn enumerate(bounds: Bounds) -> Result<Vec<ClassificationRecord>> {
    let Bounds { t_max, r_max, denominator_max } = bounds;
    if t_max < 0 || r_max < 1 || denominator_max < 1 {
        return Err(Su21Error::InvalidParameter(format!("bounds must be positive, got {bounds:?}")));
    }
    let ts: Vec<i64> = (-t_max..=t_max).collect();
    let intervals = ts.par_iter().map(|&t| {
        let upper = c_threshold(t);
        let c = &upper - &Rational::new(1, denominator_max)?;
        let params = ModuleParams::cone(GaussianRational::real(c.clone()), t);
        let label = FamilyLabel::VInterval { two_t: 2 * t, upper: upper.clone() };
        let notes = vec![format!("all c < {upper}; representative c = {c}")];
        Ok(vec![record(label, &params, SupportRegion::FullCone { t }, true, notes)])
    });
    let strips = ts.par_iter().map(|&t| {
        let mut out = Vec::new();
        match t {
            0 => out.push(classify(&FamilyLabel::U0.params()?)?),
            1 => out.push(classify(&FamilyLabel::U2.params()?)?),
            -1 => out.push(classify(&FamilyLabel::Uminus2.params()?)?),
            _ => {
                for l in 0..=l_max(t).unwrap_or(-1) {
                    out.push(classify(&FamilyLabel::U { l, two_t: 2 * t }.params()?)?);
                }
            }
        }
        Ok(out)
    });
    let wedge: Vec<(i64, i64)> =
        (2..=r_max).flat_map(|r| (-r..=r).filter(move |s| (r + s) % 2 != 0).map(move |s| (r, s))).collect();
    let ws = wedge.par_iter().map(|&(r, s)| Ok(vec![classify(&ModuleParams::vertex(r, s)?)?]));
    let zs_range: Vec<i64> = (-(r_max + 1)..=r_max + 1).filter(|s| s.abs() >= 2).collect();
    let zs = zs_range.par_iter().map(|&s| {
        let label = FamilyLabel::Z { s };
        let params = label.params()?;
        if s.abs() >= 3 {
            return Ok(vec![classify(&params)?]);
        }
        let support = if s > 0 { SupportRegion::RayPos { s } } else { SupportRegion::RayNeg { s } };
        let twin = if s > 0 { FamilyLabel::U2 } else { FamilyLabel::Uminus2 };
        let note = format!("same K-types and products as {twin}");
        Ok(vec![record(label, &params, support, true, vec![note])])
    });

    let mut records = Vec::new();
    for part in [
        intervals.collect::<Result<Vec<_>>>()?,
        strips.collect::<Result<Vec<_>>>()?,
        ws.collect::<Result<Vec<_>>>()?,
        zs.collect::<Result<Vec<_>>>()?,
    ] {
        records.extend(part.into_iter().flatten());
    }
    Ok(records)
}
