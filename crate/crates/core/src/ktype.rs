//! K-type bookkeeping.
//!
//! A K-type `V(n, m)` is the irreducible `K`-module of `su(2)`-dimension `n`
//! on which `Z` acts by `m`. Inside a module `V(c, 2t)` the K-types sit on a
//! cone: moving `p` steps in the `alpha+beta` direction and `q` steps in the
//! `-beta` direction from `V(1, 2t)` lands on `V(1+p+q, 2t+3p-3q)`.
//!
//! Every support used by the crate is a "box" in such coordinates: an anchor
//! K-type plus an optional extent in each direction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, Su21Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "KTypeRepr", into = "KTypeRepr")]
pub struct KType {
    n: i64,
    m: i64,
}

#[derive(Serialize, Deserialize)]
struct KTypeRepr {
    n: i64,
    m: i64,
}

impl TryFrom<KTypeRepr> for KType {
    type Error = Su21Error;
    fn try_from(r: KTypeRepr) -> Result<Self> {
        KType::new(r.n, r.m)
    }
}

impl From<KType> for KTypeRepr {
    fn from(k: KType) -> Self {
        KTypeRepr { n: k.n, m: k.m }
    }
}

impl KType {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if n < 1 {
            return Err(Su21Error::InvalidParameter(format!("K-type dimension n={n} < 1")));
        }
        if (n + m).rem_euclid(2) != 1 {
            return Err(Su21Error::InvalidParameter(format!("K-type V({n},{m}) has n+m even")));
        }
        Ok(KType { n, m })
    }

    pub fn n(self) -> i64 {
        self.n
    }

    pub fn m(self) -> i64 {
        self.m
    }

    /// Steps by `(dn, dm)` where `dm` is `+-3`; parity is preserved so only
    /// the dimension needs checking.
    fn step(self, dn: i64, dm: i64) -> Option<KType> {
        let n = self.n + dn;
        (n >= 1).then_some(KType { n, m: self.m + dm })
    }

    /// `[V(n+1,m+3), V(n+1,m-3), V(n-1,m+3), V(n-1,m-3)]`; the last two are
    /// absent when `n = 1`.
    pub fn neighbors(self) -> [Option<KType>; 4] {
        [self.step(1, 3), self.step(1, -3), self.step(-1, 3), self.step(-1, -3)]
    }

    pub fn up_p(self) -> KType {
        KType { n: self.n + 1, m: self.m + 3 }
    }

    pub fn up_q(self) -> KType {
        KType { n: self.n + 1, m: self.m - 3 }
    }

    pub fn down_p(self) -> Option<KType> {
        self.step(-1, -3)
    }

    pub fn down_q(self) -> Option<KType> {
        self.step(-1, 3)
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})", self.n, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConeCoord {
    pub p: u32,
    pub q: u32,
}

impl ConeCoord {
    pub fn new(p: u32, q: u32) -> Self {
        ConeCoord { p, q }
    }

    pub fn level(self) -> i64 {
        i64::from(self.p) + i64::from(self.q)
    }
}

impl fmt::Display for ConeCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={},q={})", self.p, self.q)
    }
}

/// `V(1+p+q, 2t+3p-3q)`.
pub fn to_ktype(t: i64, c: ConeCoord) -> KType {
    let (p, q) = (i64::from(c.p), i64::from(c.q));
    KType { n: 1 + p + q, m: 2 * t + 3 * p - 3 * q }
}

/// Offsets `(p, q) >= 0` with `p + q = dn` and `3(p - q) = dm`, if any.
fn solve_offsets(dn: i64, dm: i64) -> Option<(i64, i64)> {
    if dn < 0 || dm % 3 != 0 {
        return None;
    }
    let diff = dm / 3;
    if (dn + diff) % 2 != 0 {
        return None;
    }
    let p = (dn + diff) / 2;
    let q = (dn - diff) / 2;
    (p >= 0 && q >= 0).then_some((p, q))
}

pub fn from_ktype(t: i64, v: KType) -> Option<ConeCoord> {
    let (p, q) = solve_offsets(v.n - 1, v.m - 2 * t)?;
    Some(ConeCoord { p: u32::try_from(p).ok()?, q: u32::try_from(q).ok()? })
}

/// Named K-type supports. All of them are boxes in cone coordinates; see
/// [`SupportRegion::frame`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum SupportRegion {
    /// `{V(1+p+q, 2t+3p-3q) | p, q >= 0}`.
    FullCone { t: i64 },
    /// Full cone with `q <= l`.
    StripQ { t: i64, l: u32 },
    /// Full cone with `p <= l`.
    StripP { t: i64, l: u32 },
    /// `{V(r+p+q, s+3p-3q) | p, q >= 0}`.
    VertexCone { r: i64, s: i64 },
    /// `{V(s-1+p, s+3p) | p >= 0}`.
    RayPos { s: i64 },
    /// `{V(-s-1+q, s-3q) | q >= 0}`.
    RayNeg { s: i64 },
    /// The single K-type `V(1, m)`.
    Point { m: i64 },
    /// Any other box: anchor `V(n, m)` with optional extents.
    Sector { n: i64, m: i64, p_max: Option<u32>, q_max: Option<u32> },
}

/// Anchor plus extents of a box-shaped region; `None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frame {
    pub anchor: KType,
    pub p_max: Option<u32>,
    pub q_max: Option<u32>,
}

impl Frame {
    /// Offsets of `v` from the anchor, if `v` is in the box.
    pub fn offsets(&self, v: KType) -> Option<ConeCoord> {
        let (p, q) = solve_offsets(v.n - self.anchor.n, v.m - self.anchor.m)?;
        let (p, q) = (u32::try_from(p).ok()?, u32::try_from(q).ok()?);
        let fits = self.p_max.is_none_or(|l| p <= l) && self.q_max.is_none_or(|l| q <= l);
        fits.then_some(ConeCoord { p, q })
    }

    pub fn at(&self, off: ConeCoord) -> KType {
        KType { n: self.anchor.n + off.level(), m: self.anchor.m + 3 * i64::from(off.p) - 3 * i64::from(off.q) }
    }
}

impl SupportRegion {
    pub fn frame(&self) -> Result<Frame> {
        let frame = |n: i64, m: i64, p_max: Option<u32>, q_max: Option<u32>| -> Result<Frame> {
            Ok(Frame { anchor: KType::new(n, m)?, p_max, q_max })
        };
        match *self {
            SupportRegion::FullCone { t } => frame(1, 2 * t, None, None),
            SupportRegion::StripQ { t, l } => frame(1, 2 * t, None, Some(l)),
            SupportRegion::StripP { t, l } => frame(1, 2 * t, Some(l), None),
            SupportRegion::VertexCone { r, s } => frame(r, s, None, None),
            SupportRegion::RayPos { s } => frame(s - 1, s, None, Some(0)),
            SupportRegion::RayNeg { s } => frame(-s - 1, s, Some(0), None),
            SupportRegion::Point { m } => frame(1, m, Some(0), Some(0)),
            SupportRegion::Sector { n, m, p_max, q_max } => frame(n, m, p_max, q_max),
        }
    }

    pub fn contains(&self, v: KType) -> bool {
        self.frame().is_ok_and(|f| f.offsets(v).is_some())
    }

    /// Members with `n <= max_n`, sorted by `(n, m)`.
    pub fn members(&self, max_n: i64) -> Result<Vec<KType>> {
        if max_n < 1 {
            return Err(Su21Error::InvalidParameter(format!("max_n={max_n} < 1")));
        }
        let frame = self.frame()?;
        let depth = max_n - frame.anchor.n;
        let mut out = Vec::new();
        for level in 0..=depth {
            for p in 0..=level {
                let off = ConeCoord::new(p as u32, (level - p) as u32);
                let v = frame.at(off);
                if frame.offsets(v).is_some() {
                    out.push(v);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for SupportRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportRegion::FullCone { t } => write!(f, "full_cone(t={t})"),
            SupportRegion::StripQ { t, l } => write!(f, "strip_q(t={t},l={l})"),
            SupportRegion::StripP { t, l } => write!(f, "strip_p(t={t},l={l})"),
            SupportRegion::VertexCone { r, s } => write!(f, "vertex_cone(r={r},s={s})"),
            SupportRegion::RayPos { s } => write!(f, "ray_pos(s={s})"),
            SupportRegion::RayNeg { s } => write!(f, "ray_neg(s={s})"),
            SupportRegion::Point { m } => write!(f, "point(m={m})"),
            SupportRegion::Sector { n, m, p_max, q_max } => {
                let ext = |e: &Option<u32>| e.map_or("inf".to_string(), |v| v.to_string());
                write!(f, "sector(V({n},{m}),p<={},q<={})", ext(p_max), ext(q_max))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(n: i64, m: i64) -> KType {
        KType::new(n, m).unwrap()
    }

    #[test]
    fn cone_coordinates() {
        assert_eq!(to_ktype(-3, ConeCoord::new(3, 0)), k(4, 3));
        assert_eq!(to_ktype(0, ConeCoord::new(0, 0)), k(1, 0));
        assert_eq!(to_ktype(6, ConeCoord::new(0, 3)), k(4, 3));
        assert_eq!(from_ktype(0, k(1, 0)), Some(ConeCoord::new(0, 0)));
        assert_eq!(from_ktype(0, k(2, 1)), None);
        assert_eq!(from_ktype(1, k(2, 5)), Some(ConeCoord::new(1, 0)));
    }

    #[test]
    fn ktype_invariants_are_enforced() {
        assert!(KType::new(0, 1).is_err());
        assert!(KType::new(2, 2).is_err());
        assert!(serde_json::from_str::<KType>(r#"{"n":3,"m":1}"#).is_err());
        assert_eq!(serde_json::from_str::<KType>(r#"{"n":3,"m":2}"#).unwrap(), k(3, 2));
    }

    #[test]
    fn neighbor_steps() {
        assert_eq!(k(1, 0).neighbors(), [Some(k(2, 3)), Some(k(2, -3)), None, None]);
        assert_eq!(k(2, 3).neighbors(), [Some(k(3, 6)), Some(k(3, 0)), Some(k(1, 6)), Some(k(1, 0))]);
        assert_eq!(k(4, 3).neighbors(), [Some(k(5, 6)), Some(k(5, 0)), Some(k(3, 6)), Some(k(3, 0))]);
    }

    #[test]
    fn region_members() {
        assert_eq!(SupportRegion::Point { m: 0 }.members(10).unwrap(), vec![k(1, 0)]);
        assert_eq!(SupportRegion::StripQ { t: 1, l: 0 }.members(3).unwrap(), vec![k(1, 2), k(2, 5), k(3, 8)]);
        assert_eq!(SupportRegion::VertexCone { r: 4, s: 3 }.members(5).unwrap(), vec![k(4, 3), k(5, 0), k(5, 6)]);
        assert_eq!(SupportRegion::RayNeg { s: -3 }.members(4).unwrap(), vec![k(2, -3), k(3, -6), k(4, -9)]);
        assert_eq!(
            SupportRegion::RayPos { s: 2 }.members(3).unwrap(),
            SupportRegion::StripQ { t: 1, l: 0 }.members(3).unwrap()
        );
        assert!(SupportRegion::FullCone { t: 0 }.members(0).is_err());
        assert!(SupportRegion::VertexCone { r: 4, s: 3 }.members(3).unwrap().is_empty());
    }

    #[test]
    fn region_json_shape() {
        let json = serde_json::to_string(&SupportRegion::StripQ { t: 2, l: 0 }).unwrap();
        assert_eq!(json, r#"{"kind":"strip_q","params":{"t":2,"l":0}}"#);
        let back: SupportRegion = serde_json::from_str(&json).unwrap();
        assert_eq!(back, SupportRegion::StripQ { t: 2, l: 0 });
    }

    #[test]
    fn full_cone_rows_are_spaced_by_six() {
        let members = SupportRegion::FullCone { t: 2 }.members(9).unwrap();
        for n in 1..=9 {
            let ms: Vec<i64> = members.iter().filter(|v| v.n() == n).map(|v| v.m()).collect();
            assert_eq!(ms.len() as i64, n);
            assert!(ms.windows(2).all(|w| w[1] - w[0] == 6));
        }
    }

    #[test]
    fn interior_cone_members_keep_all_neighbors() {
        let region = SupportRegion::FullCone { t: -1 };
        for v in region.members(8).unwrap() {
            let c = from_ktype(-1, v).unwrap();
            if c.p >= 1 && c.q >= 1 {
                for w in v.neighbors() {
                    assert!(region.contains(w.unwrap()));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn cone_coordinates_round_trip(t in -50i64..50, p in 0u32..=100, q in 0u32..=100) {
            let v = to_ktype(t, ConeCoord::new(p, q));
            prop_assert!(KType::new(v.n(), v.m()).is_ok());
            prop_assert_eq!(from_ktype(t, v), Some(ConeCoord::new(p, q)));
        }

        #[test]
        fn region_members_satisfy_invariants(t in -6i64..6, l in 0u32..4, max_n in 1i64..10) {
            for region in [
                SupportRegion::FullCone { t },
                SupportRegion::StripQ { t, l },
                SupportRegion::StripP { t, l },
            ] {
                for v in region.members(max_n).unwrap() {
                    prop_assert!(v.n() >= 1 && v.n() <= max_n);
                    prop_assert_eq!((v.n() + v.m()).rem_euclid(2), 1);
                    prop_assert!(region.contains(v));
                }
            }
        }
    }
}
