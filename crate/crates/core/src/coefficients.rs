//! Action coefficients of `V(c, 2t)` and their gauge-independent products.
//!
//! At the K-type reached by `(p, q)` cone steps the canonical gauge is
//!
//! ```text
//! a = 2c - (p+1)t - p(p+2)          b = 2c + (q+1)t - q(q+2)
//! c = q / (p+q+1)                   d = p / (p+q+1)
//! ```
//!
//! so `a` depends on `p` only and `b` on `q` only. The products
//! `ad = a(p,q) d(p+1,q)` and `bc = b(p,q) c(p,q+1)` are what every
//! reducibility and unitarity question is decided on.
//!
//! `W(r, s)` modules are handled through the cone `V(c, 2t)` that contains
//! them (the first embedding), with coordinates shifted so that `(r-1, 0)`
//! is the `W` vertex.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Result, Su21Error};
use crate::ktype::{from_ktype, to_ktype, ConeCoord, KType, SupportRegion};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleParams {
    Cone { c: GaussianRational, t: i64 },
    Vertex { r: i64, s: i64 },
}

impl ModuleParams {
    pub fn cone(c: GaussianRational, t: i64) -> Self {
        ModuleParams::Cone { c, t }
    }

    pub fn vertex(r: i64, s: i64) -> Result<Self> {
        validate_vertex(r, s)?;
        Ok(ModuleParams::Vertex { r, s })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ModuleParams::Cone { .. } => Ok(()),
            ModuleParams::Vertex { r, s } => validate_vertex(r, s),
        }
    }

    /// The cone `(c, t)` whose canonical gauge realises this module.
    pub fn ambient(&self) -> Result<(GaussianRational, i64)> {
        match self {
            ModuleParams::Cone { c, t } => Ok((c.clone(), *t)),
            ModuleParams::Vertex { r, s } => Ok(wrs_embeddings(*r, *s)?[0].clone()),
        }
    }

    /// The K-type the module is generated from.
    pub fn anchor(&self) -> KType {
        match *self {
            ModuleParams::Cone { t, .. } => to_ktype(t, ConeCoord::new(0, 0)),
            ModuleParams::Vertex { r, s } => KType::new(r, s).expect("validated vertex"),
        }
    }
}

pub(crate) fn validate_vertex(r: i64, s: i64) -> Result<()> {
    if r <= 1 {
        return Err(Su21Error::InvalidParameter(format!("W(r,s) needs r > 1, got r={r}")));
    }
    if (r + s).rem_euclid(2) != 1 {
        return Err(Su21Error::InvalidParameter(format!("W(r,s) needs r+s odd, got ({r},{s})")));
    }
    Ok(())
}

/// The four numbers of the canonical gauge attached to cone position
/// `(p, q)`, at their printed index placement: `a`, `b` live on
/// `V(p,q)`, `c` on `V(p,q+1)` and `d` on `V(p+1,q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientQuad {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub d: GaussianRational,
}

/// `ad = a_{nm} d_{n+1,m+3}`, `bc = b_{nm} c_{n+1,m-3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductPair {
    pub ad: GaussianRational,
    pub bc: GaussianRational,
}

/// Coefficients `a, b, c, d` that belong to a single K-type, in the sense of
/// the action formulas (`c` multiplies `V(n-1, m+3)`, `d` multiplies
/// `V(n-1, m-3)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCoefficients {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub d: GaussianRational,
}

/// `-x^2 + linear*x + constant`, the shape of both `a(p)` and `b(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePolynomial {
    pub linear: i64,
    pub constant: GaussianRational,
}

impl EdgePolynomial {
    /// `a(p) = 2c - (p+1)t - p(p+2)`.
    pub fn along_p(c: &GaussianRational, t: i64) -> Self {
        EdgePolynomial { linear: -(t + 2), constant: &c.scale(&2.into()) - &GaussianRational::from_integer(t) }
    }

    /// `b(q) = 2c + (q+1)t - q(q+2)`.
    pub fn along_q(c: &GaussianRational, t: i64) -> Self {
        EdgePolynomial { linear: t - 2, constant: &c.scale(&2.into()) + &GaussianRational::from_integer(t) }
    }

    pub fn eval(&self, x: i64) -> GaussianRational {
        let poly = -x * x + self.linear * x;
        &self.constant + &GaussianRational::from_integer(poly)
    }

    fn eval_big(&self, x: &BigInt) -> GaussianRational {
        let poly = -(x * x) + BigInt::from(self.linear) * x;
        &self.constant + &GaussianRational::real(Rational::from(poly))
    }

    /// Smallest integer root `>= from`, found exactly.
    pub fn first_root_from(&self, from: i64) -> Option<i64> {
        let k = self.constant.as_real()?.to_integer()?;
        // x^2 - linear x - k = 0
        let lin = BigInt::from(self.linear);
        let disc = &lin * &lin + BigInt::from(4) * &k;
        if disc.is_negative() {
            return None;
        }
        let root = disc.sqrt();
        if &root * &root != disc {
            return None;
        }
        let mut roots: Vec<i64> = [&lin - &root, &lin + &root]
            .into_iter()
            .filter_map(|num: BigInt| (num / BigInt::from(2)).to_i64())
            .filter(|&x| x >= from)
            .collect();
        roots.sort_unstable();
        roots.into_iter().next()
    }

    /// Largest value on the integers of `[lo, hi]` (`hi = None` means
    /// unbounded) together with an argmax. Requires a real constant term.
    pub fn max_on_integers(&self, lo: i64, hi: Option<i64>) -> Option<(i64, Rational)> {
        self.constant.as_real()?;
        if hi.is_some_and(|h| h < lo) {
            return None;
        }
        // vertex of the parabola at linear / 2
        let vertex = Rational::new(self.linear, 2).ok()?;
        let clip = |x: BigInt| -> BigInt {
            let x = x.max(BigInt::from(lo));
            match hi {
                Some(h) => x.min(BigInt::from(h)),
                None => x,
            }
        };
        let mut candidates = vec![BigInt::from(lo), clip(vertex.floor()), clip(vertex.ceil())];
        if let Some(h) = hi {
            candidates.push(BigInt::from(h));
        }
        candidates
            .into_iter()
            .map(|x| {
                let v = self.eval_big(&x).re;
                (x, v)
            })
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .and_then(|(x, v)| Some((x.to_i64()?, v)))
    }
}

fn ratio(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den).expect("positive denominator")
}

/// Gauge values at cone position `(p, q)` of `V(c, 2t)`.
pub fn local_at(c: &GaussianRational, t: i64, v: ConeCoord) -> LocalCoefficients {
    let (p, q) = (i64::from(v.p), i64::from(v.q));
    let level = p + q + 1;
    LocalCoefficients {
        a: EdgePolynomial::along_p(c, t).eval(p),
        b: EdgePolynomial::along_q(c, t).eval(q),
        c: ratio(q, level),
        d: ratio(p, level),
    }
}

fn cone_only(params: &ModuleParams) -> Result<(&GaussianRational, i64)> {
    match params {
        ModuleParams::Cone { c, t } => Ok((c, *t)),
        ModuleParams::Vertex { .. } => {
            Err(Su21Error::InvalidParameter("operation needs cone parameters V(c,2t)".into()))
        }
    }
}

pub fn coeff_quad(params: &ModuleParams, v: ConeCoord) -> Result<CoefficientQuad> {
    let (c, t) = cone_only(params)?;
    let (p, q) = (i64::from(v.p), i64::from(v.q));
    Ok(CoefficientQuad {
        a: EdgePolynomial::along_p(c, t).eval(p),
        b: EdgePolynomial::along_q(c, t).eval(q),
        c: ratio(q + 1, p + q + 2),
        d: ratio(p + 1, p + q + 2),
    })
}

/// Closed-form products at cone position `(p, q)`.
pub fn products(params: &ModuleParams, v: ConeCoord) -> Result<ProductPair> {
    let (c, t) = cone_only(params)?;
    Ok(cone_products(c, t, v))
}

pub(crate) fn cone_products(c: &GaussianRational, t: i64, v: ConeCoord) -> ProductPair {
    let (p, q) = (i64::from(v.p), i64::from(v.q));
    ProductPair {
        ad: EdgePolynomial::along_p(c, t).eval(p).scale(ratio(p + 1, p + q + 2).as_real().unwrap()),
        bc: EdgePolynomial::along_q(c, t).eval(q).scale(ratio(q + 1, p + q + 2).as_real().unwrap()),
    }
}

/// Products at an arbitrary K-type of the module's ambient cone.
pub fn products_at(params: &ModuleParams, v: KType) -> Result<Option<ProductPair>> {
    let (c, t) = params.ambient()?;
    Ok(from_ktype(t, v).map(|pos| cone_products(&c, t, pos)))
}

/// Products at the vertex of `W(r, s)`, from the unique solution of the
/// vertex system with no inflow.
pub fn wrs_products(r: i64, s: i64) -> Result<ProductPair> {
    validate_vertex(r, s)?;
    let den = 2 * (r + 1);
    Ok(ProductPair { ad: ratio(-r * (s + r + 1), den), bc: ratio(r * (s - r - 1), den) })
}

/// The two cones containing `W(r, s)`, as `(c, t)` pairs.
pub fn wrs_embeddings(r: i64, s: i64) -> Result<[(GaussianRational, i64); 2]> {
    if r < 1 || (r + s).rem_euclid(2) != 1 {
        return Err(Su21Error::InvalidParameter(format!("no embedding for W({r},{s})")));
    }
    let c1 = ratio((r - 1) * (-r + 1 + s) - 2, 4);
    let c2 = ratio((r - 1) * (-r + 1 - s) - 2, 4);
    Ok([(c1, (-3 * r + 3 + s) / 2), (c2, (3 * r - 3 + s) / 2)])
}

/// Inflowing products at a K-type `V(n, m)`: `cb = c_{nm} b_{n-1,m+3}` and
/// `da = d_{nm} a_{n-1,m-3}`, zero when the neighbour is not a K-type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Inflow {
    pub cb: GaussianRational,
    pub da: GaussianRational,
}

/// Solves the two linear relations
///
/// ```text
/// -(1/n) ad +      bc = (m-n+1)/2 + cb
///      -ad + (1/n) bc = (m+n-1)/2 - da
/// ```
///
/// for `(ad, bc)`. At `n = 1` both rows coincide and `ad` must be given.
pub fn solve_vertex_system(
    n: i64,
    m: i64,
    inflow: &Inflow,
    given_ad: Option<&GaussianRational>,
) -> Result<ProductPair> {
    if n < 1 {
        return Err(Su21Error::InvalidParameter(format!("n={n} < 1")));
    }
    let rhs1 = &ratio(m - n + 1, 2) + &inflow.cb;
    let rhs2 = &ratio(m + n - 1, 2) - &inflow.da;
    if n == 1 {
        let ad = given_ad.ok_or(Su21Error::UnderdeterminedVertex { n, m })?.clone();
        if rhs1 != rhs2 {
            return Err(Su21Error::DegenerateInput(format!("inconsistent n=1 relations at V(1,{m})")));
        }
        let bc = &rhs1 + &ad;
        return Ok(ProductPair { ad, bc });
    }
    // Cramer's rule on [[-1/n, 1], [-1, 1/n]].
    let inv_n = ratio(1, n);
    let m11 = -&inv_n;
    let m12 = GaussianRational::one();
    let m21 = -GaussianRational::one();
    let m22 = inv_n;
    let det = &(&m11 * &m22) - &(&m12 * &m21);
    let ad = (&(&rhs1 * &m22) - &(&m12 * &rhs2)).checked_div(&det)?;
    let bc = (&(&m11 * &rhs2) - &(&rhs1 * &m21)).checked_div(&det)?;
    if let Some(expected) = given_ad {
        if *expected != ad {
            return Err(Su21Error::DegenerateInput(format!(
                "prescribed ad={expected} contradicts the unique solution {ad}"
            )));
        }
    }
    Ok(ProductPair { ad, bc })
}

/// Coefficients for every region member up to a level, in the module's
/// ambient gauge. K-types outside the region have no entry and count as
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    region: SupportRegion,
    max_n: i64,
    entries: BTreeMap<KType, LocalCoefficients>,
}

impl CoefficientTable {
    pub fn build(params: &ModuleParams, region: &SupportRegion, max_n: i64) -> Result<Self> {
        let (c, t) = params.ambient()?;
        let mut entries = BTreeMap::new();
        for v in region.members(max_n)? {
            let pos =
                from_ktype(t, v).ok_or(Su21Error::RegionMismatch { anchor: region.frame()?.anchor, two_t: 2 * t })?;
            entries.insert(v, local_at(&c, t, pos));
        }
        Ok(CoefficientTable { region: region.clone(), max_n, entries })
    }

    pub fn region(&self) -> &SupportRegion {
        &self.region
    }

    pub fn max_n(&self) -> i64 {
        self.max_n
    }

    /// `None` outside the region; panics for region members beyond the
    /// covered level.
    pub fn get(&self, v: KType) -> Option<&LocalCoefficients> {
        if !self.region.contains(v) {
            return None;
        }
        assert!(v.n() <= self.max_n, "{v} lies beyond the coefficient table (max_n={})", self.max_n);
        self.entries.get(&v)
    }

    pub fn get_mut(&mut self, v: KType) -> Option<&mut LocalCoefficients> {
        self.entries.get_mut(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&KType, &LocalCoefficients)> {
        self.entries.iter()
    }

    /// Products at `v` computed from the stored coefficients; a neighbour
    /// outside the region contributes zero. `None` when `v` is outside the
    /// region or its upper neighbours are beyond the table.
    pub fn products(&self, v: KType) -> Option<ProductPair> {
        if v.n() + 1 > self.max_n {
            return None;
        }
        let here = self.get(v)?;
        let zero = GaussianRational::zero();
        let d_up = self.get(v.up_p()).map_or(zero.clone(), |w| w.d.clone());
        let c_up = self.get(v.up_q()).map_or(zero, |w| w.c.clone());
        Some(ProductPair { ad: &here.a * &d_up, bc: &here.b * &c_up })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn cone(c: &str, t: i64) -> ModuleParams {
        ModuleParams::cone(gr(c), t)
    }

    #[test]
    fn quad_examples() {
        let q = coeff_quad(&cone("0", 0), ConeCoord::new(0, 0)).unwrap();
        assert_eq!((q.a, q.b, q.c, q.d), (gr("0"), gr("0"), gr("1/2"), gr("1/2")));
        let q = coeff_quad(&cone("-1/2", -3), ConeCoord::new(3, 0)).unwrap();
        assert_eq!(q.a, gr("-4"));
        let q = coeff_quad(&cone("-1/2", 1), ConeCoord::new(0, 0)).unwrap();
        assert_eq!((q.a, q.b), (gr("-2"), gr("0")));
        assert!(coeff_quad(&ModuleParams::vertex(4, 3).unwrap(), ConeCoord::new(0, 0)).is_err());
    }

    #[test]
    fn product_examples() {
        let p = products(&cone("7/3+1/5*i", 4), ConeCoord::new(0, 0)).unwrap();
        assert_eq!(p.ad, gr("7/3+1/5*i") - gr("2"));
        assert_eq!(p.bc, gr("7/3+1/5*i") + gr("2"));
        let w43 = ProductPair { ad: gr("-16/5"), bc: gr("-4/5") };
        assert_eq!(products(&cone("-1/2", -3), ConeCoord::new(3, 0)).unwrap(), w43);
        assert_eq!(products(&cone("-5", 6), ConeCoord::new(0, 3)).unwrap(), w43);
    }

    #[test]
    fn wrs_examples() {
        assert_eq!(wrs_products(4, 3).unwrap(), ProductPair { ad: gr("-16/5"), bc: gr("-4/5") });
        assert_eq!(wrs_products(2, -3).unwrap(), ProductPair { ad: gr("0"), bc: gr("-2") });
        assert_eq!(wrs_products(2, 3).unwrap(), ProductPair { ad: gr("-2"), bc: gr("0") });
        assert!(wrs_products(1, 2).is_err());
        assert!(wrs_products(3, 3).is_err());
    }

    #[test]
    fn embeddings() {
        let [e1, e2] = wrs_embeddings(4, 3).unwrap();
        assert_eq!(e1, (gr("-1/2"), -3));
        assert_eq!(e2, (gr("-5"), 6));
        let [e1, e2] = wrs_embeddings(2, 1).unwrap();
        assert_eq!(e1, (gr("-1/2"), -1));
        assert_eq!(e2, (gr("-1"), 2));
    }

    #[test]
    fn vertex_system_examples() {
        let p = solve_vertex_system(4, 3, &Inflow::default(), None).unwrap();
        assert_eq!(p, ProductPair { ad: gr("-16/5"), bc: gr("-4/5") });

        let (c, t) = (gr("3/7-2*i"), 5);
        let ad = &c - &gr("5/2");
        let p = solve_vertex_system(1, 2 * t, &Inflow::default(), Some(&ad)).unwrap();
        assert_eq!(p.bc, &c + &gr("5/2"));

        let err = solve_vertex_system(1, 0, &Inflow::default(), None).unwrap_err();
        assert!(matches!(err, Su21Error::UnderdeterminedVertex { n: 1, m: 0 }));
    }

    #[test]
    fn vertex_system_second_level_from_origin() {
        // V(0,0): inflows into (1,0) and (0,1) come from the vertex products.
        let params = cone("0", 0);
        let origin = products(&params, ConeCoord::new(0, 0)).unwrap();
        let at_p =
            solve_vertex_system(2, 3, &Inflow { cb: GaussianRational::zero(), da: origin.ad.clone() }, None).unwrap();
        assert_eq!(at_p, products(&params, ConeCoord::new(1, 0)).unwrap());
        let at_q = solve_vertex_system(2, -3, &Inflow { cb: origin.bc, da: GaussianRational::zero() }, None).unwrap();
        assert_eq!(at_q, products(&params, ConeCoord::new(0, 1)).unwrap());
    }

    #[test]
    fn edge_polynomial_roots() {
        // a(p) for (c,t) = (-1/2,-3) is -(p-2)(p+1)
        let a = EdgePolynomial::along_p(&gr("-1/2"), -3);
        assert_eq!(a.first_root_from(0), Some(2));
        assert_eq!(a.first_root_from(3), None);
        // b(q) at the threshold c(6) = -5 is -(q-2)^2
        let b = EdgePolynomial::along_q(&gr("-5"), 6);
        assert_eq!(b.first_root_from(0), Some(2));
        assert_eq!(b.max_on_integers(0, None).unwrap(), (2, Rational::zero()));
        assert_eq!(EdgePolynomial::along_q(&gr("1/3"), 0).first_root_from(0), None);
        assert_eq!(EdgePolynomial::along_q(&gr("i"), 0).first_root_from(0), None);
    }

    #[test]
    fn edge_polynomial_maximum_matches_scan() {
        for t in -8..=8 {
            for c4 in -40..=8 {
                let c = GaussianRational::from_ratio(c4, 4).unwrap();
                for poly in [EdgePolynomial::along_p(&c, t), EdgePolynomial::along_q(&c, t)] {
                    for lo in 0..4 {
                        let (_, max) = poly.max_on_integers(lo, None).unwrap();
                        let scan = (lo..lo + 60).map(|x| poly.eval(x).re).max().unwrap();
                        assert_eq!(max, scan);
                        let (_, bounded) = poly.max_on_integers(lo, Some(lo + 2)).unwrap();
                        let scan = (lo..=lo + 2).map(|x| poly.eval(x).re).max().unwrap();
                        assert_eq!(bounded, scan);
                    }
                }
            }
        }
    }
}
