//! Invariant Hermitian forms and the unitarity decision.
//!
//! A constituent is unitary exactly when every product `ad` and `bc` on an
//! edge inside its support is a negative real. Along a box-shaped support
//! the sign of `ad` is the sign of `a(p)` and the sign of `bc` is the sign of
//! `b(q)`, two concave quadratics, so the finite scan is completed by an
//! exact maximum over the remaining integers.
//!
//! Norms are squared norms. The top vectors `v(n,m;1)` are normalised by
//! walking the support from its anchor; inside a K-type the `su(2)` law
//! `|v^k|^2 = |v^1|^2 / C(n-1, k-1)` applies.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::RealFormElement;
use crate::coefficients::{local_at, CoefficientTable, EdgePolynomial, ModuleParams};
use crate::error::{Result, Su21Error};
use crate::ktype::{from_ktype, to_ktype, ConeCoord, KType, SupportRegion};
use crate::module::{BasisIndex, LinComb, TruncatedModule};
use crate::scalar::{GaussianRational, Rational, SignClass};
use crate::verify::VerificationReport;

/// Squared norms `1 / C(n-1, k-1)` of the standard basis of the
/// `n`-dimensional `su(2)` module, normalised at `k = 1`.
pub fn su2_norms(n: i64) -> Result<Vec<Rational>> {
    if n < 1 {
        return Err(Su21Error::InvalidParameter(format!("n={n} < 1")));
    }
    let top = BigInt::from(n - 1);
    (0..n)
        .map(|j| {
            let binom = num_integer::binomial(top.clone(), BigInt::from(j));
            Rational::from_bigints(BigInt::from(1), binom)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// `ad`, towards `V(n+1, m+3)`.
    P,
    /// `bc`, towards `V(n+1, m-3)`.
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub ktype: KType,
    pub edge: EdgeKind,
    pub product: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Unitary,
    /// A product inside the support is positive or nonreal.
    Nonunitary {
        witness: Witness,
    },
    /// A product vanishes strictly inside the support.
    BoundaryReducible {
        witness: Witness,
    },
    /// The support is not closed: an edge leaving it carries a nonzero
    /// product.
    NotConstituent {
        witness: Witness,
    },
}

impl Verdict {
    pub fn is_unitary(&self) -> bool {
        matches!(self, Verdict::Unitary)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitarityReport {
    pub verdict: Verdict,
    pub scanned_edges: usize,
    /// The verdict covers every K-type, not only those up to `max_n`.
    pub certified: bool,
}

/// Cone-coordinate box `[p_lo, p_hi] x [q_lo, q_hi]` of a region in the
/// ambient gauge; `None` is unbounded.
#[derive(Clone, Copy, Debug)]
struct Span {
    p_lo: i64,
    p_hi: Option<i64>,
    q_lo: i64,
    q_hi: Option<i64>,
}

fn span(region: &SupportRegion, t: i64) -> Result<Span> {
    let frame = region.frame()?;
    let origin = from_ktype(t, frame.anchor).ok_or(Su21Error::RegionMismatch { anchor: frame.anchor, two_t: 2 * t })?;
    let (p_lo, q_lo) = (i64::from(origin.p), i64::from(origin.q));
    Ok(Span {
        p_lo,
        p_hi: frame.p_max.map(|l| p_lo + i64::from(l)),
        q_lo,
        q_hi: frame.q_max.map(|l| q_lo + i64::from(l)),
    })
}

fn classify_product(product: &GaussianRational) -> Option<fn(Witness) -> Verdict> {
    match product.sign_class() {
        SignClass::NegativeReal => None,
        SignClass::Zero => Some(|witness| Verdict::BoundaryReducible { witness }),
        SignClass::PositiveReal | SignClass::Nonreal => Some(|witness| Verdict::Nonunitary { witness }),
    }
}

fn at(t: i64, p: i64, q: i64) -> KType {
    to_ktype(t, ConeCoord::new(p as u32, q as u32))
}

/// Decides unitarity of the constituent of `params` supported on `region`.
pub fn is_unitary(params: &ModuleParams, region: &SupportRegion, max_n: i64) -> Result<UnitarityReport> {
    if max_n < 1 {
        return Err(Su21Error::InvalidParameter(format!("max_n={max_n} < 1")));
    }
    let (c, t) = params.ambient()?;
    let s = span(region, t)?;
    let along_p = EdgePolynomial::along_p(&c, t);
    let along_q = EdgePolynomial::along_q(&c, t);
    let ad = |p: i64, q: i64| {
        local_at(&c, t, ConeCoord::new(p as u32, q as u32)).a.scale(&Rational::new(p + 1, p + q + 2).unwrap())
    };
    let bc = |p: i64, q: i64| {
        local_at(&c, t, ConeCoord::new(p as u32, q as u32)).b.scale(&Rational::new(q + 1, p + q + 2).unwrap())
    };
    let done = |verdict, scanned_edges| Ok(UnitarityReport { verdict, scanned_edges, certified: true });

    // Closure: edges leaving the box carry zero products.
    let mut exits = Vec::new();
    if let Some(p_hi) = s.p_hi {
        exits.push((p_hi, s.q_lo, EdgeKind::P, ad(p_hi, s.q_lo)));
    }
    if s.p_lo > 0 {
        exits.push((s.p_lo - 1, s.q_lo, EdgeKind::P, ad(s.p_lo - 1, s.q_lo)));
    }
    if let Some(q_hi) = s.q_hi {
        exits.push((s.p_lo, q_hi, EdgeKind::Q, bc(s.p_lo, q_hi)));
    }
    if s.q_lo > 0 {
        exits.push((s.p_lo, s.q_lo - 1, EdgeKind::Q, bc(s.p_lo, s.q_lo - 1)));
    }
    for (p, q, edge, product) in exits {
        if !product.is_zero() {
            return done(Verdict::NotConstituent { witness: Witness { ktype: at(t, p, q), edge, product } }, 0);
        }
    }

    // Scan every interior edge whose source is within the truncation.
    let mut scanned = 0;
    for v in region.members(max_n)? {
        let pos = from_ktype(t, v).expect("region lies in the ambient cone");
        let (p, q) = (i64::from(pos.p), i64::from(pos.q));
        let edges = [
            (EdgeKind::P, s.p_hi.is_none_or(|h| p < h), ad(p, q)),
            (EdgeKind::Q, s.q_hi.is_none_or(|h| q < h), bc(p, q)),
        ];
        for (edge, inside, product) in edges {
            if !inside {
                continue;
            }
            scanned += 1;
            if let Some(verdict) = classify_product(&product) {
                return done(verdict(Witness { ktype: v, edge, product }), scanned);
            }
        }
    }

    // Beyond the truncation: sign of a(p) on [p_lo, p_hi) and of b(q) on
    // [q_lo, q_hi) decides every remaining product.
    if !c.is_real() {
        let product = ad(s.p_lo, s.q_lo);
        return done(
            Verdict::Nonunitary { witness: Witness { ktype: at(t, s.p_lo, s.q_lo), edge: EdgeKind::P, product } },
            scanned,
        );
    }
    let ranges = [
        (EdgeKind::P, &along_p, s.p_lo, s.p_hi.map(|h| h - 1)),
        (EdgeKind::Q, &along_q, s.q_lo, s.q_hi.map(|h| h - 1)),
    ];
    for (edge, poly, lo, hi) in ranges {
        let Some((arg, value)) = poly.max_on_integers(lo, hi) else {
            continue;
        };
        if !value.is_negative() {
            let (ktype, product) = match edge {
                EdgeKind::P => (at(t, arg, s.q_lo), ad(arg, s.q_lo)),
                EdgeKind::Q => (at(t, s.p_lo, arg), bc(s.p_lo, arg)),
            };
            let verdict = classify_product(&product).expect("nonnegative product");
            return done(verdict(Witness { ktype, edge, product }), scanned);
        }
    }
    done(Verdict::Unitary, scanned)
}

/// Squared norms of the top vectors `v(n,m;1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "NormTableRepr", try_from = "NormTableRepr")]
pub struct NormTable {
    anchor: KType,
    base: BTreeMap<KType, Rational>,
}

#[derive(Serialize, Deserialize)]
struct NormEntry {
    n: i64,
    m: i64,
    norm_sq: Rational,
}

#[derive(Serialize, Deserialize)]
struct NormTableRepr {
    anchor: KType,
    base: Vec<NormEntry>,
}

impl From<NormTable> for NormTableRepr {
    fn from(table: NormTable) -> Self {
        NormTableRepr {
            anchor: table.anchor,
            base: table.base.into_iter().map(|(v, norm_sq)| NormEntry { n: v.n(), m: v.m(), norm_sq }).collect(),
        }
    }
}

impl TryFrom<NormTableRepr> for NormTable {
    type Error = Su21Error;

    fn try_from(repr: NormTableRepr) -> Result<Self> {
        let base = repr.base.into_iter().map(|e| Ok((KType::new(e.n, e.m)?, e.norm_sq))).collect::<Result<_>>()?;
        Ok(NormTable { anchor: repr.anchor, base })
    }
}

impl NormTable {
    pub fn anchor(&self) -> KType {
        self.anchor
    }

    pub fn base(&self, v: KType) -> Option<&Rational> {
        self.base.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&KType, &Rational)> {
        self.base.iter()
    }

    pub fn norm_sq(&self, idx: BasisIndex) -> Option<Rational> {
        let base = self.base.get(&idx.ktype)?;
        let su2 = su2_norms(idx.n()).ok()?;
        Some(base * &su2[(idx.k - 1) as usize])
    }
}

fn real_positive(v: KType, value: GaussianRational) -> Result<Rational> {
    match value.as_real() {
        Some(r) if r.is_positive() => Ok(r.clone()),
        _ => Err(Su21Error::NonPositiveNorm { ktype: v, value: value.to_string() }),
    }
}

/// Normalises the anchor to 1 and propagates along both edge directions,
/// level by level. Every K-type with two predecessors is reached twice and
/// the two values must agree.
pub fn build_norms(module: &TruncatedModule) -> Result<NormTable> {
    let region = module.support();
    let table = CoefficientTable::build(module.params(), region, module.max_n())?;
    let anchor = region.frame()?.anchor;
    let coeffs = |v: KType| table.get(v).expect("member within the table");

    let mut base = BTreeMap::new();
    base.insert(anchor, Rational::one());
    let mut queue = VecDeque::from([anchor]);
    while let Some(u) = queue.pop_front() {
        if u.n() >= module.max_n() {
            continue;
        }
        let norm_u = GaussianRational::real(base[&u].clone());
        let here = coeffs(u);
        for (w, forward) in [(u.up_p(), &here.a), (u.up_q(), &here.b)] {
            if !region.contains(w) {
                continue;
            }
            let back = if w == u.up_p() { coeffs(w).d.conj() } else { coeffs(w).c.conj() };
            let value = (&(-back) * &norm_u).checked_div(forward)?;
            let value = real_positive(w, value)?;
            match base.get(&w) {
                Some(existing) if *existing != value => {
                    return Err(Su21Error::InconsistentGauge {
                        ktype: w,
                        first: existing.to_string(),
                        second: value.to_string(),
                    });
                }
                Some(_) => {}
                None => {
                    base.insert(w, value);
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(NormTable { anchor, base })
}

/// `<C u, w> + <u, C w> = 0` for the eight real-form elements and all basis
/// pairs `u, w` with `u` one level below the truncation.
pub fn check_adjoint(module: &TruncatedModule, norms: &NormTable) -> Result<VerificationReport> {
    let elements: Vec<_> = RealFormElement::ALL.iter().map(|e| (*e, e.element())).collect();
    module
        .basis()
        .par_iter()
        .map(|u| -> Result<VerificationReport> {
            let mut report = VerificationReport::default();
            if !module.is_interior(*u, 1) {
                report.skipped_boundary += elements.len();
                return Ok(report);
            }
            let norm_u = norms.norm_sq(*u).ok_or(Su21Error::InvalidBasisIndex(*u))?;
            let partners: Vec<BasisIndex> = std::iter::once(Some(u.ktype))
                .chain(u.ktype.neighbors())
                .flatten()
                .flat_map(|v| (1..=v.n()).map(move |k| BasisIndex { ktype: v, k }))
                .filter(|w| module.contains(*w))
                .collect();
            let single = LinComb::basis(*u);
            for (name, element) in &elements {
                let cu = module.apply(element, &single)?.vector;
                let mut discrepancy = LinComb::zero();
                for w in &partners {
                    let norm_w = norms.norm_sq(*w).ok_or(Su21Error::InvalidBasisIndex(*w))?;
                    let cw = module.apply(element, &LinComb::basis(*w))?.vector;
                    let lhs = &cu.coefficient(*w).scale(&norm_w) + &cw.coefficient(*u).conj().scale(&norm_u);
                    discrepancy.add_term(*w, &lhs);
                }
                report.checked += 1;
                if !discrepancy.is_zero() {
                    report.failures.push(crate::verify::Failure {
                        relation: format!("adjoint {name}"),
                        index: *u,
                        discrepancy,
                    });
                }
            }
            Ok(report)
        })
        .try_reduce(VerificationReport::default, |a, b| Ok(a.merge(b)))
}
