//! Truncated `(g, K)`-modules.
//!
//! A [`TruncatedModule`] holds the basis `v(n,m;k)` for every supported
//! K-type with `n <= max_n` and the sparse action of all nine generators on
//! it. Inside a K-type the `su(2)` conventions are
//!
//! ```text
//! H_alpha v^k = (n+1-2k) v^k     X_alpha v^k = -(k-1) v^(k-1)     Y_alpha v^k = -(n-k) v^(k+1)
//! ```
//!
//! and `Z` acts by `m`. The four noncompact root vectors move between
//! K-types with the coefficients `a, b, c, d` of the ambient gauge.
//!
//! Action targets that land above `max_n` are kept (they are genuine vectors
//! of the infinite module) but are not basis vectors; applying anything to
//! them is an error. Targets outside the support are dropped, which realises
//! the constituent as a submodule or, for `W(r, s)`, as a quotient.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Generator};
use crate::coefficients::{validate_vertex, CoefficientTable, EdgePolynomial, LocalCoefficients, ModuleParams};
use crate::error::{Result, Su21Error};
use crate::ktype::{from_ktype, KType, SupportRegion};
use crate::scalar::{GaussianRational, Rational};
use crate::unitarity::NormTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub ktype: KType,
    pub k: i64,
}

impl BasisIndex {
    pub fn new(ktype: KType, k: i64) -> Result<Self> {
        if k < 1 || k > ktype.n() {
            return Err(Su21Error::InvalidParameter(format!("k={k} outside 1..={} for {ktype}", ktype.n())));
        }
        Ok(BasisIndex { ktype, k })
    }

    pub fn n(self) -> i64 {
        self.ktype.n()
    }

    pub fn m(self) -> i64 {
        self.ktype.m()
    }

    fn triple(self) -> [i64; 3] {
        [self.n(), self.m(), self.k]
    }

    fn from_triple([n, m, k]: [i64; 3]) -> Result<Self> {
        BasisIndex::new(KType::new(n, m)?, k)
    }
}

impl Serialize for BasisIndex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.triple().serialize(serializer)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v({},{};{})", self.n(), self.m(), self.k)
    }
}

/// Sparse vector over the (infinite) module basis; never stores zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb(BTreeMap<BasisIndex, GaussianRational>);

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn basis(idx: BasisIndex) -> Self {
        let mut v = LinComb::zero();
        v.add_term(idx, &GaussianRational::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, idx: BasisIndex, coeff: &GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.0.entry(idx).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.0.remove(&idx);
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, k: &GaussianRational) {
        for (idx, c) in other.iter() {
            self.add_term(*idx, &(c * k));
        }
    }

    pub fn coefficient(&self, idx: BasisIndex) -> GaussianRational {
        self.0.get(&idx).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisIndex, &GaussianRational)> {
        self.0.iter()
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &(-GaussianRational::one()));
        out
    }
}

impl Serialize for LinComb {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<([i64; 3], &Rational, &Rational)> =
            self.iter().map(|(i, c)| (i.triple(), &c.re, &c.im)).collect();
        terms.serialize(serializer)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.iter().map(|(i, c)| format!("({c}){i}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Result of [`TruncatedModule::apply`]; `truncated` is set when some
/// target lies above `max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub vector: LinComb,
    pub truncated: bool,
}

#[derive(Clone, Debug)]
pub struct TruncatedModule {
    params: ModuleParams,
    max_n: i64,
    support: SupportRegion,
    basis: Vec<BasisIndex>,
    action: BTreeMap<Generator, BTreeMap<BasisIndex, LinComb>>,
}

/// Region of the constituent that contains the module's anchor K-type.
///
/// Walls are the exact integer zeros of `a(p)` and `b(q)`; since `a` does
/// not depend on `q` (and `b` not on `p`) each zero cuts a whole row of
/// edges, so the constituent is always a box.
pub fn support_of(params: &ModuleParams) -> Result<SupportRegion> {
    params.validate()?;
    let (c, t) = params.ambient()?;
    let along_p = EdgePolynomial::along_p(&c, t);
    let along_q = EdgePolynomial::along_q(&c, t);
    match *params {
        ModuleParams::Cone { .. } => {
            let p_max = along_p.first_root_from(0).map(|x| x as u32);
            let q_max = along_q.first_root_from(0).map(|x| x as u32);
            Ok(match (p_max, q_max) {
                (None, None) => SupportRegion::FullCone { t },
                (None, Some(l)) => SupportRegion::StripQ { t, l },
                (Some(l), None) => SupportRegion::StripP { t, l },
                (Some(0), Some(0)) => SupportRegion::Point { m: 2 * t },
                (p_max, q_max) => SupportRegion::Sector { n: 1, m: 2 * t, p_max, q_max },
            })
        }
        ModuleParams::Vertex { r, s } => {
            let p_max = along_p.first_root_from(r - 1).map(|x| (x - (r - 1)) as u32);
            let q_max = along_q.first_root_from(0).map(|x| x as u32);
            Ok(match (p_max, q_max) {
                (None, None) => SupportRegion::VertexCone { r, s },
                (Some(0), None) if r == -s - 1 => SupportRegion::RayNeg { s },
                (None, Some(0)) if r == s - 1 => SupportRegion::RayPos { s },
                (p_max, q_max) => SupportRegion::Sector { n: r, m: s, p_max, q_max },
            })
        }
    }
}

fn frac(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den).expect("nonzero denominator")
}

/// Targets `(K-type, k, coefficient)` of one generator.
type RawRow = Vec<(KType, i64, GaussianRational)>;

/// The nine generator rows for `v(n,m;k)` with local coefficients `coeffs`,
/// before any support filtering.
fn raw_action(idx: BasisIndex, coeffs: &LocalCoefficients) -> Vec<(Generator, RawRow)> {
    let v = idx.ktype;
    let (n, m, k) = (v.n(), v.m(), idx.k);
    let up_p = v.up_p();
    let up_q = v.up_q();
    let mut rows = vec![
        (Generator::HAlpha, vec![(v, k, GaussianRational::from_integer(n + 1 - 2 * k))]),
        (Generator::HBeta, vec![(v, k, frac(m - n - 1 + 2 * k, 2))]),
        (Generator::Z, vec![(v, k, GaussianRational::from_integer(m))]),
        (Generator::XAlpha, vec![(v, k - 1, GaussianRational::from_integer(-(k - 1)))]),
        (Generator::YAlpha, vec![(v, k + 1, GaussianRational::from_integer(-(n - k)))]),
    ];
    let mut x_ab = vec![(up_p, k, coeffs.a.clone())];
    let mut x_b = vec![(up_p, k + 1, -&coeffs.a)];
    let mut y_ab = vec![(up_q, k + 1, coeffs.b.clone())];
    let mut y_b = vec![(up_q, k, coeffs.b.clone())];
    if n > 1 {
        let down_q = v.down_q().expect("n > 1");
        let down_p = v.down_p().expect("n > 1");
        x_ab.push((down_q, k - 1, &frac(k - 1, n - 1) * &coeffs.c));
        x_b.push((down_q, k, &frac(n - k, n - 1) * &coeffs.c));
        y_ab.push((down_p, k, &frac(n - k, n - 1) * &coeffs.d));
        y_b.push((down_p, k - 1, -&(&frac(k - 1, n - 1) * &coeffs.d)));
    }
    rows.push((Generator::XAlphaBeta, x_ab));
    rows.push((Generator::XBeta, x_b));
    rows.push((Generator::YAlphaBeta, y_ab));
    rows.push((Generator::YBeta, y_b));
    rows
}

impl TruncatedModule {
    /// Builds the constituent containing the anchor K-type.
    pub fn build(params: &ModuleParams, max_n: i64) -> Result<Self> {
        let support = support_of(params)?;
        TruncatedModule::build_on(params, &support, max_n)
    }

    /// Builds on an explicit support, e.g. the full cone of a reducible
    /// `V(c, 2t)`.
    pub fn build_on(params: &ModuleParams, support: &SupportRegion, max_n: i64) -> Result<Self> {
        params.validate()?;
        if max_n < 1 {
            return Err(Su21Error::InvalidParameter(format!("max_n={max_n} < 1")));
        }
        if let ModuleParams::Vertex { r, s } = *params {
            validate_vertex(r, s)?;
            if max_n < r {
                return Err(Su21Error::EmptyTruncation { r, max_n });
            }
        }
        let table = CoefficientTable::build(params, support, max_n)?;
        TruncatedModule::from_table(params, &table)
    }

    /// Builds from an explicit coefficient table; the table's coverage is the
    /// truncation level.
    pub fn from_table(params: &ModuleParams, table: &CoefficientTable) -> Result<Self> {
        let support = table.region().clone();
        let max_n = table.max_n();
        let mut basis = Vec::new();
        let mut action: BTreeMap<Generator, BTreeMap<BasisIndex, LinComb>> = BTreeMap::new();
        for (v, coeffs) in table.iter() {
            for k in 1..=v.n() {
                let idx = BasisIndex { ktype: *v, k };
                basis.push(idx);
                for (g, terms) in raw_action(idx, coeffs) {
                    let mut row = LinComb::zero();
                    for (target, tk, coeff) in terms {
                        if tk < 1 || tk > target.n() || !support.contains(target) {
                            continue;
                        }
                        row.add_term(BasisIndex { ktype: target, k: tk }, &coeff);
                    }
                    action.entry(g).or_default().insert(idx, row);
                }
            }
        }
        basis.sort();
        Ok(TruncatedModule { params: params.clone(), max_n, support, basis, action })
    }

    pub fn params(&self) -> &ModuleParams {
        &self.params
    }

    pub fn max_n(&self) -> i64 {
        self.max_n
    }

    pub fn support(&self) -> &SupportRegion {
        &self.support
    }

    pub fn basis(&self) -> &[BasisIndex] {
        &self.basis
    }

    pub fn contains(&self, idx: BasisIndex) -> bool {
        self.basis.binary_search(&idx).is_ok()
    }

    /// Every neighbouring K-type reachable in `depth` steps stays within
    /// `max_n`.
    pub fn is_interior(&self, idx: BasisIndex, depth: i64) -> bool {
        idx.n() + depth <= self.max_n
    }

    pub fn row(&self, g: Generator, idx: BasisIndex) -> Result<&LinComb> {
        self.action.get(&g).and_then(|rows| rows.get(&idx)).ok_or(Su21Error::InvalidBasisIndex(idx))
    }

    pub fn apply_generator(&self, g: Generator, vec: &LinComb) -> Result<Applied> {
        let mut out = LinComb::zero();
        for (idx, val) in vec.iter() {
            out.add_scaled(self.row(g, *idx)?, val);
        }
        Ok(self.flag(out))
    }

    pub fn apply(&self, x: &AlgebraElement, vec: &LinComb) -> Result<Applied> {
        let mut out = LinComb::zero();
        for (g, coeff) in x.terms() {
            for (idx, val) in vec.iter() {
                out.add_scaled(self.row(g, *idx)?, &(coeff * val));
            }
        }
        Ok(self.flag(out))
    }

    fn flag(&self, vector: LinComb) -> Applied {
        let truncated = vector.iter().any(|(idx, _)| idx.n() > self.max_n);
        Applied { vector, truncated }
    }

    pub fn to_document(&self, norms: Option<&NormTable>) -> ModuleDocument {
        let action = self
            .action
            .iter()
            .map(|(g, rows)| {
                let rows = rows
                    .iter()
                    .map(|(from, row)| ActionRow {
                        from: from.triple(),
                        terms: row.iter().map(|(to, c)| (to.triple(), c.re.clone(), c.im.clone())).collect(),
                    })
                    .collect();
                (g.name().to_string(), rows)
            })
            .collect();
        ModuleDocument {
            params: self.params.clone(),
            max_n: self.max_n,
            support: self.support.clone(),
            basis: self.basis.iter().map(|b| BasisEntry { n: b.n(), m: b.m(), k: b.k }).collect(),
            action,
            norms: norms.cloned(),
        }
    }

    /// Reconstructs a module from its serialized action table without
    /// recomputing any coefficient.
    pub fn from_document(doc: &ModuleDocument) -> Result<Self> {
        doc.params.validate()?;
        let mut basis =
            doc.basis.iter().map(|b| BasisIndex::from_triple([b.n, b.m, b.k])).collect::<Result<Vec<_>>>()?;
        basis.sort();
        let mut action = BTreeMap::new();
        for (name, rows) in &doc.action {
            let g =
                Generator::from_name(name).ok_or_else(|| Su21Error::Parse(format!("unknown generator {name:?}")))?;
            let mut table = BTreeMap::new();
            for row in rows {
                let from = BasisIndex::from_triple(row.from)?;
                let mut comb = LinComb::zero();
                for (to, re, im) in &row.terms {
                    let c = GaussianRational::new(re.clone(), im.clone());
                    comb.add_term(BasisIndex::from_triple(*to)?, &c);
                }
                table.insert(from, comb);
            }
            action.insert(g, table);
        }
        Ok(TruncatedModule {
            params: doc.params.clone(),
            max_n: doc.max_n,
            support: doc.support.clone(),
            basis,
            action,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub n: i64,
    pub m: i64,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRow {
    pub from: [i64; 3],
    pub terms: Vec<([i64; 3], Rational, Rational)>,
}

/// On-disk form of a truncated module. Rationals are strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDocument {
    pub params: ModuleParams,
    pub max_n: i64,
    pub support: SupportRegion,
    pub basis: Vec<BasisEntry>,
    pub action: BTreeMap<String, Vec<ActionRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norms: Option<NormTable>,
}

impl ModuleDocument {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        ModuleDocument::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Cone position of a K-type in the module's ambient gauge.
pub fn ambient_position(params: &ModuleParams, v: KType) -> Result<Option<crate::ktype::ConeCoord>> {
    let (_, t) = params.ambient()?;
    Ok(from_ktype(t, v))
}
