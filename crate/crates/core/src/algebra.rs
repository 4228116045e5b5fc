//! The complexified Lie algebra `sl(3, C)` of `SU(2,1)`.
//!
//! Generators are the explicit 3x3 matrices `H_alpha = diag(1,-1,0)`,
//! `H_beta = diag(0,1,-1)`, `X_alpha = E12`, `X_beta = E23`,
//! `X_alphabeta = E13` and their transposes for the `Y`s. `Z = H_alpha +
//! 2 H_beta` acts as a scalar on each K-type and is kept as a named generator,
//! but canonical [`AlgebraElement`]s only use the eight independent ones.
//!
//! Structure constants are computed once from the matrices; nothing is
//! entered by hand.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Result, Su21Error};
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "H_alpha")]
    HAlpha,
    #[serde(rename = "H_beta")]
    HBeta,
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "X_alpha")]
    XAlpha,
    #[serde(rename = "X_beta")]
    XBeta,
    #[serde(rename = "X_alphabeta")]
    XAlphaBeta,
    #[serde(rename = "Y_alpha")]
    YAlpha,
    #[serde(rename = "Y_beta")]
    YBeta,
    #[serde(rename = "Y_alphabeta")]
    YAlphaBeta,
}

impl Generator {
    pub const ALL: [Generator; 9] = [
        Generator::HAlpha,
        Generator::HBeta,
        Generator::Z,
        Generator::XAlpha,
        Generator::XBeta,
        Generator::XAlphaBeta,
        Generator::YAlpha,
        Generator::YBeta,
        Generator::YAlphaBeta,
    ];

    /// The eight linearly independent generators.
    pub const INDEPENDENT: [Generator; 8] = [
        Generator::HAlpha,
        Generator::HBeta,
        Generator::XAlpha,
        Generator::XBeta,
        Generator::XAlphaBeta,
        Generator::YAlpha,
        Generator::YBeta,
        Generator::YAlphaBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::HAlpha => "H_alpha",
            Generator::HBeta => "H_beta",
            Generator::Z => "Z",
            Generator::XAlpha => "X_alpha",
            Generator::XBeta => "X_beta",
            Generator::XAlphaBeta => "X_alphabeta",
            Generator::YAlpha => "Y_alpha",
            Generator::YBeta => "Y_beta",
            Generator::YAlphaBeta => "Y_alphabeta",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == name)
    }

    pub fn matrix(self) -> Matrix3 {
        let unit = |i: usize, j: usize| Matrix3::unit(i, j);
        match self {
            Generator::HAlpha => &unit(0, 0) - &unit(1, 1),
            Generator::HBeta => &unit(1, 1) - &unit(2, 2),
            Generator::Z => &(&unit(0, 0) + &unit(1, 1)) - &unit(2, 2).scale(&2.into()),
            Generator::XAlpha => unit(0, 1),
            Generator::XBeta => unit(1, 2),
            Generator::XAlphaBeta => unit(0, 2),
            Generator::YAlpha => unit(1, 0),
            Generator::YBeta => unit(2, 1),
            Generator::YAlphaBeta => unit(2, 0),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense 3x3 matrix over `Q(i)`; only used to derive and cross-check brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix3(pub [[GaussianRational; 3]; 3]);

impl Matrix3 {
    pub fn zero() -> Self {
        Matrix3(Default::default())
    }

    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Matrix3::zero();
        m.0[i][j] = GaussianRational::one();
        m
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] * k)))
    }

    pub fn trace(&self) -> GaussianRational {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    pub fn commutator(&self, other: &Matrix3) -> Matrix3 {
        &(self * other) - &(other * self)
    }
}

impl std::ops::Add for &Matrix3 {
    type Output = Matrix3;
    fn add(self, rhs: &Matrix3) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] + &rhs.0[i][j])))
    }
}

impl std::ops::Sub for &Matrix3 {
    type Output = Matrix3;
    fn sub(self, rhs: &Matrix3) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] - &rhs.0[i][j])))
    }
}

impl std::ops::Mul for &Matrix3 {
    type Output = Matrix3;
    fn mul(self, rhs: &Matrix3) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).fold(GaussianRational::zero(), |acc, k| acc + &self.0[i][k] * &rhs.0[k][j]))
        }))
    }
}

/// A finite linear combination of the eight independent generators with no
/// zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraElement {
    terms: BTreeMap<Generator, GaussianRational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Generator, &GaussianRational)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn coefficient(&self, g: Generator) -> GaussianRational {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    /// Adds `coeff * g`, expanding `Z` into `H_alpha + 2 H_beta`.
    pub fn add_term(&mut self, g: Generator, coeff: &GaussianRational) {
        if g == Generator::Z {
            self.add_term(Generator::HAlpha, coeff);
            self.add_term(Generator::HBeta, &coeff.scale(&2.into()));
            return;
        }
        let entry = self.terms.entry(g).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn with_term(mut self, g: Generator, coeff: GaussianRational) -> Self {
        self.add_term(g, &coeff);
        self
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut out = AlgebraElement::zero();
        for (g, c) in self.terms() {
            out.add_term(g, &(c * k));
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix3 {
        self.terms().fold(Matrix3::zero(), |acc, (g, c)| &acc + &g.matrix().scale(c))
    }

    /// Decomposes a traceless matrix over the generating set.
    pub fn from_matrix(m: &Matrix3) -> Result<Self> {
        if !m.trace().is_zero() {
            return Err(Su21Error::InvalidParameter("matrix is not traceless".into()));
        }
        let e = &m.0;
        let h_beta = -&e[2][2];
        Ok(AlgebraElement::zero()
            .with_term(Generator::HAlpha, e[0][0].clone())
            .with_term(Generator::HBeta, h_beta)
            .with_term(Generator::XAlpha, e[0][1].clone())
            .with_term(Generator::XBeta, e[1][2].clone())
            .with_term(Generator::XAlphaBeta, e[0][2].clone())
            .with_term(Generator::YAlpha, e[1][0].clone())
            .with_term(Generator::YBeta, e[2][1].clone())
            .with_term(Generator::YAlphaBeta, e[2][0].clone()))
    }

    pub fn bracket(&self, other: &AlgebraElement) -> AlgebraElement {
        let table = structure_constants();
        let mut out = AlgebraElement::zero();
        for (x, cx) in self.terms() {
            for (y, cy) in other.terms() {
                let coeff = cx * cy;
                for (g, c) in table[&(x, y)].terms() {
                    out.add_term(g, &(c * &coeff));
                }
            }
        }
        out
    }
}

impl From<Generator> for AlgebraElement {
    fn from(g: Generator) -> Self {
        AlgebraElement::zero().with_term(g, GaussianRational::one())
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (g, c) in rhs.terms() {
            out.add_term(g, c);
        }
        out
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &rhs.scale(&(-GaussianRational::one()))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(g, c)| format!("({c})*{g}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn structure_constants() -> &'static BTreeMap<(Generator, Generator), AlgebraElement> {
    static TABLE: OnceLock<BTreeMap<(Generator, Generator), AlgebraElement>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = BTreeMap::new();
        for x in Generator::INDEPENDENT {
            for y in Generator::INDEPENDENT {
                let m = x.matrix().commutator(&y.matrix());
                let elem = AlgebraElement::from_matrix(&m).expect("commutators are traceless");
                table.insert((x, y), elem);
            }
        }
        table
    })
}

/// Bracket of two generators (either may be `Z`).
pub fn bracket(x: Generator, y: Generator) -> AlgebraElement {
    AlgebraElement::from(x).bracket(&AlgebraElement::from(y))
}

/// Named elements of the real form `su(2,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RealFormElement {
    IHAlpha,
    IHBeta,
    AAlpha,
    BAlpha,
    ABeta,
    BBeta,
    AAlphaBeta,
    BAlphaBeta,
}

impl RealFormElement {
    pub const ALL: [RealFormElement; 8] = [
        RealFormElement::IHAlpha,
        RealFormElement::IHBeta,
        RealFormElement::AAlpha,
        RealFormElement::BAlpha,
        RealFormElement::ABeta,
        RealFormElement::BBeta,
        RealFormElement::AAlphaBeta,
        RealFormElement::BAlphaBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RealFormElement::IHAlpha => "iH_alpha",
            RealFormElement::IHBeta => "iH_beta",
            RealFormElement::AAlpha => "A_alpha",
            RealFormElement::BAlpha => "B_alpha",
            RealFormElement::ABeta => "A_beta",
            RealFormElement::BBeta => "B_beta",
            RealFormElement::AAlphaBeta => "A_alphabeta",
            RealFormElement::BAlphaBeta => "B_alphabeta",
        }
    }

    /// Expansion over the complex generators. Note the compact `alpha` pair
    /// uses `X - Y` / `i(X + Y)` while the noncompact roots use `X + Y` /
    /// `i(X - Y)`.
    pub fn element(self) -> AlgebraElement {
        let one = GaussianRational::one();
        let i = GaussianRational::i();
        let z = AlgebraElement::zero();
        match self {
            RealFormElement::IHAlpha => z.with_term(Generator::HAlpha, i),
            RealFormElement::IHBeta => z.with_term(Generator::HBeta, i),
            RealFormElement::AAlpha => z.with_term(Generator::XAlpha, one.clone()).with_term(Generator::YAlpha, -one),
            RealFormElement::BAlpha => z.with_term(Generator::XAlpha, i.clone()).with_term(Generator::YAlpha, i),
            RealFormElement::ABeta => z.with_term(Generator::XBeta, one.clone()).with_term(Generator::YBeta, one),
            RealFormElement::BBeta => z.with_term(Generator::XBeta, i.clone()).with_term(Generator::YBeta, -i),
            RealFormElement::AAlphaBeta => {
                z.with_term(Generator::XAlphaBeta, one.clone()).with_term(Generator::YAlphaBeta, one)
            }
            RealFormElement::BAlphaBeta => {
                z.with_term(Generator::XAlphaBeta, i.clone()).with_term(Generator::YAlphaBeta, -i)
            }
        }
    }
}

impl fmt::Display for RealFormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn real_form_basis() -> Vec<AlgebraElement> {
    RealFormElement::ALL.iter().map(|e| e.element()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;
    use Generator::*;

    fn g(x: Generator) -> AlgebraElement {
        x.into()
    }

    #[test]
    fn named_brackets() {
        assert_eq!(bracket(HAlpha, XAlpha), g(XAlpha).scale(&2.into()));
        assert!(bracket(XAlpha, XAlphaBeta).is_zero());
        assert_eq!(bracket(XBeta, YBeta), g(HBeta));
        assert_eq!(bracket(XAlpha, XBeta), g(XAlphaBeta));
        assert_eq!(bracket(XAlphaBeta, YBeta), g(XAlpha));
        assert_eq!(bracket(XAlphaBeta, YAlpha), g(XBeta).scale(&(-1).into()));
        assert!(bracket(YAlpha, XBeta).is_zero());
    }

    #[test]
    fn z_is_dependent_and_central_in_k() {
        assert_eq!(g(Z), &g(HAlpha) + &g(HBeta).scale(&2.into()));
        assert!(bracket(Z, XAlpha).is_zero());
        assert!(bracket(Z, YAlpha).is_zero());
        assert_eq!(bracket(Z, XAlphaBeta), g(XAlphaBeta).scale(&3.into()));
        assert_eq!(bracket(Z, YBeta), g(YBeta).scale(&(-3).into()));
    }

    #[test]
    fn bracket_matches_matrix_commutator_on_all_pairs() {
        for x in Generator::ALL {
            for y in Generator::ALL {
                let oracle = x.matrix().commutator(&y.matrix());
                assert_eq!(bracket(x, y).to_matrix(), oracle, "[{x},{y}]");
            }
        }
    }

    #[test]
    fn jacobi_on_all_triples() {
        for x in Generator::INDEPENDENT {
            for y in Generator::INDEPENDENT {
                for z in Generator::INDEPENDENT {
                    let (x, y, z) = (g(x), g(y), g(z));
                    let sum = &(&x.bracket(&y.bracket(&z)) + &y.bracket(&z.bracket(&x))) + &z.bracket(&x.bracket(&y));
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn real_form_entries() {
        assert_eq!(RealFormElement::AAlphaBeta.element(), &g(XAlphaBeta) + &g(YAlphaBeta));
        assert_eq!(RealFormElement::AAlpha.element(), &g(XAlpha) - &g(YAlpha));
        let i = GaussianRational::i();
        assert_eq!(RealFormElement::BBeta.element(), &g(XBeta).scale(&i) - &g(YBeta).scale(&i));
        assert_eq!(real_form_basis().len(), 8);
    }

    /// The real span of the basis is closed under the bracket: every bracket
    /// of two basis elements has real coordinates in that basis.
    #[test]
    fn real_form_is_a_real_subalgebra() {
        // Real-form elements are exactly the matrices M with M^* J + J M = 0,
        // J = diag(1, 1, -1), and trace 0.
        let j = [1i64, 1, -1];
        let in_real_form = |m: &Matrix3| {
            (0..3).all(|a| {
                (0..3).all(|b| {
                    let lhs = &m.0[b][a].conj().scale(&Rational::from(j[b])) + &m.0[a][b].scale(&Rational::from(j[a]));
                    lhs.is_zero()
                })
            }) && m.trace().is_zero()
        };
        let basis = real_form_basis();
        for x in &basis {
            assert!(in_real_form(&x.to_matrix()), "{x}");
            for y in &basis {
                assert!(in_real_form(&x.bracket(y).to_matrix()));
            }
        }
    }

    fn arb_element() -> impl Strategy<Value = AlgebraElement> {
        proptest::collection::vec((0usize..8, -5i64..5, -5i64..5), 0..6).prop_map(|terms| {
            let mut e = AlgebraElement::zero();
            for (idx, re, im) in terms {
                let c = GaussianRational::new(re.into(), im.into());
                e.add_term(Generator::INDEPENDENT[idx], &c);
            }
            e
        })
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric_and_matches_matrices(x in arb_element(), y in arb_element()) {
            let xy = x.bracket(&y);
            prop_assert!((&xy + &y.bracket(&x)).is_zero());
            prop_assert_eq!(xy.to_matrix(), x.to_matrix().commutator(&y.to_matrix()));
        }
    }
}
