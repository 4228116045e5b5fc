//! Brute-force certification of truncated modules.
//!
//! Two independent checks are offered. [`check_commutators`] runs every
//! bracket of the eight independent generators through the stored action.
//! [`check_table_relations`] evaluates the coefficient relations that the
//! action formulas impose K-type by K-type: the two vertex equations, the
//! wall conditions, four gauge identities and the `k`-interpolation of the
//! `[X_beta, Y_beta]` diagonal.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{bracket, AlgebraElement, Generator};
use crate::coefficients::{CoefficientTable, ModuleParams};
use crate::error::Result;
use crate::ktype::KType;
use crate::module::{support_of, BasisIndex, LinComb, TruncatedModule};
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub relation: String,
    pub index: BasisIndex,
    pub discrepancy: LinComb,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub skipped_boundary: usize,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.checked += other.checked;
        self.skipped_boundary += other.skipped_boundary;
        self.failures.extend(other.failures);
        self
    }

    fn record(&mut self, relation: &str, index: BasisIndex, discrepancy: LinComb) {
        self.checked += 1;
        if !discrepancy.is_zero() {
            self.failures.push(Failure { relation: relation.to_string(), index, discrepancy });
        }
    }

    fn record_scalar(&mut self, relation: &str, index: BasisIndex, lhs: &GaussianRational, rhs: &GaussianRational) {
        let mut diff = LinComb::zero();
        diff.add_term(index, &(lhs - rhs));
        self.record(relation, index, diff);
    }
}

fn commutator_pairs() -> Vec<(Generator, Generator)> {
    let gens = Generator::INDEPENDENT;
    let mut pairs = Vec::with_capacity(28);
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            pairs.push((*x, *y));
        }
    }
    pairs
}

/// `x(y v) - y(x v) = [x, y] v` on every basis vector two levels below the
/// truncation.
pub fn check_commutators(module: &TruncatedModule) -> Result<VerificationReport> {
    let pairs = commutator_pairs();
    let brackets: Vec<AlgebraElement> = pairs.iter().map(|(x, y)| bracket(*x, *y)).collect();
    module
        .basis()
        .par_iter()
        .map(|idx| -> Result<VerificationReport> {
            let mut report = VerificationReport::default();
            if !module.is_interior(*idx, 2) {
                report.skipped_boundary += pairs.len();
                return Ok(report);
            }
            let v = LinComb::basis(*idx);
            let first: BTreeMap<Generator, LinComb> = Generator::INDEPENDENT
                .iter()
                .map(|g| Ok((*g, module.row(*g, *idx)?.clone())))
                .collect::<Result<_>>()?;
            for ((x, y), xy) in pairs.iter().zip(&brackets) {
                let lhs =
                    module.apply_generator(*x, &first[y])?.vector.sub(&module.apply_generator(*y, &first[x])?.vector);
                let rhs = module.apply(xy, &v)?.vector;
                report.record(&format!("[{x},{y}]"), *idx, lhs.sub(&rhs));
            }
            Ok(report)
        })
        .try_reduce(VerificationReport::default, |a, b| Ok(a.merge(b)))
}

/// Builds the coefficient table of the module's constituent two levels past
/// `max_n` and checks every K-type with `n <= max_n`.
pub fn check_paper_relations(params: &ModuleParams, max_n: i64) -> Result<VerificationReport> {
    let support = support_of(params)?;
    let table = CoefficientTable::build(params, &support, max_n + 2)?;
    check_table_relations(params, &table)
}

fn frac(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den).expect("nonzero denominator")
}

/// Coefficient relations on a table; K-types within two levels of the
/// table's top are skipped.
pub fn check_table_relations(params: &ModuleParams, table: &CoefficientTable) -> Result<VerificationReport> {
    let module = TruncatedModule::from_table(params, table)?;
    let zero = GaussianRational::zero();
    let coeff = |v: Option<KType>, pick: fn(&crate::coefficients::LocalCoefficients) -> &GaussianRational| {
        v.and_then(|w| table.get(w)).map_or(zero.clone(), |l| pick(l).clone())
    };
    let a = |v: Option<KType>| coeff(v, |l| &l.a);
    let b = |v: Option<KType>| coeff(v, |l| &l.b);
    let c = |v: Option<KType>| coeff(v, |l| &l.c);
    let d = |v: Option<KType>| coeff(v, |l| &l.d);
    let region = table.region();

    let mut report = VerificationReport::default();
    for (v, _) in table.iter() {
        let v = *v;
        let idx = BasisIndex { ktype: v, k: 1 };
        if v.n() + 2 > table.max_n() {
            report.skipped_boundary += 1;
            continue;
        }
        let (n, m) = (v.n(), v.m());
        let here = Some(v);
        let ad = &a(here) * &d(Some(v.up_p()));
        let bc = &b(here) * &c(Some(v.up_q()));
        let cb_in = &c(here) * &b(v.down_q());
        let da_in = &d(here) * &a(v.down_p());
        let inv_n = frac(1, n);

        let e1 = &(&bc - &(&inv_n * &ad)) - &cb_in;
        let e2 = &(&(&inv_n * &bc) - &ad) + &da_in;
        report.record_scalar("vertex_equation_1", idx, &e1, &frac(m - n + 1, 2));
        report.record_scalar("vertex_equation_2", idx, &e2, &frac(m + n - 1, 2));

        if !region.contains(v.up_p()) {
            report.record_scalar("wall_a", idx, &a(here), &zero);
        }
        if !region.contains(v.up_q()) {
            report.record_scalar("wall_b", idx, &b(here), &zero);
        }

        let np1 = GaussianRational::from_integer(n + 1);
        let nn = GaussianRational::from_integer(n);
        if let Some(down_q) = v.down_q() {
            let target = KType::new(n, m + 6)?;
            if region.contains(target) {
                let lhs = &np1 * &(&a(here) * &c(Some(v.up_p())));
                let rhs = &nn * &(&c(here) * &a(Some(down_q)));
                report.record_scalar("gauge_m_plus_6", idx, &lhs, &rhs);
            }
        }
        if let Some(down_p) = v.down_p() {
            let target = KType::new(n, m - 6)?;
            if region.contains(target) {
                let lhs = &np1 * &(&b(here) * &d(Some(v.up_q())));
                let rhs = &nn * &(&d(here) * &b(Some(down_p)));
                report.record_scalar("gauge_m_minus_6", idx, &lhs, &rhs);
            }
        }
        if region.contains(KType::new(n + 2, m)?) {
            let lhs = &a(here) * &b(Some(v.up_p()));
            let rhs = &b(here) * &a(Some(v.up_q()));
            report.record_scalar("gauge_n_plus_2", idx, &lhs, &rhs);
        }
        if n > 2 && region.contains(KType::new(n - 2, m)?) {
            let lhs = &c(here) * &d(v.down_q());
            let rhs = &d(here) * &c(v.down_p());
            report.record_scalar("gauge_n_minus_2", idx, &lhs, &rhs);
        }

        if n > 1 {
            // The V(n,m)^k component of [X_beta, Y_beta] v^k interpolates the
            // two vertex equations linearly in k.
            for k in 1..=n {
                let vk = BasisIndex { ktype: v, k };
                let basis = LinComb::basis(vk);
                let xy = module
                    .apply_generator(Generator::XBeta, &module.apply_generator(Generator::YBeta, &basis)?.vector)?;
                let yx = module
                    .apply_generator(Generator::YBeta, &module.apply_generator(Generator::XBeta, &basis)?.vector)?;
                let diagonal = xy.vector.sub(&yx.vector).coefficient(vk);
                let mix = &(&frac(n - k, n - 1) * &e1) + &(&frac(k - 1, n - 1) * &e2);
                report.record_scalar("k_interpolation", vk, &diagonal, &mix);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktype::SupportRegion;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_cone_commutators() {
        let module = TruncatedModule::build(&ModuleParams::cone(gr("-1"), 0), 8).unwrap();
        let report = check_commutators(&module).unwrap();
        assert!(report.verified(), "{:?}", report.failures.first());
        assert!(report.checked > 0 && report.skipped_boundary > 0);
        assert_eq!((report.checked + report.skipped_boundary) % 28, 0);
    }

    #[test]
    fn h_beta_eigenvalue_from_commutator() {
        let module = TruncatedModule::build(&ModuleParams::cone(gr("1/3+i"), 1), 6).unwrap();
        for idx in module.basis().iter().filter(|b| module.is_interior(**b, 2)) {
            let v = LinComb::basis(*idx);
            let xy = module
                .apply_generator(Generator::XBeta, &module.apply_generator(Generator::YBeta, &v).unwrap().vector)
                .unwrap()
                .vector;
            let yx = module
                .apply_generator(Generator::YBeta, &module.apply_generator(Generator::XBeta, &v).unwrap().vector)
                .unwrap()
                .vector;
            let mut expected = LinComb::zero();
            expected.add_term(*idx, &frac(idx.m() - idx.n() - 1 + 2 * idx.k, 2));
            assert_eq!(xy.sub(&yx), expected, "{idx}");
        }
    }

    #[test]
    fn x_alphabeta_is_bracket_on_top_vectors() {
        let module = TruncatedModule::build(&ModuleParams::cone(gr("-2/5"), -2), 6).unwrap();
        for idx in module.basis().iter().filter(|b| b.k == 1 && module.is_interior(**b, 2)) {
            let v = LinComb::basis(*idx);
            let xa_xb = module
                .apply_generator(Generator::XAlpha, &module.apply_generator(Generator::XBeta, &v).unwrap().vector)
                .unwrap()
                .vector;
            let xb_xa = module
                .apply_generator(Generator::XBeta, &module.apply_generator(Generator::XAlpha, &v).unwrap().vector)
                .unwrap()
                .vector;
            let direct = module.apply_generator(Generator::XAlphaBeta, &v).unwrap().vector;
            assert_eq!(xa_xb.sub(&xb_xa), direct);
        }
    }

    #[test]
    fn table_relations_hold_on_generic_and_constituents() {
        for params in [
            ModuleParams::cone(gr("1"), 0),
            ModuleParams::cone(gr("2-3*i"), 3),
            ModuleParams::cone(gr("-1/2"), 1),
            ModuleParams::vertex(4, 3).unwrap(),
            ModuleParams::vertex(2, 3).unwrap(),
        ] {
            let report = check_paper_relations(&params, 7).unwrap();
            assert!(report.verified(), "{params:?}: {:?}", report.failures.first());
        }
    }

    #[test]
    fn base_vertex_equation_reads_bc_minus_ad() {
        let params = ModuleParams::cone(gr("3/7"), 2);
        let support = support_of(&params).unwrap();
        let table = CoefficientTable::build(&params, &support, 3).unwrap();
        let p = table.products(params.anchor()).unwrap();
        assert_eq!(&p.bc - &p.ad, GaussianRational::from_integer(2));
    }

    #[test]
    fn trivial_wall() {
        let params = ModuleParams::cone(gr("0"), 0);
        let table = CoefficientTable::build(&params, &SupportRegion::FullCone { t: 0 }, 3).unwrap();
        let p = table.products(params.anchor()).unwrap();
        assert!(p.ad.is_zero() && p.bc.is_zero());
    }

    #[test]
    fn corrupted_table_is_caught_by_both_checks() {
        let params = ModuleParams::cone(gr("-1"), 0);
        let support = support_of(&params).unwrap();
        let mut table = CoefficientTable::build(&params, &support, 8).unwrap();
        let victim = KType::new(3, 0).unwrap();
        table.get_mut(victim).unwrap().a = gr("5");
        let relations = check_table_relations(&params, &table).unwrap();
        assert!(!relations.verified());
        assert!(relations.failures.iter().all(|f| f.index.ktype.n() <= 4));
        let module = TruncatedModule::from_table(&params, &table).unwrap();
        assert!(!check_commutators(&module).unwrap().verified());
    }

    #[test]
    fn report_serializes() {
        let params = ModuleParams::cone(gr("-1"), 0);
        let support = support_of(&params).unwrap();
        let mut table = CoefficientTable::build(&params, &support, 5).unwrap();
        table.get_mut(KType::new(2, 3).unwrap()).unwrap().b = gr("1");
        let report = check_table_relations(&params, &table).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["failures"][0]["relation"].is_string());
        assert!(json["failures"][0]["discrepancy"].is_array());
    }
}
