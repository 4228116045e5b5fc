//! Cross-checks between independent parts of the library.

use proptest::prelude::*;

use su21::classifier::{c_special, c_threshold, classify, l_max, FamilyLabel};
use su21::coefficients::ModuleParams;
use su21::module::{support_of, TruncatedModule};
use su21::scalar::{GaussianRational, Rational};
use su21::unitarity::{build_norms, check_adjoint, is_unitary};
use su21::verify::{check_commutators, check_paper_relations};

fn real_cone(numer: i64, denom: i64, t: i64) -> ModuleParams {
    ModuleParams::cone(GaussianRational::real(Rational::new(numer, denom).unwrap()), t)
}

/// A cone point with a real `c`, biased towards the special values where
/// the support changes.
fn arb_real_point() -> impl Strategy<Value = ModuleParams> {
    let generic = (-60i64..=60, 1i64..=6, -6i64..=6).prop_map(|(a, b, t)| real_cone(a, b, t));
    let special = (-6i64..=6, 0i64..=3).prop_map(|(t, l)| {
        let c = match l_max(t) {
            Some(top) if l <= top => c_special(l, t).unwrap(),
            _ => c_threshold(t),
        };
        ModuleParams::cone(GaussianRational::real(c), t)
    });
    prop_oneof![generic, special]
}

fn arb_vertex_point() -> impl Strategy<Value = ModuleParams> {
    (2i64..=8, -9i64..=9).prop_filter_map("r+s odd", |(r, s)| ModuleParams::vertex(r, s).ok())
}

fn classify_agrees_with_scan(params: &ModuleParams) {
    let record = classify(params).unwrap();
    assert_eq!(record.support, support_of(params).unwrap());
    let report = is_unitary(params, &record.support, 16).unwrap();
    assert!(report.certified);
    assert_eq!(report.verdict.is_unitary(), record.unitary, "{params:?}: {record:?} vs {report:?}");
    let label_params = record.label.params();
    if let Ok(p) = label_params {
        if !matches!(record.label, FamilyLabel::V { .. }) {
            assert_eq!(classify(&p).unwrap().label, record.label);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn classifier_matches_unitarity_on_cone_points(params in arb_real_point()) {
        classify_agrees_with_scan(&params);
    }

    #[test]
    fn classifier_matches_unitarity_on_vertex_points(params in arb_vertex_point()) {
        classify_agrees_with_scan(&params);
    }

    #[test]
    fn nonreal_points_are_never_unitary(a in -9i64..=9, b in 1i64..=9, t in -4i64..=4) {
        let c = GaussianRational::new(Rational::new(a, 3).unwrap(), Rational::new(b, 2).unwrap());
        let params = ModuleParams::cone(c, t);
        let record = classify(&params).unwrap();
        prop_assert!(!record.unitary);
        prop_assert!(!is_unitary(&params, &record.support, 10).unwrap().verdict.is_unitary());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    /// The closed-form identities and the brute-force commutators accept
    /// the same modules.
    #[test]
    fn relation_checks_agree_with_commutators(params in prop_oneof![arb_real_point(), arb_vertex_point()]) {
        let max_n = params.anchor().n() + 5;
        let module = TruncatedModule::build(&params, max_n).unwrap();
        let brute = check_commutators(&module).unwrap();
        let closed = check_paper_relations(&params, max_n).unwrap();
        prop_assert!(brute.checked > 0 && closed.checked > 0);
        prop_assert!(brute.verified(), "{:?}", brute.failures.first());
        prop_assert!(closed.verified(), "{:?}", closed.failures.first());
    }
}

#[test]
fn threshold_is_the_last_special_value() {
    for t in -40..=40i64 {
        match l_max(t) {
            Some(top) => assert_eq!(c_special(top, t).unwrap(), c_threshold(t), "t = {t}"),
            None => assert!(t.abs() < 2),
        }
    }
}

#[test]
fn unitary_families_pass_the_whole_verifier() {
    for label in ["U(2)", "U(-2)", "U(0)", "U(l=0,2t=6)", "Z(3)", "Z(-4)", "W(4,3)", "W(5,-2)"] {
        let label: FamilyLabel = label.parse().unwrap();
        let module = TruncatedModule::build(&label.params().unwrap(), 8).unwrap();
        let commutators = check_commutators(&module).unwrap();
        assert!(commutators.verified(), "{label}: {:?}", commutators.failures.first());
        let norms = build_norms(&module).unwrap_or_else(|e| panic!("{label}: {e}"));
        let adjoint = check_adjoint(&module, &norms).unwrap();
        assert!(adjoint.checked > 0 && adjoint.verified(), "{label}: {:?}", adjoint.failures.first());
    }
}
