//! Unitarity verdicts from product signs, and the invariant norms of a
//! unitary constituent.

use su21::classifier::FamilyLabel;
use su21::coefficients::ModuleParams;
use su21::module::{support_of, BasisIndex, TruncatedModule};
use su21::unitarity::{build_norms, check_adjoint, is_unitary};

fn main() -> su21::Result<()> {
    for params in [
        ModuleParams::cone("-3".parse()?, 0),
        ModuleParams::cone("1/2".parse()?, 0),
        ModuleParams::cone("1/2*i".parse()?, 1),
        ModuleParams::vertex(4, 3)?,
        ModuleParams::vertex(3, 4)?,
    ] {
        let region = support_of(&params)?;
        let report = is_unitary(&params, &region, 20)?;
        println!("{params:?} on {region}: {}", serde_json::to_string(&report.verdict)?);
    }

    let u2 = "U(2)".parse::<FamilyLabel>()?.params()?;
    let module = TruncatedModule::build(&u2, 5)?;
    let norms = build_norms(&module)?;
    for idx in module.basis().iter().take(6) {
        println!("|{idx}|^2 = {}", norms.norm_sq(*idx).expect("in the basis"));
    }
    let adjoint = check_adjoint(&module, &norms)?;
    println!("adjointness: {} checked, {} failures", adjoint.checked, adjoint.failures.len());
    println!("anchor vector {}", BasisIndex::new(norms.anchor(), 1)?);
    Ok(())
}
