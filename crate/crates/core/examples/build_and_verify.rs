//! Build a truncated module, apply generators, and check every commutator
//! and every closed-form coefficient identity.

use su21::algebra::Generator;
use su21::coefficients::ModuleParams;
use su21::module::{BasisIndex, LinComb, TruncatedModule};
use su21::verify::{check_commutators, check_paper_relations};

fn main() -> su21::Result<()> {
    let params = ModuleParams::cone("1/3+1*i".parse()?, -1);
    let max_n = 8;
    let module = TruncatedModule::build(&params, max_n)?;
    println!("support {} with {} basis vectors up to n = {max_n}", module.support(), module.basis().len());

    let v = LinComb::basis(BasisIndex::new(params.anchor(), 1)?);
    for g in [Generator::XBeta, Generator::YAlphaBeta, Generator::HAlpha] {
        println!("{g} v = {}", module.apply_generator(g, &v)?.vector);
    }

    let brute = check_commutators(&module)?;
    println!("commutators: {} checked, {} failures", brute.checked, brute.failures.len());
    let closed = check_paper_relations(&params, max_n)?;
    println!("coefficient identities: {} checked, {} failures", closed.checked, closed.failures.len());
    Ok(())
}
