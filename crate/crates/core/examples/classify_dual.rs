//! Classification of parameter points and enumeration of the unitary dual
//! within bounds.

use su21::classifier::{c_special, c_threshold, classify, enumerate, Bounds};
use su21::coefficients::ModuleParams;
use su21::scalar::GaussianRational;

fn main() -> su21::Result<()> {
    let t = 4;
    println!("c({t}) = {}, c(0,{t}) = {}", c_threshold(t), c_special(0, t)?);
    for params in [
        ModuleParams::cone(GaussianRational::real(c_threshold(t)), t),
        ModuleParams::cone(GaussianRational::real(c_special(0, t)?), t),
        ModuleParams::cone("-7".parse()?, t),
        ModuleParams::vertex(5, 2)?,
        ModuleParams::vertex(4, -5)?,
    ] {
        let record = classify(&params)?;
        println!(
            "{:<16} unitary={:<5} {}  {}",
            record.label.to_string(),
            record.unitary,
            record.support,
            record.notes.join("; ")
        );
    }

    let dual = enumerate(Bounds { t_max: 2, r_max: 3, denominator_max: 100 })?;
    let labels: Vec<String> = dual.iter().map(|r| r.label.to_string()).collect();
    println!("{} records: {}", dual.len(), labels.join(", "));
    Ok(())
}
