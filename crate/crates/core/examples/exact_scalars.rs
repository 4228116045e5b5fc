//! Exact rational and Gaussian-rational arithmetic with the canonical text
//! form used in every JSON document.

use su21::scalar::{GaussianRational, Rational};

fn main() -> su21::Result<()> {
    let half: Rational = "-1/2".parse()?;
    let third = Rational::new(2, 6)?;
    println!("{half} + {third} = {}", &half + &third);
    println!("{half} * {third} = {}", &half * &third);

    let z: GaussianRational = "3/2-2*i".parse()?;
    let w = GaussianRational::i();
    println!("z = {z}, conj z = {}, |z|^2 = {}", z.conj(), z.norm_sqr());
    println!("z / i = {}", z.checked_div(&w)?);
    println!("sign class of -z*conj(z): {:?}", (-(&z * &z.conj())).sign_class());
    println!("1/0 is rejected: {}", Rational::new(1, 0).is_err());
    println!("JSON: {}", serde_json::to_string(&z)?);
    Ok(())
}
