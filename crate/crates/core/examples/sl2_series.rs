//! The SL(2,R) model case: ladder coefficients and the series of each
//! parameter.

use su21::sl2::{sl2_classify, sl2_product, Parity, Sl2Params};

fn main() -> su21::Result<()> {
    for (lambda, parity) in [
        ("3/2*i", Parity::Even),
        ("0", Parity::Odd),
        ("1/3", Parity::Even),
        ("1", Parity::Even),
        ("3", Parity::Even),
        ("2", Parity::Odd),
        ("5/4", Parity::Even),
    ] {
        let params = Sl2Params { lambda: lambda.parse()?, parity };
        let class = sl2_classify(&params);
        let k = if parity == Parity::Even { 0 } else { 1 };
        println!(
            "lambda = {lambda:<6} {parity}: {:?} (unitary {}), a_k b_(k+2) at k = {k}: {}",
            class.kind,
            class.kind.is_unitary(),
            sl2_product(&params, k)?
        );
    }
    Ok(())
}
