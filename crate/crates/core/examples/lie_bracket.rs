//! Brackets of the complexified Lie algebra, computed from 3x3 matrices, and
//! the real basis of su(2,1).

use su21::algebra::{bracket, real_form_basis, Generator, RealFormElement};

fn main() {
    for (x, y) in [
        (Generator::XAlpha, Generator::XBeta),
        (Generator::XAlpha, Generator::YAlpha),
        (Generator::XBeta, Generator::YBeta),
        (Generator::XAlphaBeta, Generator::YBeta),
        (Generator::HAlpha, Generator::XAlphaBeta),
    ] {
        println!("[{x}, {y}] = {}", bracket(x, y));
    }
    println!();
    for (name, element) in RealFormElement::ALL.iter().map(|e| e.name()).zip(real_form_basis()) {
        println!("{name:>12} = {element}");
    }
}
