//! Text and SVG pictures of a family's K-types. Pass a label and a level,
//! for example `cargo run --example spectrum_svg -- 'W(4,3)' 9 > w43.svg`.

use su21::classifier::FamilyLabel;
use su21::render::{render_svg, render_text, spectrum};

fn main() -> su21::Result<()> {
    let mut args = std::env::args().skip(1);
    let label: FamilyLabel = args.next().as_deref().unwrap_or("U(l=1,2t=8)").parse()?;
    let max_n = args
        .next()
        .map_or(Ok(7), |s| s.parse())
        .map_err(|e| su21::Su21Error::InvalidParameter(format!("level: {e}")))?;
    let s = spectrum(&label, max_n)?;
    eprint!("{}", render_text(&s));
    print!("{}", render_svg(&s));
    Ok(())
}
