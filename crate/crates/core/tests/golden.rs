//! Rendered spectra compared byte for byte with checked-in pictures.
//! Set `SU21_BLESS=1` to rewrite the files after an intended change.

use std::path::PathBuf;

use su21::classifier::FamilyLabel;
use su21::render::{render_svg, render_text, spectrum};

const CASES: [(&str, &str, i64); 4] =
    [("u2", "U(2)", 6), ("u_l1_t4", "U(l=1,2t=8)", 6), ("w43", "W(4,3)", 8), ("z_minus3", "Z(-3)", 7)];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn compare(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("SU21_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} differs from its golden file");
}

#[test]
fn text_pictures_match() {
    for (name, label, max_n) in CASES {
        let s = spectrum(&label.parse::<FamilyLabel>().unwrap(), max_n).unwrap();
        compare(&format!("{name}.txt"), &render_text(&s));
    }
}

#[test]
fn svg_pictures_match() {
    for (name, label, max_n) in CASES {
        let s = spectrum(&label.parse::<FamilyLabel>().unwrap(), max_n).unwrap();
        compare(&format!("{name}.svg"), &render_svg(&s));
    }
}
