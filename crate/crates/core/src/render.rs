//! K-type spectra of families and their text and SVG pictures.
//!
//! Both pictures are functions of the [`Spectrum`] value alone, so a
//! spectrum read back from JSON renders identically.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classifier::{classify, FamilyLabel};
use crate::error::Result;
use crate::ktype::{KType, SupportRegion};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub n: i64,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub family: FamilyLabel,
    pub region: SupportRegion,
    pub max_n: i64,
    /// Sorted by `(n, m)`.
    pub ktypes: Vec<SpectrumEntry>,
}

/// Support of a family label.
pub fn family_support(label: &FamilyLabel) -> Result<SupportRegion> {
    Ok(match *label {
        FamilyLabel::VInterval { two_t, .. } => SupportRegion::FullCone { t: two_t / 2 },
        FamilyLabel::Z { s: 2 } => SupportRegion::RayPos { s: 2 },
        FamilyLabel::Z { s: -2 } => SupportRegion::RayNeg { s: -2 },
        _ => classify(&label.params()?)?.support,
    })
}

pub fn spectrum(label: &FamilyLabel, max_n: i64) -> Result<Spectrum> {
    let region = family_support(label)?;
    let ktypes = region.members(max_n)?.into_iter().map(|v| SpectrumEntry { n: v.n(), m: v.m() }).collect();
    Ok(Spectrum { family: label.clone(), region, max_n, ktypes })
}

impl Spectrum {
    fn members(&self) -> BTreeSet<(i64, i64)> {
        self.ktypes.iter().map(|e| (e.n, e.m)).collect()
    }

    /// Members with a lattice neighbour inside `1 <= n <= max_n` that is not
    /// a member.
    fn boundary(&self) -> BTreeSet<(i64, i64)> {
        let members = self.members();
        members
            .iter()
            .copied()
            .filter(|&(n, m)| {
                [(1, 3), (1, -3), (-1, 3), (-1, -3)].iter().any(|(dn, dm)| {
                    let (nn, mm) = (n + dn, m + dm);
                    (1..=self.max_n).contains(&nn) && !members.contains(&(nn, mm))
                })
            })
            .collect()
    }

    fn m_range(&self) -> Option<(i64, i64)> {
        let lo = self.ktypes.iter().map(|e| e.m).min()?;
        let hi = self.ktypes.iter().map(|e| e.m).max()?;
        Some((lo, hi))
    }
}

/// One row per `n` from `max_n` down to 1 and one column per `m`; `●` is a
/// K-type of the family, `·` a K-type label outside it.
pub fn render_text(spectrum: &Spectrum) -> String {
    let mut out = String::new();
    writeln!(out, "{}  {}  n <= {}", spectrum.family, spectrum.region, spectrum.max_n).unwrap();
    let Some((lo, hi)) = spectrum.m_range() else {
        out.push_str("(empty)\n");
        return out;
    };
    let members = spectrum.members();
    for n in (1..=spectrum.max_n).rev() {
        let row: String = (lo..=hi)
            .map(|m| match ((n + m).rem_euclid(2) == 1, members.contains(&(n, m))) {
                (_, true) => '●',
                (true, false) if (m - lo) % 3 == 0 => '·',
                _ => ' ',
            })
            .collect();
        writeln!(out, "{n:>3} |{}", row.trim_end()).unwrap();
    }
    writeln!(out, "    +{}", "-".repeat((hi - lo + 1) as usize)).unwrap();
    writeln!(out, "     m = {lo} .. {hi}").unwrap();
    out
}

const CELL: i64 = 12;
const MARGIN: i64 = 24;

/// SVG 1.1 picture: `m` to the right, `n` upwards, boundary K-types
/// outlined and joined.
pub fn render_svg(spectrum: &Spectrum) -> String {
    let (lo, hi) = spectrum.m_range().unwrap_or((0, 0));
    let width = (hi - lo) * CELL + 2 * MARGIN;
    let height = (spectrum.max_n - 1).max(0) * 2 * CELL + 2 * MARGIN;
    let x = |m: i64| MARGIN + (m - lo) * CELL;
    let y = |n: i64| height - MARGIN - (n - 1) * 2 * CELL;
    let boundary = spectrum.boundary();

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, "  <title>{}</title>", spectrum.family).unwrap();
    writeln!(out, r##"  <g stroke="#c0392b" stroke-width="2">"##).unwrap();
    for &(n, m) in &boundary {
        for dm in [3, -3] {
            if boundary.contains(&(n + 1, m + dm)) {
                writeln!(out, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(m), y(n), x(m + dm), y(n + 1))
                    .unwrap();
            }
        }
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, r##"  <g fill="#2c3e50">"##).unwrap();
    for e in &spectrum.ktypes {
        let edge = if boundary.contains(&(e.n, e.m)) { r##" stroke="#c0392b" stroke-width="2""## } else { "" };
        writeln!(
            out,
            r#"    <circle cx="{}" cy="{}" r="3"{edge}><title>V({},{})</title></circle>"#,
            x(e.m),
            y(e.n),
            e.n,
            e.m
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

/// Convenience for callers holding a region rather than a label.
pub fn members_as_entries(region: &SupportRegion, max_n: i64) -> Result<Vec<SpectrumEntry>> {
    Ok(region.members(max_n)?.into_iter().map(|v: KType| SpectrumEntry { n: v.n(), m: v.m() }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> FamilyLabel {
        s.parse().unwrap()
    }

    #[test]
    fn u2_spectrum() {
        let s = spectrum(&label("U(2)"), 5).unwrap();
        let got: Vec<(i64, i64)> = s.ktypes.iter().map(|e| (e.n, e.m)).collect();
        assert_eq!(got, vec![(1, 2), (2, 5), (3, 8), (4, 11), (5, 14)]);
        assert_eq!(s.ktypes, members_as_entries(&s.region, 5).unwrap());
    }

    #[test]
    fn z2_matches_u2() {
        let z = spectrum(&label("Z(2)"), 6).unwrap();
        let u = spectrum(&label("U(2)"), 6).unwrap();
        assert_eq!(z.ktypes, u.ktypes);
        assert_ne!(z.region, u.region);
    }

    #[test]
    fn pictures_depend_only_on_json() {
        let s = spectrum(&label("W(4,3)"), 8).unwrap();
        let back: Spectrum = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(render_text(&back), render_text(&s));
        assert_eq!(render_svg(&back), render_svg(&s));
        assert_eq!(render_svg(&s).matches("<circle").count(), s.ktypes.len());
    }

    #[test]
    fn text_has_one_row_per_level() {
        let s = spectrum(&label("U(0)"), 3).unwrap();
        let text = render_text(&s);
        assert!(text.contains("  1 |●"));
        assert_eq!(text.lines().count(), 1 + 3 + 2);
    }
}
