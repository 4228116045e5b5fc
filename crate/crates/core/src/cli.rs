//! Command-line front end. Every command prints JSON unless asked for a
//! picture; the exit code is 0 on success, 1 when a verification fails and
//! 2 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classifier::{classify, enumerate, Bounds, FamilyLabel};
use crate::coefficients::ModuleParams;
use crate::error::{Result, Su21Error};
use crate::module::{support_of, ModuleDocument, TruncatedModule};
use crate::render::{render_svg, render_text, spectrum};
use crate::scalar::GaussianRational;
use crate::sl2::{sl2_classify, Parity, Sl2Params};
use crate::unitarity::{build_norms, check_adjoint, is_unitary};
use crate::verify::check_commutators;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "su21", version, about = "Exact (g,K)-modules of SU(2,1): build, verify, classify")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Family, support and unitarity of a parameter point.
    Classify(PointArgs),
    /// Build a truncated module and write it as JSON.
    Build {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_parser = parse_max_n)]
        max_n: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check every commutator (and the adjoint condition, when norms are
    /// stored) of a module file.
    Verify { path: PathBuf },
    /// Unitarity verdict on the constituent through the anchor K-type.
    Unitary {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_parser = parse_max_n)]
        max_n: i64,
    },
    /// K-types of a family up to a level.
    Spectrum {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_label)]
        family: FamilyLabel,
        #[arg(long, value_parser = parse_max_n)]
        max_n: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// All unitary families within bounds.
    Enumerate {
        #[arg(long)]
        t_max: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r_max: u32,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        denominator_max: u32,
    },
    /// The SL(2,R) model case.
    Sl2 {
        #[command(subcommand)]
        command: Sl2Command,
    },
}

#[derive(Debug, Subcommand)]
enum Sl2Command {
    Classify {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_gaussian)]
        lambda: GaussianRational,
        #[arg(long, value_parser = parse_parity)]
        parity: Parity,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

/// Either `--c --t` (a cone point) or `--r --s` (a vertex point).
#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gaussian, requires = "t", conflicts_with_all = ["r", "s"])]
    c: Option<GaussianRational>,
    #[arg(long, allow_hyphen_values = true, requires = "c")]
    t: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "s")]
    r: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "r")]
    s: Option<i64>,
}

impl PointArgs {
    fn params(&self) -> Result<ModuleParams> {
        match (&self.c, self.t, self.r, self.s) {
            (Some(c), Some(t), None, None) => Ok(ModuleParams::cone(c.clone(), t)),
            (None, None, Some(r), Some(s)) => ModuleParams::vertex(r, s),
            _ => Err(Su21Error::InvalidParameter("give either --c and --t or --r and --s".into())),
        }
    }
}

fn parse_gaussian(s: &str) -> std::result::Result<GaussianRational, String> {
    s.parse().map_err(|e: Su21Error| e.to_string())
}

fn parse_label(s: &str) -> std::result::Result<FamilyLabel, String> {
    s.parse().map_err(|e: Su21Error| e.to_string())
}

fn parse_parity(s: &str) -> std::result::Result<Parity, String> {
    s.parse().map_err(|e: Su21Error| e.to_string())
}

fn parse_max_n(s: &str) -> std::result::Result<i64, String> {
    match s.parse::<i64>() {
        Ok(n) if n >= 1 => Ok(n),
        Ok(n) => Err(format!("max-n must be at least 1, got {n}")),
        Err(e) => Err(e.to_string()),
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

#[derive(Serialize)]
struct BuildSummary<'a> {
    out: String,
    support: &'a crate::ktype::SupportRegion,
    basis_size: usize,
    norms: bool,
}

#[derive(Serialize)]
struct VerifySummary {
    verified: bool,
    commutators: crate::verify::VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    adjoint: Option<crate::verify::VerificationReport>,
}

#[derive(Serialize)]
struct UnitarySummary {
    support: crate::ktype::SupportRegion,
    #[serde(flatten)]
    report: crate::unitarity::UnitarityReport,
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Classify(point) => {
            print_json(out, &classify(&point.params()?)?)?;
        }
        Command::Build { point, max_n, out: path } => {
            let module = TruncatedModule::build(&point.params()?, max_n)?;
            let norms = build_norms(&module).ok();
            module.to_document(norms.as_ref()).write(&path)?;
            let summary = BuildSummary {
                out: path.display().to_string(),
                support: module.support(),
                basis_size: module.basis().len(),
                norms: norms.is_some(),
            };
            print_json(out, &summary)?;
        }
        Command::Verify { path } => {
            let doc = ModuleDocument::read(&path)?;
            let module = TruncatedModule::from_document(&doc)?;
            let commutators = check_commutators(&module)?;
            let adjoint = doc.norms.as_ref().map(|n| check_adjoint(&module, n)).transpose()?;
            let verified = commutators.verified() && adjoint.as_ref().is_none_or(|r| r.verified());
            print_json(out, &VerifySummary { verified, commutators, adjoint })?;
            return Ok(if verified { EXIT_OK } else { EXIT_FAILED });
        }
        Command::Unitary { point, max_n } => {
            let params = point.params()?;
            let support = support_of(&params)?;
            let report = is_unitary(&params, &support, max_n)?;
            print_json(out, &UnitarySummary { support, report })?;
        }
        Command::Spectrum { family, max_n, format } => {
            let s = spectrum(&family, max_n)?;
            match format {
                Format::Json => print_json(out, &s)?,
                Format::Text => write!(out, "{}", render_text(&s))?,
                Format::Svg => write!(out, "{}", render_svg(&s))?,
            }
        }
        Command::Enumerate { t_max, r_max, denominator_max } => {
            let bounds = Bounds {
                t_max: i64::from(t_max),
                r_max: i64::from(r_max),
                denominator_max: i64::from(denominator_max),
            };
            print_json(out, &enumerate(bounds)?)?;
        }
        Command::Sl2 { command: Sl2Command::Classify { lambda, parity } } => {
            print_json(out, &sl2_classify(&Sl2Params { lambda, parity }))?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("su21").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_w43() {
        let (code, out, _) = run_capture(&["classify", "--r", "4", "--s", "3"]);
        assert_eq!(code, 0);
        let json: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(json["label"], "W(4,3)");
        assert_eq!(json["unitary"], true);
    }

    #[test]
    fn classify_negative_c() {
        let (code, out, _) = run_capture(&["classify", "--c", "-1/2", "--t", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""label": "U(2)""#));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["classify", "--c", "1/0", "--t", "1"]).0, 2);
        assert_eq!(run_capture(&["classify", "--r", "3", "--s", "3"]).0, 2);
        assert_eq!(run_capture(&["classify", "--c", "1", "--t", "0", "--r", "2"]).0, 2);
        assert_eq!(run_capture(&["unitary", "--c", "1", "--t", "0", "--max-n", "0"]).0, 2);
        assert_eq!(run_capture(&["sl2", "classify", "--lambda", "1", "--parity", "both"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        let (code, _, err) = run_capture(&["build", "--r", "4", "--s", "3", "--max-n", "2", "--out", "/dev/null"]);
        assert_eq!(code, 2);
        assert!(err.contains("max_n"), "{err}");
    }

    #[test]
    fn sl2_and_enumerate() {
        let (code, out, _) = run_capture(&["sl2", "classify", "--lambda", "3/2*i", "--parity", "even"]);
        assert_eq!(code, 0);
        assert!(out.contains("principal"));
        let (code, out, _) = run_capture(&["enumerate", "--t-max", "1", "--r-max", "2"]);
        assert_eq!(code, 0);
        let records: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
        assert!(records.iter().any(|r| r["label"] == "U(-2)"));
    }
}
