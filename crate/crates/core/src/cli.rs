//! Command-line front end. [`run`] takes argv and the two output streams and
//! returns the process exit code: 0 on success, 1 on a domain error, 2 on a
//! usage error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{canonical_of_letters, decompose_verified, AffineRoot};
use crate::error::{Error, Result};
use crate::json::WordJson;
use crate::rational::{format_q, RationalVector};
use crate::rootsys::{AlgebraFamily, RootSystem};
use crate::tables::{default_algebras, fixtures, verify_all, VerificationReport};
use crate::weyl::decompose_classical;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "affine-weyl",
    version,
    about = "Root systems and affine Weyl reflection decompositions"
)]
pub struct Cli {
    /// Algebra such as A3, B4 or E8.
    #[arg(long, global = true)]
    pub algebra: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the positive roots with labels and coordinates.
    Roots,
    /// Decompose a classical reflection into simple reflections.
    Classical {
        #[arg(long)]
        root: String,
    },
    /// Decompose the affine reflection in (root, 0, n) into σ_0, ..., σ_r.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Use the negative of the given root.
        #[arg(long)]
        negative: bool,
    },
    /// Check every fixture row against the library.
    Verify,
    /// Simple roots with (α_i, θ∨) = 1.
    Pairings,
    /// Print the fixture tables as markdown.
    TablesEmit,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            report_error(err, format, "UsageError", &message);
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            report_error(err, format, e.code(), &e.to_string());
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            report_error(err, format, "IoError", &e.to_string());
            EXIT_DOMAIN
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn report_error(err: &mut dyn Write, format: Format, code: &str, message: &str) {
    let _ = match format {
        Format::Text => writeln!(err, "error[{code}]: {message}"),
        Format::Json => writeln!(err, "{}", json!({ "error": { "code": code, "message": message } })),
    };
}

fn algebra_of(cli: &Cli) -> std::result::Result<Option<AlgebraFamily>, Failure> {
    cli.algebra
        .as_deref()
        .map(|a| a.parse::<AlgebraFamily>().map_err(Failure::Domain))
        .transpose()
}

fn require_algebra(cli: &Cli) -> std::result::Result<RootSystem, Failure> {
    match algebra_of(cli)? {
        Some(a) => Ok(RootSystem::new(a)),
        None => Err(Failure::Usage("this command needs --algebra".into())),
    }
}

fn vector_json(v: &RationalVector) -> Value {
    Value::from(v.coords().iter().map(format_q).collect::<Vec<_>>())
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Roots => {
            let rs = require_algebra(&cli)?;
            roots(&rs, format, out)?;
        }
        Command::Classical { root } => {
            let rs = require_algebra(&cli)?;
            let label = rs.parse_signed_root(root)?;
            let v = rs.resolve_signed(&label)?;
            let word = decompose_classical(&rs, &v)?;
            match format {
                Format::Text => writeln!(out, "{} = {}", rs.format_signed(&label), word)?,
                Format::Json => emit_json(
                    out,
                    &json!({
                        "algebra": rs.algebra().to_string(),
                        "root": rs.format_signed(&label),
                        "coordinates": vector_json(&v),
                        "word": WordJson::from(word),
                    }),
                )?,
            }
        }
        Command::Decompose { root, n, negative } => {
            let rs = require_algebra(&cli)?;
            let label = rs.parse_signed_root(root)?;
            let mut alpha = rs.resolve_signed(&label)?;
            if *negative {
                alpha = -&alpha;
            }
            let affine = AffineRoot::real(&rs, alpha.clone(), *n)?;
            // decompose_verified refuses to hand back a word that fails the check
            let word = decompose_verified(&rs, &affine)?;
            let normal_form = canonical_of_letters(&rs, &word)?;
            let name = rs
                .lookup_label(&alpha)
                .map(|l| rs.format_signed(&l))
                .unwrap_or_else(|| alpha.to_string());
            match format {
                Format::Text => {
                    writeln!(out, "root ({name}, 0, {n})")?;
                    writeln!(out, "word {:?}", word.letters())?;
                    writeln!(out, "length {}", word.len())?;
                    writeln!(out, "normal form {normal_form}")?;
                    writeln!(out, "verified true")?;
                }
                Format::Json => emit_json(
                    out,
                    &json!({
                        "algebra": rs.algebra().to_string(),
                        "root": { "alpha": vector_json(&alpha), "label": name, "n": n },
                        "word": WordJson::from(word),
                        "verified": true,
                    }),
                )?,
            }
        }
        Command::Verify => {
            let algebras = match algebra_of(&cli)? {
                Some(a) => vec![a],
                None => default_algebras(),
            };
            let reports = algebras.into_iter().map(verify_all).collect::<Result<Vec<_>>>()?;
            match format {
                Format::Text => {
                    for r in &reports {
                        verify_text(r, out)?;
                    }
                }
                Format::Json if reports.len() == 1 => emit_json(out, &reports[0])?,
                Format::Json => emit_json(out, &reports)?,
            }
            if !reports.iter().all(VerificationReport::is_clean) {
                return Ok(EXIT_DOMAIN);
            }
        }
        Command::Pairings => {
            let algebras = match algebra_of(&cli)? {
                Some(a) => vec![a],
                None => default_algebras(),
            };
            let rows: Vec<(String, Vec<usize>)> = algebras
                .into_iter()
                .map(|a| (a.to_string(), RootSystem::new(a).theta_pairing_simples()))
                .collect();
            match format {
                Format::Text => {
                    for (a, simples) in &rows {
                        let names: Vec<String> = simples.iter().map(|i| format!("alpha[{i}]")).collect();
                        writeln!(out, "{a}: {}", names.join(", "))?;
                    }
                }
                Format::Json => {
                    let value: Vec<Value> = rows
                        .iter()
                        .map(|(a, s)| json!({ "algebra": a, "simple_roots": s }))
                        .collect();
                    emit_json(out, &value)?;
                }
            }
        }
        Command::TablesEmit => match format {
            Format::Text => write!(out, "{}", fixtures().emit_markdown())?,
            Format::Json => {
                let value: Vec<Value> = fixtures()
                    .rows()
                    .iter()
                    .map(|r| {
                        json!({
                            "table": r.table,
                            "line": r.line,
                            "family": r.family.letter().to_string(),
                            "ranks": r.ranks(),
                            "condition": r.constraint_text,
                            "subject": r.subject_text,
                            "entry": r.body_text,
                            "marks": (!r.marks_text.is_empty()).then_some(&r.marks_text),
                        })
                    })
                    .collect();
                emit_json(out, &value)?;
            }
        },
    }
    Ok(EXIT_OK)
}

fn roots(rs: &RootSystem, format: Format, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let mut entries = Vec::new();
    for (label, v) in rs.positive_roots() {
        let coeffs = rs.simple_expansion(v)?;
        entries.push((rs.format_label(label), v, coeffs));
    }
    match format {
        Format::Text => {
            writeln!(out, "{} positive roots, theta = {}", entries.len(), rs.theta())?;
            for (label, v, coeffs) in &entries {
                writeln!(out, "{label:<14} {v}  simple {coeffs:?}")?;
            }
        }
        Format::Json => {
            let list: Vec<Value> = entries
                .iter()
                .map(|(label, v, coeffs)| json!({ "label": label, "coordinates": vector_json(v), "simple": coeffs }))
                .collect();
            emit_json(
                out,
                &json!({
                    "algebra": rs.algebra().to_string(),
                    "theta": vector_json(rs.theta()),
                    "marks": rs.theta_marks(),
                    "roots": list,
                }),
            )?;
        }
    }
    Ok(())
}

fn verify_text(r: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{}: {} pass, {} fail, {} out of range, {} instances, {} us",
        r.algebra, r.passed, r.failed, r.out_of_range, r.instances_checked, r.elapsed_micros
    )?;
    for row in r.failures() {
        for inst in row.instances.iter().filter(|i| !i.passed) {
            writeln!(
                out,
                "  FAIL table {} line {} {} [{}]: {}",
                row.table,
                row.line,
                inst.subject,
                inst.bindings,
                inst.detail.as_deref().unwrap_or("")
            )?;
        }
    }
    for c in r.coverage.iter().filter(|c| !c.passed) {
        writeln!(out, "  FAIL {}: {}", c.name, c.detail)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("affine-weyl").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn a1_theta_decomposes_to_three_letters() {
        let (code, out, _) = call(&[
            "decompose",
            "--algebra",
            "A1",
            "--root",
            "theta",
            "--n",
            "1",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["word"]["letters"], json!([1, 0, 1]));
        assert_eq!(v["word"]["order"], "right-to-left");
        assert_eq!(v["verified"], true);
    }

    #[test]
    fn negative_grades_and_roots_parse() {
        let (code, out, err) = call(&["decompose", "--algebra", "C3", "--root", "-a[1,2]+", "--n", "-2"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("verified true"));
        let (code, _, _) = call(&[
            "decompose",
            "--algebra",
            "C3",
            "--root",
            "a[1,2]+",
            "--n",
            "-2",
            "--negative",
        ]);
        assert_eq!(code, 0);
    }

    #[test]
    fn missing_algebra_is_a_usage_error() {
        let (code, _, err) = call(&["roots"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("UsageError"));
        let (code, _, _) = call(&["decompose", "--algebra", "A2", "--root", "theta"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn bad_root_is_a_domain_error() {
        let (code, _, err) = call(&["classical", "--algebra", "A2", "--root", "a[1,5]", "--format", "json"]);
        assert_eq!(code, EXIT_DOMAIN);
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["error"]["code"], "NotARoot");
        let (code, _, err) = call(&["roots", "--algebra", "E9"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.starts_with("error[UnsupportedRank]"), "{err}");
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("tables-emit"));
    }
}
