use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use flk_core::arith::fmt_rat;
use flk_core::covering::pairing::{blanchfield_pairing, sigma_inverse_series, symmetry_witness};
use flk_core::covering::{cover_presentation, TruncSeries};
use flk_core::io::{
    CobordantFile, CobordismVerdict, CoverFile, InputError, PrimitiveFile, ReportFile, SeifertInputFile, WitnessStatus,
};
use flk_core::primitives::analyse;
use flk_core::witt::invariants::invariants;
use flk_core::{SeifertError, SeifertForm};

const SCHEMA: u8 = 2;
const VIOLATION: u8 = 3;
const UNSUPPORTED: u8 = 4;

#[derive(Parser)]
#[command(name = "flk", version, about = "Cobordism invariants of boundary links from Seifert forms")]
struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation degree for power series.
    #[arg(long, global = true, default_value_t = 8)]
    degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Devissage, Morita transport and Witt invariants of a form.
    Invariants { input: PathBuf },
    /// Compare two forms through the invariants of a + (-b).
    Cobordant { a: PathBuf, b: PathBuf },
    /// Presentation of the covering, sigma^-1 and the truncated pairing.
    Cover { input: PathBuf },
    /// Maximal primitive submodule, minimal coprimitive and layers.
    Primitive { input: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        let code = match e {
            InputError::Schema(_) => SCHEMA,
            InputError::Violation(_) => VIOLATION,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<SeifertError> for Failure {
    fn from(e: SeifertError) -> Self {
        let code = match e {
            SeifertError::Unsupported(_) => UNSUPPORTED,
            _ => VIOLATION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_input(path: &Path) -> Result<SeifertInputFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure { code: SCHEMA, message: format!("{}: {e}", path.display()) })?;
    Ok(SeifertInputFile::parse(&text)?)
}

fn render<T: Serialize>(x: &T, format: Format) -> String {
    let v = serde_json::to_value(x).expect("serialisable");
    match format {
        Format::Json => serde_json::to_string_pretty(&v).expect("serialisable") + "\n",
        Format::Text => {
            let mut out = String::new();
            text(&v, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let line = format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", "));
            (line.len() <= 72).then_some(line)
        }
        _ => None,
    }
}

/// Indented key: value lines read off the JSON value.
fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

fn report(f: &SeifertForm, seed: u64, degree: usize) -> Result<ReportFile, Failure> {
    let (r, d) = invariants(f, seed)?;
    Ok(ReportFile::new(r, d.log, seed, degree))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Invariants { input } => {
            let f = read_input(input)?.form()?;
            let r = report(&f, cli.seed, cli.degree)?;
            let code = if r.unsupported() { UNSUPPORTED } else { 0 };
            Ok((render(&r, fmt), code))
        }
        Command::Cobordant { a, b } => {
            let fa = read_input(a)?.form()?;
            let fb = read_input(b)?.form()?;
            if fa.module.mu != fb.module.mu {
                return Err(Failure { code: VIOLATION, message: format!("mu differs: {} vs {}", fa.module.mu, fb.module.mu) });
            }
            if fa.zeta != fb.zeta {
                return Err(Failure { code: VIOLATION, message: format!("zeta differs: {} vs {}", fa.zeta, fb.zeta) });
            }
            let diff = fa.direct_sum(&fb.neg())?;
            let r = report(&diff, cli.seed, cli.degree)?;
            let code = if r.unsupported() { UNSUPPORTED } else { 0 };
            let out = CobordantFile { cobordism: CobordismVerdict::from(&r.verdict), difference: r };
            Ok((render(&out, fmt), code))
        }
        Command::Cover { input } => {
            let file = read_input(input)?;
            let v = file.module()?;
            let d = cli.degree;
            let sigma = cover_presentation(&v).to_strings();
            let sigma_inverse: Vec<Vec<TruncSeries>> =
                sigma_inverse_series(&v).iter().map(|r| r.iter().map(|s| s.truncate(d)).collect()).collect();
            let (pairing, symmetry) = match &file.form {
                None => (None, None),
                Some(_) => {
                    let f = file.form()?;
                    let p: Vec<Vec<TruncSeries>> = blanchfield_pairing(&f, d)
                        .into_iter()
                        .map(|r| r.into_iter().map(|x| x.truncated).collect())
                        .collect();
                    let w = symmetry_witness(&p, f.zeta, d, v.mu);
                    let status = WitnessStatus {
                        found: w.is_some(),
                        support: w.as_ref().map(|w| w.support),
                        witness: w.map(|w| w.witness.iter().map(|r| r.iter().map(|g| g.to_string()).collect()).collect()),
                    };
                    (Some(p), Some(status))
                }
            };
            let out = CoverFile { mu: v.mu, degree: d, sigma, sigma_inverse, pairing, symmetry };
            Ok((render(&out, fmt), 0))
        }
        Command::Primitive { input } => {
            let v = read_input(input)?.module()?;
            let a = analyse(&v);
            let vecs = |s: &flk_core::arith::Subspace| -> Vec<Vec<String>> {
                s.basis_vectors().iter().map(|x| x.iter().map(fmt_rat).collect()).collect()
            };
            let out = PrimitiveFile {
                dim: v.dim(),
                primitive: a.is_primitive(),
                layers: a.layers.clone(),
                max_primitive: vecs(&a.max_primitive),
                min_coprimitive: vecs(&a.min_coprimitive),
            };
            Ok((render(&out, fmt), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
