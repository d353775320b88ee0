//! Command-line front end for `orbirr-core`.
//!
//! Exit codes: 0 on success, 1 when the input is mathematically
//! inconsistent (or `verify` finds a failing check), 2 for usage and input
//! errors.

pub mod golden;
pub mod input;
pub mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use orbirr_core::dedekind::{sigma_all, DedekindSpec};
use orbirr_core::hilbert::{expand, series_of, NormalData};
use orbirr_core::orbterms::{bite, initial_term, qorb, PointType};
use orbirr_core::parser::{parse, Screening, SearchTemplate};
use orbirr_core::riemannroch::RiemannRoch;
use orbirr_core::{Rational, RationalFn};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "orbirr",
    version,
    about = "Exact orbifold Riemann-Roch and Hilbert series parsing"
)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dedekind sums σ_0 … σ_(r-1) of 1/r(a_1,…,a_n).
    Sigma {
        r: u32,
        #[arg(required = true)]
        weights: Vec<u32>,
        /// Also print δ_i = σ_i - σ_0 for i = 1 … r-1.
        #[arg(long)]
        deltas: bool,
    },
    /// Orbifold point term of 1/s(b_1,…,b_n).
    Qorb {
        s: u32,
        #[arg(required = true)]
        weights: Vec<u32>,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Dimension; must equal the number of weights.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Initial term from the plurigenera p_0, p_1, ….
    Initial {
        #[arg(allow_negative_numbers = true)]
        plurigenera: Vec<String>,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        dim: i64,
    },
    /// Bite a dissident point 1/s(b) takes from the curve through it.
    Bite {
        s: u32,
        #[arg(required = true)]
        weights: Vec<u32>,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// 1-based direction; all curve directions when omitted.
        #[arg(long)]
        direction: Option<usize>,
    },
    /// Power series coefficients of a descriptor's Hilbert series or of a
    /// rational function given as text.
    Expand {
        /// Descriptor JSON file, or a series such as "1/((1-t)(1-t^2))".
        input: String,
        /// Number of coefficients.
        #[arg(long, default_value_t = 20)]
        to: usize,
    },
    /// χ(O_X(d)) by orbifold Riemann-Roch.
    Chi {
        descriptor: PathBuf,
        /// Inclusive range such as 1..10.
        #[arg(long, default_value = "0..10")]
        d_range: String,
        /// JSON object mapping curve labels to {"deg_k", "gammas"}.
        #[arg(long)]
        curve_extras: Option<PathBuf>,
        /// Also print the Chern data.
        #[arg(long)]
        chern: bool,
    },
    /// Decompose a descriptor's Hilbert series into orbifold terms.
    Parse {
        descriptor: PathBuf,
        /// Print the verification report and fail if any check fails.
        #[arg(long)]
        verify: bool,
    },
    /// Parse and run every consistency check.
    Verify { descriptor: PathBuf },
    /// Grid search for candidate Hilbert series.
    Search {
        template: PathBuf,
        /// Inclusive ranges such as i=0..3,j=0..3,k=0..3.
        #[arg(long)]
        ranges: String,
        /// Also require numerator 1 - … so no generator is missing.
        #[arg(long)]
        strict: bool,
    },
    /// Replay the built-in worked examples and diff against expected output.
    Golden,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    fn classify(error: anyhow::Error) -> Self {
        let inconsistent = error.chain().any(|e| {
            e.downcast_ref::<orbirr_core::Error>()
                .is_some_and(orbirr_core::Error::is_inconsistency)
        });
        Self {
            code: if inconsistent { 1 } else { 2 },
            error,
        }
    }
}

/// Output of a successful (or verify-failed) command.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            code: 0,
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes to the given streams. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return u8::try_from(code).unwrap_or(2);
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let written = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).unwrap_or_default()
                )
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return 2;
            }
            o.code
        }
        Err(e) => {
            let f = Failure::classify(e);
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({ "error": format!("{:#}", f.error), "exit_code": f.code })
                );
            }
            let _ = writeln!(err, "error: {:#}", f.error);
            f.code
        }
    }
}

pub fn execute(cmd: &Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Sigma { r, weights, deltas } => sigma(*r, weights, *deltas),
        Command::Qorb { s, weights, k, dim } => qorb_cmd(*s, weights, *k, *dim),
        Command::Initial {
            plurigenera,
            k,
            dim,
        } => initial(plurigenera, *k, *dim),
        Command::Bite {
            s,
            weights,
            k,
            direction,
        } => bite_cmd(*s, weights, *k, *direction),
        Command::Expand { input, to } => expand_cmd(input, *to),
        Command::Chi {
            descriptor,
            d_range,
            curve_extras,
            chern,
        } => chi_cmd(descriptor, d_range, curve_extras.as_deref(), *chern),
        Command::Parse { descriptor, verify } => parse_cmd(descriptor, *verify),
        Command::Verify { descriptor } => parse_cmd(descriptor, true),
        Command::Search {
            template,
            ranges,
            strict,
        } => search_cmd(template, ranges, *strict),
        Command::Golden => Ok(golden::run_all()),
    }
}

fn sigma(r: u32, weights: &[u32], deltas: bool) -> anyhow::Result<Outcome> {
    let sv = sigma_all(&DedekindSpec::new(r, weights.to_vec())?)?;
    let mut text = render::joined(sv.values()) + "\n";
    let mut j = json!({ "r": r, "weights": weights, "sigma": render::rationals(sv.values()) });
    if deltas {
        let d = sv.deltas();
        text += &(render::joined(&d) + "\n");
        j["deltas"] = render::rationals(&d);
    }
    Ok(Outcome::ok(text, j))
}

fn point_type(s: u32, weights: &[u32], k: i64, dim: Option<usize>) -> anyhow::Result<PointType> {
    if let Some(n) = dim.filter(|&n| n != weights.len()) {
        bail!("--dim {n} but {} weights were given", weights.len());
    }
    Ok(PointType::new(s, weights.to_vec(), k)?)
}

fn qorb_cmd(s: u32, weights: &[u32], k: i64, dim: Option<usize>) -> anyhow::Result<Outcome> {
    let p = point_type(s, weights, k, dim)?;
    let q = qorb(&p)?;
    Ok(Outcome::ok(
        format!("{q}\n"),
        json!({ "type": p.to_string(), "k": k, "term": render::ratfn(&q) }),
    ))
}

fn initial(plurigenera: &[String], k: i64, dim: i64) -> anyhow::Result<Outcome> {
    let p: Vec<Rational> = plurigenera
        .iter()
        .map(|s| input::parse_rational(s))
        .collect::<anyhow::Result<_>>()?;
    let f = initial_term(&p, k, dim)?;
    Ok(Outcome::ok(
        format!("{f}\n"),
        json!({ "k": k, "dimension": dim, "initial": render::ratfn(&f) }),
    ))
}

fn bite_cmd(s: u32, weights: &[u32], k: i64, direction: Option<usize>) -> anyhow::Result<Outcome> {
    let p = point_type(s, weights, k, None)?;
    let directions: Vec<usize> = match direction {
        Some(0) => bail!("directions are numbered from 1"),
        Some(i) => vec![i - 1],
        None => p
            .gcds()
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 1)
            .map(|(i, _)| i)
            .collect(),
    };
    if directions.is_empty() {
        bail!("{p} has no curve directions");
    }
    let gcds = p.gcds();
    let mut text = String::new();
    let mut items = Vec::new();
    for i in directions {
        let b = bite(&p, i)?;
        let w = gcds[i];
        if direction.is_some() {
            text += &format!("{b}\n");
        } else {
            text += &format!("direction {} (order {w}): {b}\n", i + 1);
        }
        items.push(json!({ "direction": i + 1, "order": w, "bite": render::poly(&b) }));
    }
    Ok(Outcome::ok(
        text,
        json!({ "type": p.to_string(), "bites": items }),
    ))
}

fn expand_cmd(input: &str, to: usize) -> anyhow::Result<Outcome> {
    let path = Path::new(input);
    let f: RationalFn = if path.is_file() {
        series_of(&input::load_descriptor(path)?)
    } else {
        input
            .parse()
            .map_err(|e| anyhow!("{input:?} is neither a descriptor file nor a series: {e}"))?
    };
    let coeffs = expand(&f, to)?;
    Ok(Outcome::ok(
        render::joined(&coeffs) + "\n",
        json!({ "series": render::ratfn(&f), "coefficients": render::rationals(&coeffs) }),
    ))
}

fn load_extras(path: &Path) -> anyhow::Result<BTreeMap<String, NormalData>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw: BTreeMap<String, input::NormalJson> =
        serde_json::from_str(&text).with_context(|| format!("in {}", path.display()))?;
    raw.into_iter()
        .map(|(label, n)| Ok((label, n.to_normal()?)))
        .collect()
}

fn chi_cmd(
    descriptor: &Path,
    d_range: &str,
    extras: Option<&Path>,
    chern: bool,
) -> anyhow::Result<Outcome> {
    let v = input::load_descriptor(descriptor)?;
    let extras = extras.map(load_extras).transpose()?.unwrap_or_default();
    if let Some(label) = extras
        .keys()
        .find(|l| !v.curves.iter().any(|c| &c.label == *l))
    {
        bail!("curve extras name unknown curve {label}");
    }
    let range = input::parse_range(d_range)?;
    let rr = RiemannRoch::new(&v, &extras)?;
    let ds: Vec<i64> = range.collect();
    let values = ds
        .par_iter()
        .map(|&d| rr.chi(d))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    let mut j = json!({ "name": v.name, "d": ds, "chi": values.iter().map(ToString::to_string).collect::<Vec<_>>() });
    if chern {
        let cd = rr.chern();
        let cs: Vec<Rational> = (1..=cd.dimension()).map(|i| cd.c(i)).collect();
        let named = cs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("c{}={c}", i + 1))
            .collect::<Vec<_>>()
            .join(" ");
        text += &format!("{named} H^{}={}\n", cd.dimension(), cd.hn);
        j["chern"] = json!({ "c": render::rationals(&cs), "hn": render::rational(&cd.hn) });
    }
    text += &(render::joined(&values) + "\n");
    Ok(Outcome::ok(text, j))
}

fn parse_cmd(descriptor: &Path, verify: bool) -> anyhow::Result<Outcome> {
    let v = input::load_descriptor(descriptor)?;
    let ps = parse(&v)?;
    let mut text = render::parsed_text(&ps);
    let passed = ps.report.passed();
    if verify {
        text += &format!("{}", ps.report);
        text += if passed {
            "verified\n"
        } else {
            "verification FAILED\n"
        };
    } else if !passed {
        text += &format!(
            "warning: {} check(s) failed; run verify for details\n",
            ps.report.failures().count()
        );
    }
    let json = render::parsed_json(&ps);
    Ok(Outcome {
        text,
        json,
        code: if verify && !passed { 1 } else { 0 },
    })
}

pub fn run_search(
    template: &SearchTemplate,
    ranges: &[(String, std::ops::RangeInclusive<i64>)],
) -> anyhow::Result<Vec<orbirr_core::parser::Candidate>> {
    let grid = template.grid(ranges)?;
    let base = template.base()?;
    Ok(grid
        .par_iter()
        .map(|p| template.evaluate(&base, p))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

fn search_cmd(path: &Path, ranges: &str, strict: bool) -> anyhow::Result<Outcome> {
    let screening = if strict {
        Screening::Generators
    } else {
        Screening::Support
    };
    let template = input::load_template(path, screening)?;
    let ranges = input::parse_named_ranges(ranges)?;
    let found = run_search(&template, &ranges)?;
    let text: String = found
        .iter()
        .map(|c| render::candidate_text(c) + "\n")
        .collect();
    let json = Value::Array(found.iter().map(render::candidate_json).collect());
    Ok(Outcome::ok(text, json))
}
