//! `cauchy`: curve lengths by projections, curvature, the delta-kernel integral
//! and continuity probes from the command line.
//!
//! Exit codes: 0 on success, 1 when a computation fails, 2 on bad usage or
//! unparsable input.

mod commands;
mod output;
mod spec;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cauchy_core::{Exponent, TruncationContext};
use clap::{ArgGroup, Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "cauchy", version, about = "Infinitesimal procedures made executable")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Truncation as TERMS:WINDOW (term budget and exponent window).
    #[arg(long, default_value = "32:8", value_parser = parse_order, global = true)]
    order: TruncationContext,
    /// Seed for the Monte-Carlo generator.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Curve length by projections: the integral formula, then the n-line
    /// average for every (n, offset) pair.
    Length(LengthArgs),
    /// Radius and center of curvature of a parametric curve.
    Curvature(CurvatureArgs),
    /// Integral of F against the Cauchy kernel over an alpha × eps grid.
    Delta(DeltaArgs),
    /// Continuity, microcontinuity and series-tail probes.
    Probe(ProbeArgs),
}

#[derive(Debug, Args)]
struct LengthArgs {
    /// Curve spec: inline JSON, a file path, or `-` for stdin.
    spec: String,
    /// Line counts, e.g. `4,8,16` or `4..64`.
    #[arg(long, default_value = "4,8,16,32,64", value_parser = parse_n_list)]
    n: NList,
    /// Number of offsets on a uniform grid over [0, π).
    #[arg(long, default_value_t = 1)]
    offsets: usize,
    /// Append a Monte-Carlo row from this many random directions.
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("where").required(true).args(["t", "range"])))]
struct CurvatureArgs {
    spec: String,
    /// Parameter values, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    /// Equally spaced parameters as T0:T1:COUNT, both ends included.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    range: Option<TList>,
}

#[derive(Debug, Args)]
struct DeltaArgs {
    /// The function F.
    expr: String,
    /// Center of the kernel.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-3,1e-4,1e-5,1e-6")]
    alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1e-2")]
    eps: Vec<f64>,
    /// Variable name used in F.
    #[arg(long, default_value = "m")]
    var: String,
    /// Gauss–Legendre points per panel.
    #[arg(long, default_value_t = 15)]
    points: usize,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["x0", "micro", "sum"])))]
struct ProbeArgs {
    /// The function to probe (not needed with --sum).
    expr: Option<String>,
    #[arg(long, default_value = "t")]
    var: String,
    /// Standard points for the continuity probe.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x0: Vec<f64>,
    /// Point and increment, both in the `a + b*eps^q` text form.
    #[arg(long, num_args = 2, value_names = ["POINT", "INCREMENT"], allow_hyphen_values = true)]
    micro: Option<Vec<String>>,
    /// Series term in k and x; tails are summed at x = 1/n.
    #[arg(long)]
    sum: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    ladder: Vec<u64>,
    /// The tail runs from n to ratio·n − 1.
    #[arg(long, default_value_t = 2)]
    ratio: u64,
}

#[derive(Debug, Clone)]
struct NList(Vec<usize>);

#[derive(Debug, Clone)]
struct TList(Vec<f64>);

fn parse_order(s: &str) -> Result<TruncationContext, String> {
    let (terms, window) = s.split_once(':').ok_or("expected TERMS:WINDOW")?;
    let terms: usize = terms.trim().parse().map_err(|e| format!("bad term budget: {e}"))?;
    let window = match window.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|e| format!("bad window: {e}"))?;
            let q: i64 = q.trim().parse().map_err(|e| format!("bad window: {e}"))?;
            if q == 0 {
                return Err("window denominator is zero".into());
            }
            Exponent::new(p, q)
        }
        None => Exponent::integer(window.trim().parse().map_err(|e| format!("bad window: {e}"))?),
    };
    TruncationContext::new(terms, window).map_err(|e| e.to_string())
}

fn parse_n_list(s: &str) -> Result<NList, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|e| format!("bad range start `{a}`: {e}"))?;
                let b: usize = b.trim().parse().map_err(|e| format!("bad range end `{b}`: {e}"))?;
                if a > b {
                    return Err(format!("empty range {a}..{b}"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.trim().parse().map_err(|e| format!("bad line count `{part}`: {e}"))?),
        }
    }
    Ok(NList(out))
}

fn parse_range(s: &str) -> Result<TList, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [t0, t1, count] = parts[..] else {
        return Err("expected T0:T1:COUNT".into());
    };
    let t0: f64 = t0.trim().parse().map_err(|e| format!("bad T0: {e}"))?;
    let t1: f64 = t1.trim().parse().map_err(|e| format!("bad T1: {e}"))?;
    let count: usize = count.trim().parse().map_err(|e| format!("bad COUNT: {e}"))?;
    if count == 0 || !t0.is_finite() || !t1.is_finite() {
        return Err("need finite T0, T1 and COUNT >= 1".into());
    }
    if count == 1 {
        return Ok(TList(vec![t0]));
    }
    Ok(TList((0..count).map(|k| if k + 1 == count { t1 } else { t0 + (t1 - t0) * k as f64 / (count - 1) as f64 }).collect()))
}

/// How a run failed, which decides the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = cli.order;
    let report = match cli.command {
        Command::Length(a) => commands::length(&a.spec, &a.n.0, a.offsets, a.random, cli.seed)?,
        Command::Curvature(a) => {
            let ts = a.range.map_or(a.t, |r| r.0);
            commands::curvature(&a.spec, &ts, &ctx)?
        }
        Command::Delta(a) => commands::delta(&a.expr, &a.var, a.a, &a.alpha, &a.eps, a.points)?,
        Command::Probe(a) => {
            let mode = match (a.micro, a.sum) {
                (Some(m), _) => commands::ProbeMode::Micro(m[0].clone(), m[1].clone()),
                (None, Some(term)) => commands::ProbeMode::Sum { term, ladder: a.ladder, ratio: a.ratio },
                (None, None) => commands::ProbeMode::Standard(a.x0),
            };
            commands::probe(a.expr.as_deref(), &a.var, mode, &ctx)?
        }
    };
    let io = |e: std::io::Error| Failure::Numeric(format!("writing output: {e}"));
    match &cli.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            report.write(cli.format, &mut w).map_err(io)?;
            w.flush().map_err(io)
        }
        None => {
            let mut w = std::io::stdout().lock();
            report.write(cli.format, &mut w).map_err(io)?;
            w.flush().map_err(io)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
