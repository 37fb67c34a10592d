//! `trigsum`: evaluate, expand and verify cosecant/cotangent sums and the
//! related harmonic-number series from the command line.
//!
//! Exit codes: 0 success, 1 an asserted check failed, 2 usage or argument
//! error, 3 a table capacity or term budget was exceeded.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use trigsum::asymptotics::{Diagnostic, ExpansionResult, Target};
use trigsum::harmonic::{c_series, d_series, e_series, SeriesResult};
use trigsum::precision::{DEFAULT_DIGITS, DIGITS_ENV};
use trigsum::trig::{kou_secant_sum, secant_power_sum, TrigSumKind};
use trigsum::verify::{
    emit_report, verify_all, verify_bounds, verify_identities, Format, VerificationReport,
};
use trigsum::{Backend, Context, Dd, Error, PrecisionPolicy, Qd, Real};
use xfloat::decimal::format_sig;

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

const DEFAULT_SUM_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "trigsum", version, about, long_about = None)]
struct Cli {
    /// Working precision in significant digits, 15 to 60. Up to 15 runs in
    /// f64, up to 30 in double-double, beyond that in quad-double.
    #[arg(long, global = true, env = DIGITS_ENV, default_value_t = DEFAULT_DIGITS)]
    digits: u32,

    /// Output format [default: plain for sum and expand, csv for verify]
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance. For sum: bound on the series tail [default: 1e-12].
    /// For verify: relative tolerance of identity checks
    /// [default: 10^(5 - digits)].
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a sum or series at p or over an inclusive range a..b
    Sum {
        /// I, J, K, Ktilde, L, M, C, D, E, secant2, secant4 or kou
        kind: SumKind,
        /// A single p or an inclusive range a..b, with p >= 1
        range: PRange,
    },
    /// Run a verification suite and report every check
    Verify {
        suite: Suite,
        /// A single p or an inclusive range a..b, with p >= 1
        range: PRange,
        /// Expansion orders for the bracket checks, from 0..=3
        #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2])]
        n: Vec<usize>,
    },
    /// Evaluate a truncated asymptotic expansion and its bracket
    Expand {
        /// H, C, D, I or J
        target: Target,
        /// p (or n for H), at least 1
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        p: u64,
        /// Number of correction pairs for I and J [default: 0]
        #[arg(long)]
        n: Option<usize>,
        /// Truncation order for H, C and D [default: 1]
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Bounds,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SumKind {
    Trig(TrigSumKind),
    C,
    D,
    E,
    Secant2,
    Secant4,
    Kou,
}

impl FromStr for SumKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Ok(kind) = s.parse::<TrigSumKind>() {
            return Ok(SumKind::Trig(kind));
        }
        Ok(match s.to_ascii_lowercase().as_str() {
            "c" => SumKind::C,
            "d" => SumKind::D,
            "e" => SumKind::E,
            "secant2" => SumKind::Secant2,
            "secant4" => SumKind::Secant4,
            "kou" => SumKind::Kou,
            _ => return Err(format!("unknown sum `{s}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct PRange {
    from: u64,
    to: u64,
}

impl FromStr for PRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let p = parse(s)?;
                (p, p)
            }
        };
        if from == 0 {
            return Err("p must be at least 1".into());
        }
        if from > to {
            return Err(format!("empty range {from}..{to}"));
        }
        Ok(PRange { from, to })
    }
}

impl fmt::Display for PRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.from, self.to)
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_limit() {
            EXIT_RESOURCE
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("trigsum: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let policy = PrecisionPolicy::with_digits(cli.digits)?;
    match policy.backend() {
        Backend::F64 => execute::<f64>(cli, policy),
        Backend::DoubleDouble => execute::<Dd>(cli, policy),
        Backend::QuadDouble => execute::<Qd>(cli, policy),
    }
}

fn open_output(cli: &Cli) -> Result<Box<dyn Write>, Failure> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            usage(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute<T: Real>(cli: &Cli, policy: PrecisionPolicy) -> Result<u8, Failure> {
    let ctx = Context::<T>::new(policy)?;
    let digits = policy.working_digits() as usize;
    match &cli.command {
        Command::Sum { kind, range } => {
            let tol = cli.tol.unwrap_or(DEFAULT_SUM_TOL);
            let rows = sum_rows(&ctx, *kind, *range, tol, digits)?;
            let mut out = open_output(cli)?;
            write_sum(&mut out, &rows, cli.format.unwrap_or(OutputFormat::Plain))?;
            out.flush()?;
            Ok(0)
        }
        Command::Verify { suite, range, n } => {
            let tol = cli.tol.unwrap_or_else(|| policy.tolerance_f64());
            let report = match suite {
                Suite::Identities => verify_identities(&ctx, range.from, range.to, tol)?,
                Suite::Bounds => verify_bounds(&ctx, range.from, range.to, n)?,
                Suite::All => verify_all(&ctx, range.from, range.to, n, tol)?,
            };
            let mut out = open_output(cli)?;
            match cli.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => emit_report(&report, Format::Csv, &mut out)?,
                OutputFormat::Json => emit_report(&report, Format::Json, &mut out)?,
                OutputFormat::Plain => write_summary(&mut out, &report)?,
            }
            out.flush()?;
            Ok(verdict(&report))
        }
        Command::Expand { target, p, n, m } => {
            let truncation = match (target.takes_pairs(), n, m) {
                (true, _, Some(_)) => return Err(usage(format!("{target} takes --n, not --m"))),
                (false, Some(_), _) => return Err(usage(format!("{target} takes --m, not --n"))),
                (true, n, None) => n.unwrap_or(0),
                (false, None, m) => m.unwrap_or(1),
            };
            let e = target.expand(&ctx, *p, truncation)?;
            let mut out = open_output(cli)?;
            write_expansion(
                &mut out,
                &e,
                *p,
                cli.format.unwrap_or(OutputFormat::Plain),
                digits,
            )?;
            out.flush()?;
            Ok(0)
        }
    }
}

/// Exit code for a finished report: resource limits hit inside the sweep
/// take precedence over ordinary failures.
fn verdict<T: Real>(report: &VerificationReport<T>) -> u8 {
    let mut code = 0;
    for r in report.failures() {
        if r.note.is_some() {
            eprintln!("trigsum: {} at p={}: {}", r.check_id, r.p, r.note.as_deref().unwrap_or(""));
            return EXIT_RESOURCE;
        }
        code = EXIT_FAILED_CHECK;
    }
    if code != 0 {
        let n = report.failures().count();
        eprintln!("trigsum: {n} asserted check(s) failed");
    }
    code
}

#[derive(Serialize)]
struct SumRow {
    p: u64,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_bound: Option<String>,
}

fn sum_rows<T: Real>(
    ctx: &Context<T>,
    kind: SumKind,
    range: PRange,
    tol: f64,
    digits: usize,
) -> Result<Vec<SumRow>, Failure> {
    let fmt = |x: T| format_sig(x, digits);
    let series = |r: SeriesResult<T>| (fmt(r.value), Some(fmt(r.tail_bound)));
    (range.from..=range.to)
        .map(|p| {
            let (value, tail_bound) = match kind {
                SumKind::Trig(k) => (fmt(k.eval::<T>(p)), None),
                SumKind::C => series(c_series(ctx, p, tol)?),
                SumKind::D => series(d_series(ctx, p, tol)?),
                SumKind::E => series(e_series(ctx, p, tol)?),
                SumKind::Secant2 => (fmt(secant_power_sum::<T>(p, 2)?), None),
                SumKind::Secant4 => (fmt(secant_power_sum::<T>(p, 4)?), None),
                SumKind::Kou => (fmt(kou_secant_sum::<T>(p)), None),
            };
            Ok(SumRow {
                p,
                value,
                tail_bound,
            })
        })
        .collect()
}

fn write_sum(out: &mut dyn Write, rows: &[SumRow], format: OutputFormat) -> Result<(), Failure> {
    match format {
        OutputFormat::Plain => {
            for r in rows {
                match &r.tail_bound {
                    Some(t) => writeln!(out, "{}, {}, tail <= {t}", r.p, r.value)?,
                    None => writeln!(out, "{}, {}", r.p, r.value)?,
                }
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["p", "value", "tail_bound"]).map_err(csv_failure)?;
            for r in rows {
                let tail = r.tail_bound.as_deref().unwrap_or("");
                w.write_record([r.p.to_string().as_str(), &r.value, tail])
                    .map_err(csv_failure)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::from(io::Error::from(e))
}

fn write_summary<T: Real>(
    out: &mut dyn Write,
    report: &VerificationReport<T>,
) -> Result<(), Failure> {
    for (id, s) in &report.summary {
        writeln!(
            out,
            "{id}: {} checks, {} passed, {} failed, {} recorded only",
            s.total, s.passed, s.failed, s.unasserted
        )?;
    }
    let verdict = if report.all_asserted_pass() {
        "all asserted checks passed"
    } else {
        "some asserted checks FAILED"
    };
    writeln!(out, "{verdict}")?;
    Ok(())
}

fn diagnostic_label(d: &Diagnostic) -> String {
    match d {
        Diagnostic::BeyondTruncationGuard { limit } => format!("beyond-truncation-guard({limit})"),
        Diagnostic::NextBracketWider => "next-bracket-wider".into(),
    }
}

#[derive(Serialize)]
struct ExpansionRow {
    target: String,
    size: u64,
    truncation: usize,
    truncated: String,
    lower: String,
    upper: String,
    width: String,
    diagnostics: Vec<String>,
}

fn write_expansion<T: Real>(
    out: &mut dyn Write,
    e: &ExpansionResult<T>,
    size: u64,
    format: OutputFormat,
    digits: usize,
) -> Result<(), Failure> {
    let row = ExpansionRow {
        target: e.target.to_string(),
        size,
        truncation: e.terms,
        truncated: format_sig(e.truncated_value, digits),
        lower: format_sig(e.lower, digits),
        upper: format_sig(e.upper, digits),
        width: format_sig(e.width(), digits),
        diagnostics: e.diagnostics.iter().map(diagnostic_label).collect(),
    };
    match format {
        OutputFormat::Plain => {
            let (size_name, trunc_name) = match e.target {
                Target::H => ("n", "m"),
                t if t.takes_pairs() => ("p", "n"),
                _ => ("p", "m"),
            };
            writeln!(out, "target: {}", row.target)?;
            writeln!(out, "{size_name}: {}", row.size)?;
            writeln!(out, "{trunc_name}: {}", row.truncation)?;
            writeln!(out, "truncated: {}", row.truncated)?;
            writeln!(out, "lower: {}", row.lower)?;
            writeln!(out, "upper: {}", row.upper)?;
            writeln!(out, "width: {}", row.width)?;
            let diags = if row.diagnostics.is_empty() {
                "none".to_string()
            } else {
                row.diagnostics.join(" ")
            };
            writeln!(out, "diagnostics: {diags}")?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "target",
                "size",
                "truncation",
                "truncated",
                "lower",
                "upper",
                "width",
                "diagnostics",
            ])
            .map_err(csv_failure)?;
            w.write_record([
                row.target.clone(),
                row.size.to_string(),
                row.truncation.to_string(),
                row.truncated.clone(),
                row.lower.clone(),
                row.upper.clone(),
                row.width.clone(),
                row.diagnostics.join(" "),
            ])
            .map_err(csv_failure)?;
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &row).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
