//! Command-line front end.
//!
//! Exit codes: `0` success, `1` verification mismatch, `2` usage or
//! validation error. Records go to stdout, diagnostics to stderr.

mod output;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closedform::{p_auto, p_formula1, p_formula2, Problem};
use crate::error::{Error, Result};
use crate::montecarlo::{estimate, SimConfig};
use crate::sequences::{s_spec, t_spec};

pub use output::{Method, OutputRecord};
pub use verify::{run_suites, Mismatch, SuiteReport, VerifyBounds};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pickup-sticks",
    version,
    about = "Probability that no k-gon can be formed from n uniform random sticks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact p(n, k) for one problem.
    Prob(ProbArgs),
    /// Exact p(n, k) over a range of problems.
    Table(TableArgs),
    /// Cross-check the closed formulas against each other and the geometry.
    Verify(VerifyArgs),
    /// Monte Carlo estimate of p(n, k).
    Simulate(SimulateArgs),
    /// Print the first terms of T(k, ell) or S(k).
    Seq(SeqArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Formula {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Auto,
}

#[derive(Args, Debug)]
struct Display {
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Significant digits of the decimal rendering.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u16).range(1..=200))]
    digits: u16,
}

#[derive(Args, Debug)]
struct ProbArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "auto")]
    formula: Formula,
    #[command(flatten)]
    display: Display,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n_max: usize,
    /// Restrict to a single polygon size.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    display: Display,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest n for the vertex-enumeration check.
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Raise the vertex-enumeration bound to at least 10.
    #[arg(long)]
    deep: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    chunks: u64,
    #[command(flatten)]
    display: Display,
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[arg(long)]
    k: usize,
    /// Print T(k, ell).
    #[arg(long)]
    ell: Option<usize>,
    /// Print S(k).
    #[arg(long)]
    s: bool,
    #[arg(long)]
    count: usize,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Nothing is written until the command has finished.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };

    let mut stdout = String::new();
    let mut stderr = String::new();
    let code = match dispatch(cli.command, &mut stdout, &mut stderr) {
        Ok(code) => code,
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            match e {
                Error::InvalidArgument(_) => EXIT_USAGE,
                _ => EXIT_MISMATCH,
            }
        }
    };
    let _ = out.write_all(stdout.as_bytes());
    let _ = err.write_all(stderr.as_bytes());
    code
}

fn dispatch(command: Command, out: &mut String, err: &mut String) -> Result<u8> {
    match command {
        Command::Prob(args) => cmd_prob(args, out),
        Command::Table(args) => cmd_table(args, out),
        Command::Verify(args) => cmd_verify(args, out, err),
        Command::Simulate(args) => cmd_simulate(args, out, err),
        Command::Seq(args) => cmd_seq(args, out),
    }
}

fn cmd_prob(args: ProbArgs, out: &mut String) -> Result<u8> {
    let prob = Problem::new(args.n, args.k)?;
    let (value, method) = match args.formula {
        Formula::One => (p_formula1(prob)?, Method::Formula1),
        Formula::Two => (p_formula2(prob)?, Method::Formula2),
        // Both formulas are evaluated and must agree; the value is formula 1's.
        Formula::Auto => (p_auto(prob)?, Method::Formula1),
    };
    let record = OutputRecord::exact(prob, value.value(), method, args.display.digits);
    out.push_str(&output::render_one(&record, args.display.format));
    Ok(EXIT_OK)
}

fn cmd_table(args: TableArgs, out: &mut String) -> Result<u8> {
    if args.n_max < 3 {
        return Err(Error::invalid(format!(
            "n-max must satisfy n-max >= 3, got {}",
            args.n_max
        )));
    }
    if let Some(k) = args.k {
        Problem::new(args.n_max, k)?;
    }
    let records = Problem::all_up_to(args.n_max)
        .into_iter()
        .filter(|p| args.k.is_none_or(|k| p.k() == k))
        .map(|p| {
            let value = p_auto(p)?;
            Ok(OutputRecord::exact(p, value.value(), Method::Formula1, args.display.digits))
        })
        .collect::<Result<Vec<_>>>()?;
    out.push_str(&output::render_table(&records, args.display.format));
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs, out: &mut String, err: &mut String) -> Result<u8> {
    if args.n_max < 3 {
        return Err(Error::invalid(format!(
            "n-max must satisfy n-max >= 3, got {}",
            args.n_max
        )));
    }
    let bounds = VerifyBounds::with_oracle_bound(if args.deep {
        args.n_max.max(10)
    } else {
        args.n_max
    });
    let (reports, failure) = run_suites(&bounds);
    for report in &reports {
        out.push_str(&format!("{report}\n"));
    }
    match failure {
        None => {
            out.push_str("all suites passed\n");
            Ok(EXIT_OK)
        }
        Some(mismatch) => {
            out.push_str(&format!("{mismatch}\n"));
            err.push_str(&format!("verification failed: {mismatch}\n"));
            Ok(EXIT_MISMATCH)
        }
    }
}

fn cmd_simulate(args: SimulateArgs, out: &mut String, err: &mut String) -> Result<u8> {
    let prob = Problem::new(args.n, args.k)?;
    let config = SimConfig::new(prob, args.samples, args.seed, args.chunks)?;
    let exact = p_auto(prob)?;
    let result = estimate(&config);
    if result.rare_event() {
        err.push_str(&format!(
            "warning: only {} successes in {} samples; the normal approximation is unreliable\n",
            result.successes, result.samples
        ));
    }
    let record = OutputRecord::simulated(prob, exact.value(), &result, args.display.digits);
    out.push_str(&output::render_simulation(
        &record,
        &result,
        exact.value(),
        args.display.format,
        args.display.digits,
    ));
    Ok(EXIT_OK)
}

fn cmd_seq(args: SeqArgs, out: &mut String) -> Result<u8> {
    let spec = match (args.ell, args.s) {
        (Some(ell), false) => t_spec(args.k, ell)?,
        (None, true) => s_spec(args.k)?,
        _ => return Err(Error::invalid("give exactly one of --ell or --s")),
    };
    if args.count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    let terms: Vec<String> = spec.terms(args.count).iter().map(ToString::to_string).collect();
    out.push_str(&terms.join(" "));
    out.push('\n');
    Ok(EXIT_OK)
}
