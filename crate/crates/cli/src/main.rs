//! `bisphere`: runs the verification suites and prints a report.
//!
//! Exit status: 0 when every check passes, 1 when any check fails,
//! 2 for usage or configuration errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bisphere_core::rational::parse_rational;
use bisphere_core::verify::{self, default_max_degree, Suite, SuiteConfig};
use bisphere_core::{Rational, ReflectionPrefix};
use bisphere_core::model::Transcription;
use clap::{Args, Parser, Subcommand};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "bisphere", version, about = "Runs the exact verification suites of bisphere-core")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Run(RunArgs),
    /// Print the check catalog.
    ListChecks {
        /// Emit JSON records instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Number of variables.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Comma-separated parameters as p/q; omit for the default sweep.
    #[arg(long, value_delimiter = ',', value_parser = parse_mu)]
    mu: Option<Vec<Rational>>,
    /// Degree bound for operator identities (default 8 for n <= 3, else 6).
    #[arg(long)]
    max_degree: Option<usize>,
    /// Comma-separated suites; omit to run all.
    #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
    suites: Option<Vec<Suite>>,
    /// Seed for randomized polynomial sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Decimal digits for Gamma function evaluation.
    #[arg(long, env = "BISPHERE_PRECISION", default_value_t = 50)]
    precision_digits: u32,
    /// Reflection prefix of the gauged realization: full or restricted.
    #[arg(long, default_value = "full", value_parser = parse_prefix)]
    reflection_prefix: ReflectionPrefix,
    /// Use the wavefunction formulas exactly as printed.
    #[arg(long)]
    strict_as_printed: bool,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Zero the timing fields so reports compare byte for byte.
    #[arg(long)]
    no_timing: bool,
}

fn parse_mu(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: bisphere_core::Error| e.to_string())
}

fn parse_prefix(s: &str) -> Result<ReflectionPrefix, String> {
    s.parse().map_err(|e: bisphere_core::Error| e.to_string())
}

impl RunArgs {
    fn config(self) -> (SuiteConfig, Option<PathBuf>, bool) {
        let mut cfg = SuiteConfig::new(self.n);
        cfg.mu = self.mu;
        cfg.max_degree = self.max_degree.unwrap_or_else(|| default_max_degree(self.n));
        if let Some(s) = self.suites {
            cfg.suites = s;
        }
        cfg.seed = self.seed;
        cfg.precision_digits = self.precision_digits;
        cfg.reflection_prefix = self.reflection_prefix;
        if self.strict_as_printed {
            cfg.transcription = Transcription::AsPrinted;
        }
        (cfg, self.out, !self.no_timing)
    }
}

fn list_checks(json: bool) -> io::Result<()> {
    let mut out = io::stdout().lock();
    for c in verify::catalog() {
        if json {
            writeln!(out, "{}", serde_json::to_string(c).expect("catalog serializes"))?;
        } else {
            writeln!(out, "{:<28} {:<14} {}", c.id, c.suite, c.tag)?;
        }
    }
    Ok(())
}

fn run(args: RunArgs) -> ExitCode {
    let (cfg, out_path, timing) = args.config();
    let report = match verify::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("bisphere: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut text = String::new();
    for line in report.json_lines(timing) {
        text.push_str(&line);
        text.push('\n');
    }
    for line in report.summary() {
        text.push_str("# ");
        text.push_str(&line);
        text.push('\n');
    }
    if let Err(e) = io::stdout().lock().write_all(text.as_bytes()) {
        eprintln!("bisphere: writing stdout: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Some(p) = out_path {
        if let Err(e) = fs::write(&p, &text) {
            eprintln!("bisphere: writing {}: {e}", p.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run(args) => run(args),
        Command::ListChecks { json } => match list_checks(json) {
            Ok(()) => ExitCode::SUCCESS,
            Err(_) => ExitCode::from(EXIT_USAGE),
        },
    }
}
