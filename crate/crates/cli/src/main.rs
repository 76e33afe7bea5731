//! `fuchs-verify`: run the verification suites and report the results.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use padic_fuchs::grid::DEFAULT_GUARD;
use padic_fuchs::{all_passed, emit_report, run_suite, OutputFormat, RunConfig, Suite};

/// Verify p-adic Fuchs quantization and the dual 2-cocycle F on finite grids.
///
/// Every flag can also be set through an environment variable with the
/// `PFUCHS_` prefix, e.g. `PFUCHS_PRIME=5`.
#[derive(Debug, Parser)]
#[command(name = "fuchs-verify", version)]
struct Cli {
    /// Odd prime p.
    #[arg(long, env = "PFUCHS_PRIME", default_value_t = 3)]
    prime: u64,

    /// Level n of U_n = 1 + p^n Z_p.
    #[arg(long = "n", env = "PFUCHS_N", default_value_t = 1)]
    n: u32,

    /// Resolution m: cells of U_{n+m}, Γ support down to valuation -(n+m).
    #[arg(long, env = "PFUCHS_LEVEL", default_value_t = 1)]
    level: u32,

    /// Extra p-adic digits carried beyond n + m.
    #[arg(long, env = "PFUCHS_GUARD", default_value_t = DEFAULT_GUARD)]
    guard: u32,

    /// Override the pinned tolerance of every floating-point check.
    #[arg(long, env = "PFUCHS_TOLERANCE")]
    tolerance: Option<f64>,

    #[arg(long, env = "PFUCHS_SEED", default_value_t = 0)]
    seed: u64,

    /// Cap on dense matrix memory, in MiB.
    #[arg(long, env = "PFUCHS_BUDGET_MB", default_value_t = 1024)]
    budget_mb: usize,

    /// Suite to run, or `all`.
    #[arg(long, env = "PFUCHS_SUITE", default_value = "all", value_parser = parse_suite)]
    suite: Suite,

    /// `text` or `json`.
    #[arg(long, env = "PFUCHS_FORMAT", default_value = "text", value_parser = parse_format)]
    format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, env = "PFUCHS_OUTPUT")]
    output: Option<PathBuf>,

    /// Record elapsed time as 0 so identical runs give identical reports.
    #[arg(long, env = "PFUCHS_OMIT_TIMING")]
    omit_timing: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: padic_fuchs::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: padic_fuchs::Error| e.to_string())
}

impl Cli {
    fn config(&self) -> RunConfig {
        RunConfig {
            p: self.prime,
            n: self.n,
            m: self.level,
            guard: self.guard,
            tolerance: self.tolerance,
            seed: self.seed,
            budget_mb: self.budget_mb,
            format: self.format,
            omit_timing: self.omit_timing,
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let config = cli.config();
    let reports = run_suite(&config, cli.suite)?;
    match &cli.output {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut out = BufWriter::new(file);
            emit_report(&reports, config.format, &mut out)?;
            out.flush()?;
        }
        None => {
            let mut out = io::stdout().lock();
            emit_report(&reports, config.format, &mut out)?;
        }
    }
    Ok(all_passed(&reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
