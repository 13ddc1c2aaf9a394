//! `gpseq`: command-line front end for the recurrence engine and endpoint discovery.
//!
//! Every command prints a JSON [`RunReport`] on stdout (or CSV with `--csv`)
//! and exits 0 when all checks pass, 2 on a failed check or anomaly, 1 on a
//! usage or evaluation error.

mod commands;
pub mod epsilon;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use epsilon::EpsilonInput;
pub use report::{CheckResult, Outcome, RunReport, Table, Timings};

#[derive(Debug, Parser)]
#[command(name = "gpseq", version, about = "Floor recurrences in Q(sqrt2) and their digit-emitting pairs")]
pub struct Cli {
    /// Omit wall-clock timings so reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Print tabular output as CSV instead of the JSON report.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Digits d_1..d_N of the trace for one epsilon.
    Digits(DigitsArgs),
    /// Check pairs of the table at their endpoints and midpoint.
    Verify(VerifyArgs),
    /// Locate and identify a row endpoint by bisection.
    Discover(DiscoverArgs),
    /// CSV data for the interval map (figure 1) or the v_n step plot (figure 2).
    Plotdata(PlotArgs),
    /// First digit outside {0, 1}.
    Counterexample(CounterexampleArgs),
    /// Binary digits of 759250125*sqrt2 from epsilon = 1 - pi^2/e^3.
    Corollary(CorollaryArgs),
    /// Extremes of the fractional parts of m*sqrt2*2^k.
    Normality(NormalityArgs),
    /// Exact partition of an epsilon range into cells of equal v-prefix.
    Sweep(SweepArgs),
    /// Rebuild the pair table from a full-domain sweep.
    Table(TableArgs),
    /// List the registered floor strategies and identifiers.
    Strategies,
}

#[derive(Debug, Args)]
pub struct DigitsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: EpsilonInput,
    #[arg(long)]
    pub count: usize,
    /// Floor strategy; defaults to exact for Q(sqrt2) inputs, interval otherwise.
    #[arg(long)]
    pub floor: Option<String>,
    /// Refinement cap for the interval strategy.
    #[arg(long)]
    pub max_bits: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Row 1..8 or `all`.
    #[arg(long, default_value = "all")]
    pub pair: PairSel,
    /// Digits compared at each sample.
    #[arg(long, default_value_t = 200)]
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSel {
    All,
    Row(usize),
}

impl std::str::FromStr for PairSel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(PairSel::All);
        }
        match s.parse::<usize>() {
            Ok(i) if (1..=8).contains(&i) => Ok(PairSel::Row(i)),
            _ => Err(format!("expected 1..8 or 'all', got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct DiscoverArgs {
    #[arg(long)]
    pub row: usize,
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    /// Width of the final bracket is at most 2^-tol_bits.
    #[arg(long, default_value_t = 48)]
    pub tol_bits: u32,
    /// Coefficient bound for identification.
    #[arg(long, default_value = "4294967296")]
    pub bound: num_bigint::BigInt,
    /// Initial bracket `lo:hi` (rational expressions).
    #[arg(long, default_value = "0.2929:0.7071")]
    pub window: String,
    #[arg(long, default_value = "halfint")]
    pub identifier: String,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub figure: u8,
    /// Epsilon range `lo:hi` for figure 2.
    #[arg(long, default_value = "0.40:0.60")]
    pub range: String,
    /// Index n of v_n for figure 2.
    #[arg(long, default_value_t = 62)]
    pub depth: usize,
    #[arg(long)]
    pub budget: Option<usize>,
    /// Write the CSV here and print the JSON report instead.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: EpsilonInput,
    #[arg(long, default_value_t = 4000)]
    pub limit: usize,
}

#[derive(Debug, Args)]
pub struct CorollaryArgs {
    #[arg(long, default_value_t = 150)]
    pub max_n: usize,
    #[arg(long, default_value_t = gp_core::engine::COROLLARY_CAP_BITS)]
    pub max_bits: u32,
}

#[derive(Debug, Args)]
pub struct NormalityArgs {
    #[arg(long, default_value_t = 1)]
    pub multiplier: u32,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "1-sqrt2/2", allow_hyphen_values = true)]
    pub lo: String,
    #[arg(long, default_value = "sqrt2/2", allow_hyphen_values = true)]
    pub hi: String,
    #[arg(long)]
    pub depth: usize,
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 21)]
    pub depth: usize,
    #[arg(long, default_value_t = 10)]
    pub digit_depth: usize,
    #[arg(long, default_value_t = 8)]
    pub l_bound: u32,
    #[arg(long)]
    pub budget: Option<usize>,
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Result<Outcome, String> {
    commands::dispatch(&cli.command)
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let mut outcome = match run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    if !cli.no_timing {
        outcome.report.timings = Some(Timings {
            total_ms: start.elapsed().as_millis(),
        });
    }
    if cli.csv {
        let table = outcome.table.take().unwrap_or_else(|| outcome.report.results_table());
        print!("{}", table.to_csv());
    } else if let Some(table) = outcome.table.take().filter(|_| commands::table_is_primary(&cli.command)) {
        print!("{}", table.to_csv());
    } else {
        println!("{}", outcome.report.to_json());
    }
    outcome.report.exit_code()
}
