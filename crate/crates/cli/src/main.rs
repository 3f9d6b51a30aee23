//! `mrcurve`: analytic LRU miss-rate curves for power-law popularities,
//! checked against simulated IRM traces. Every command writes CSV.

mod commands;
mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "mrcurve",
    version,
    about = "LRU miss-rate curves under the independent reference model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Popularity exponent a (p_i ∝ i^-a).
    #[arg(short = 'a', long = "exponent", global = true, allow_negative_numbers = true)]
    pub exponent: Option<f64>,
    /// Number of distinct addresses N.
    #[arg(short = 'N', long = "addresses", global = true)]
    pub addresses: Option<u64>,
    /// Length L of the generated trace.
    #[arg(short = 'L', long = "trace-length", global = true)]
    pub trace_length: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Cache size in entries; repeatable. Replaces the default grid.
    #[arg(long = "cache-size", global = true)]
    pub cache_sizes: Vec<u64>,
    /// Cache-ratio grid lo:hi:step, within (0, 1).
    #[arg(long = "ratio-grid", global = true)]
    pub ratio_grid: Option<String>,
    /// Exponents for ratio/ratio-max: numbers, `inf`, or lo:hi:step, comma separated.
    #[arg(long = "a-grid", global = true)]
    pub a_grid: Option<String>,
    /// log10(y) grid lo:hi:step for `ratio`.
    #[arg(long = "y-grid", global = true, allow_hyphen_values = true)]
    pub y_grid: Option<String>,
    /// Log spacing of size grids, in decades [default: 0.01; simulate: 0.001].
    #[arg(long, global = true)]
    pub binning: Option<f64>,
    /// Also measure the sliding-window working set (simulate).
    #[arg(long, global = true)]
    pub window: bool,
    /// CSV destination; stdout when absent.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Read the trace from a file (binary trace format, or whitespace-separated labels).
    #[arg(long = "trace-in", global = true)]
    pub trace_in: Option<PathBuf>,
    /// Save the trace that was simulated.
    #[arg(long = "trace-out", global = true)]
    pub trace_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Analytic WS, P_reref, LRU and static miss rates over a log grid of D.
    Predict,
    /// Measured distance profiles and miss rates of an IRM (or supplied) trace.
    Simulate,
    /// Analytic versus simulated miss rates over a cache-ratio sweep.
    Compare,
    /// LRU/static ratio in the large-N limit over a cache-ratio or y grid.
    Ratio,
    /// Maximum of the LRU/static ratio for each exponent.
    RatioMax,
    /// Log-log working-set samples and the origin slope.
    Slope,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Output(String),
    Model(mrcurve::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn output(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Output(_) => 2,
            CliError::Model(mrcurve::Error::Io(_) | mrcurve::Error::Format(_)) => 2,
            CliError::Model(_) => 3,
        }
    }
}

impl From<mrcurve::Error> for CliError {
    fn from(e: mrcurve::Error) -> Self {
        CliError::Model(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Output(m) => write!(f, "output: {m}"),
            CliError::Model(e) => write!(f, "{e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mrcurve: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
