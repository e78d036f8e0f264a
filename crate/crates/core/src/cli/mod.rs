//! The `qwadg` command line: `fit1d`, `sweep`, `price` and `digit`.
//!
//! Each command resolves its settings from built-in defaults, an optional
//! `--config` file (TOML, or JSON such as an earlier output file) and flags,
//! in that order, and embeds the resolved settings in its output under
//! `config`. Exit status is 0 on success, 2 on a usage error, 1 otherwise.

mod commands;
mod config;
mod family;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::adg::CostKind;
use crate::statevec::WalkKind;

pub use commands::{execute, CliError};
pub use config::RunConfig;
pub use family::{build_target, parse_family};

#[derive(Debug, Parser)]
#[command(name = "qwadg", version, about = "Fit quantum-walk coin angles to target distributions")]
pub struct Cli {
    /// Worker threads for restarts; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a 1D walk to a named distribution.
    Fit1d(Fit1dArgs),
    /// Fit the same target at several coin counts, repeatedly.
    Sweep(SweepArgs),
    /// Fit the terminal price distribution and price European calls.
    Price(PriceArgs),
    /// Fit an entangled 2D walk to a digit pattern.
    Digit(DigitArgs),
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// TOML or JSON settings file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `mse` or `kl`.
    #[arg(long, value_parser = parse_cost)]
    pub cost: Option<CostKind>,
    /// Learning rate for every angle.
    #[arg(long)]
    pub lr: Option<f64>,
    #[arg(long)]
    pub lr_theta: Option<f64>,
    #[arg(long)]
    pub lr_phi: Option<f64>,
    #[arg(long)]
    pub lr_lambda: Option<f64>,
    #[arg(long)]
    pub fd_step: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub kl_epsilon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct Fit1dArgs {
    /// e.g. `binomial:15,0.5`, `lognormal:6,0.4,0.04,0.2466`, `empirical:prices.txt`.
    #[arg(long)]
    pub family: Option<String>,
    /// Position qubits; the grid has `2^qubits` points.
    #[arg(long)]
    pub qubits: Option<usize>,
    #[arg(long)]
    pub layers: Option<usize>,
    /// `dtqw` or `ssqw`.
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<WalkKind>,
    /// Continuous support as `lo,hi`.
    #[arg(long, value_parser = parse_support, allow_hyphen_values = true)]
    pub support: Option<[f64; 2]>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub qubits: Option<usize>,
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<WalkKind>,
    #[arg(long, value_parser = parse_support, allow_hyphen_values = true)]
    pub support: Option<[f64; 2]>,
    /// Coin counts, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub coins: Option<Vec<usize>>,
    /// Repetitions per coin count.
    #[arg(long)]
    pub reps: Option<usize>,
    /// Also write the per-repetition CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct PriceArgs {
    #[arg(long)]
    pub spot: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rate: Option<f64>,
    #[arg(long)]
    pub volatility: Option<f64>,
    /// Years.
    #[arg(long)]
    pub maturity: Option<f64>,
    /// Comma separated; 1 to 10 by default.
    #[arg(long, value_delimiter = ',')]
    pub strikes: Option<Vec<f64>>,
    /// Analytic prices only, no fitting.
    #[arg(long)]
    pub bs_only: bool,
    #[arg(long)]
    pub qubits: Option<usize>,
    #[arg(long)]
    pub layers: Option<usize>,
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<WalkKind>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct DigitArgs {
    /// Digit 0 to 9.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=9))]
    pub d: Option<u8>,
    #[arg(long)]
    pub layers: Option<usize>,
    /// Also fit with product coins.
    #[arg(long)]
    pub baseline: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn parse_cost(s: &str) -> Result<CostKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "mse" => Ok(CostKind::Mse),
        "kl" => Ok(CostKind::Kl),
        _ => Err(format!("expected mse or kl, got {s:?}")),
    }
}

fn parse_kind(s: &str) -> Result<WalkKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "dtqw" => Ok(WalkKind::Dtqw),
        "ssqw" => Ok(WalkKind::Ssqw),
        "entangled2d" => Ok(WalkKind::Entangled2D),
        _ => Err(format!("expected dtqw, ssqw or entangled2d, got {s:?}")),
    }
}

fn parse_support(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(format!("expected lo,hi, got {s:?}"));
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?}"));
    Ok([num(lo)?, num(hi)?])
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(CliError::Internal(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}
