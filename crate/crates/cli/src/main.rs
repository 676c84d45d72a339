//! `xop`: evaluate exceptional polynomials, tabulate extended potentials and
//! verify that they are isospectral with their original partners.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::Format;

/// Exit 1 for a verification that ran and failed, 2 for anything the caller got wrong.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
}

impl From<xop_core::Error> for Failure {
    fn from(e: xop_core::Error) -> Self {
        use xop_core::Error as E;
        match e.root() {
            E::Usage(_) | E::Parameter(_) | E::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "xop",
    version,
    about = "Exceptional polynomials and isospectral extended potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a classical or X1 polynomial as `x,value`.
    EvalPoly(EvalPolyArgs),
    /// Run the isospectrality check for every configured system.
    Verify(VerifyArgs),
    /// Original vs extended eigenvalues of one system.
    Spectrum(SpectrumArgs),
    /// Potential columns and closed-form wavefunctions for plotting.
    PlotData(PlotDataArgs),
    /// Gram matrix of a family under its weight.
    Gram(GramArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (csv or json).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file (a directory for `verify`); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalPolyArgs {
    /// Family as JSON, e.g. '{"kind":"X1Laguerre","params":{"k":0.5}}'.
    #[arg(long)]
    family: String,
    #[arg(long)]
    degree: usize,
    /// Explicit comma-separated sample points.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["range", "points"])]
    at: Option<Vec<f64>>,
    /// Sampling interval `lo,hi` (endpoints included).
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    range: Option<(f64, f64)>,
    /// Number of evenly spaced samples in the range.
    #[arg(long, default_value_t = 11)]
    points: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run configuration (JSON); the bundled defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Verify only this system (JSON) instead of the configured list.
    #[arg(long)]
    system: Option<String>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    grid_points: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SpectrumArgs {
    /// System as JSON, e.g. '{"kind":"DiracOscillator","params":{"l":0,"omega":1.0}}'.
    #[arg(long)]
    system: String,
    /// Supplies tolerances and grid overrides.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    levels: usize,
    #[arg(long)]
    grid_points: Option<usize>,
    /// Also write `x,psi_0,...` of the extended problem to this file.
    #[arg(long)]
    eigenfunctions: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WaveVariant {
    Original,
    Extended,
}

#[derive(Args)]
struct PlotDataArgs {
    #[arg(long)]
    system: String,
    /// Which closed-form wavefunctions to append.
    #[arg(long, value_enum, default_value_t = WaveVariant::Extended)]
    variant: WaveVariant,
    /// Sampling interval `lo,hi`, inside the open domain.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    range: Option<(f64, f64)>,
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Number of wavefunction columns.
    #[arg(long, default_value_t = 3)]
    count: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GramArgs {
    #[arg(long)]
    family: String,
    /// Number of family members.
    #[arg(long)]
    degree: usize,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{lo}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{hi}: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite lo < hi, got {lo},{hi}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::EvalPoly(a) => commands::eval_poly(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::PlotData(a) => commands::plot_data(&a),
        Command::Gram(a) => commands::gram(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("xop: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("xop: {msg}");
            ExitCode::from(2)
        }
    }
}
