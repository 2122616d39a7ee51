//! `tlt`: two-level thresholding from the command line.
//!
//! Exit status: 0 success, 1 usage error, 2 input-data error, 3 numeric
//! failure.

mod analyze;
mod error;
mod input;
mod output;
mod scan;
mod simulate;
mod theory;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::{CliError, CliResult};
use tlt_core::{PriorBounds, Probability, ProportionSource, TolerancePreset};

#[derive(Debug, Parser)]
#[command(name = "tlt", version, about = "Split ranked p-values into signal, indistinguishable and noise subsets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Categorize a list of p-values and report the FDR cutoffs alongside.
    Analyze(analyze::AnalyzeArgs),
    /// Run seeded Monte Carlo experiments and summarize them.
    Simulate(simulate::SimulateArgs),
    /// Scan a signal track for intervals and categorize the survivors.
    Scan(scan::ScanArgs),
    /// Evaluate the asymptotic existence boundaries.
    Theory(theory::TheoryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TolerancePresetArg {
    /// 1 / (2 log n)
    HalfInverseLog,
    /// 1 / log n
    InverseLog,
}

impl From<TolerancePresetArg> for TolerancePreset {
    fn from(p: TolerancePresetArg) -> Self {
        match p {
            TolerancePresetArg::HalfInverseLog => TolerancePreset::HalfInverseLog,
            TolerancePresetArg::InverseLog => TolerancePreset::InverseLog,
        }
    }
}

/// Tolerance and proportion flags shared by the subcommands that run TLT.
#[derive(Debug, Clone, Args)]
pub struct LevelArgs {
    /// First-cut tolerance alpha_n (defaults to the preset value at n).
    #[arg(long)]
    alpha: Option<f64>,
    /// Second-cut tolerance beta_n (defaults to the preset value at n).
    #[arg(long)]
    beta: Option<f64>,
    /// Schedule used for whichever of alpha_n, beta_n is not given.
    #[arg(long, value_enum)]
    tolerance: Option<TolerancePresetArg>,
}

fn open_level(v: f64, name: &str) -> CliResult<Probability> {
    Probability::open(v).map_err(|_| CliError::Usage(format!("--{name} must lie in (0, 1), got {v}")))
}

impl LevelArgs {
    /// Levels given on the command line, validated.
    pub fn fixed(&self) -> CliResult<(Option<Probability>, Option<Probability>)> {
        Ok((
            self.alpha.map(|v| open_level(v, "alpha")).transpose()?,
            self.beta.map(|v| open_level(v, "beta")).transpose()?,
        ))
    }

    pub fn resolve(&self, n: usize, default: TolerancePreset) -> CliResult<(Probability, Probability)> {
        let preset = self.tolerance.map_or(default, Into::into);
        let level = |given: Option<f64>, name: &str| -> CliResult<Probability> {
            match given {
                Some(v) => open_level(v, name),
                None => Ok(preset.value(n)?),
            }
        };
        Ok((level(self.alpha, "alpha")?, level(self.beta, "beta")?))
    }
}

pub fn parse_bounds(values: Option<&[f64]>) -> CliResult<Option<PriorBounds>> {
    match values {
        None => Ok(None),
        Some([lo, hi]) => PriorBounds::new(*lo, *hi)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("--bounds: {e}"))),
        Some(other) => Err(CliError::Usage(format!(
            "--bounds takes two values, got {}",
            other.len()
        ))),
    }
}

pub fn proportion_source(bounds: Option<PriorBounds>) -> ProportionSource {
    bounds.map_or(ProportionSource::MrEstimator, ProportionSource::Bounds)
}

pub fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s {
        "\\t" | "tab" => Ok(b'\t'),
        _ if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        _ => Err(format!("delimiter must be a single ASCII character, got '{s}'")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted or '-'.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze(a) => analyze::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Scan(a) => scan::run(a),
        Command::Theory(a) => theory::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tlt: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
