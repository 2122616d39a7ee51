use std::io::Write;

use clap::Args;
use serde::Serialize;

use tlt_core::theory::{
    existence_boundaries, recovery_region, ExistenceBoundaries, MixtureCalibration, Regime,
};

use crate::error::{CliError, CliResult};
use crate::output::{num, opt_num, sink, write_csv, write_json, SCHEMA_VERSION};
use crate::{Format, OutputArgs};

#[derive(Debug, Args)]
pub struct TheoryArgs {
    /// Number of noise observations.
    #[arg(long, requires = "s1")]
    s0: Option<u64>,
    /// Number of signal observations.
    #[arg(long, requires = "s0")]
    s1: Option<u64>,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    /// Sparsity exponent in pi = n^(-beta).
    #[arg(long)]
    beta: Option<f64>,
    /// Sample size for a calibrated mixture (with --beta and --r).
    #[arg(long, requires_all = ["beta", "r"])]
    n: Option<u64>,
    /// Strength exponent in mu = sqrt(2 r log n).
    #[arg(long, requires_all = ["beta", "n"])]
    r: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Serialize)]
struct Existence {
    s0: u64,
    s1: u64,
    eps: f64,
    #[serde(flatten)]
    bounds: ExistenceBoundaries,
}

#[derive(Debug, Serialize)]
struct Recovery {
    beta: f64,
    r_signal_exists: f64,
    r_indist_vanishes: f64,
}

#[derive(Debug, Serialize)]
struct Calibrated {
    n: u64,
    r: f64,
    pi: f64,
    mu: f64,
    regime: Regime,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    command: &'static str,
    existence: Option<Existence>,
    recovery: Option<Recovery>,
    calibration: Option<Calibrated>,
}

pub fn run(args: TheoryArgs) -> CliResult<()> {
    if args.s0.is_none() && args.beta.is_none() {
        return Err(CliError::Usage("give --s0 and --s1, or --beta (or both)".into()));
    }
    let existence = match (args.s0, args.s1) {
        (Some(s0), Some(s1)) => Some(Existence {
            s0,
            s1,
            eps: args.eps,
            bounds: existence_boundaries(s0, s1, args.eps).map_err(|e| CliError::Usage(e.to_string()))?,
        }),
        _ => None,
    };
    let recovery = args
        .beta
        .map(|beta| {
            recovery_region(beta)
                .map(|(lo, hi)| Recovery {
                    beta,
                    r_signal_exists: lo,
                    r_indist_vanishes: hi,
                })
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .transpose()?;
    let calibration = match (args.n, args.beta, args.r) {
        (Some(n), Some(beta), Some(r)) => {
            let c = MixtureCalibration::new(n, beta, r).map_err(|e| CliError::Usage(e.to_string()))?;
            Some(Calibrated {
                n,
                r,
                pi: c.pi(),
                mu: c.mu(),
                regime: c.regime(),
            })
        }
        _ => None,
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "theory",
        existence,
        recovery,
        calibration,
    };

    let dest = args.out.output.as_deref();
    match args.format {
        Format::Json => write_json(dest, &report),
        Format::Csv => {
            let header = [
                "s0", "s1", "eps", "mu_signal_lower", "mu_indist_upper", "noise_condition_holds", "beta",
                "r_signal_exists", "r_indist_vanishes",
            ]
            .map(String::from);
            let e = report.existence.as_ref();
            let r = report.recovery.as_ref();
            let row = [
                e.map(|e| e.s0.to_string()).unwrap_or_default(),
                e.map(|e| e.s1.to_string()).unwrap_or_default(),
                opt_num(e.map(|e| e.eps)),
                opt_num(e.map(|e| e.bounds.mu_signal_lower)),
                opt_num(e.map(|e| e.bounds.mu_indist_upper)),
                e.map(|e| e.bounds.noise_condition_holds.to_string()).unwrap_or_default(),
                opt_num(r.map(|r| r.beta)),
                opt_num(r.map(|r| r.r_signal_exists)),
                opt_num(r.map(|r| r.r_indist_vanishes)),
            ];
            write_csv(dest, &header, [row])
        }
        Format::Text => {
            let mut text = String::new();
            if let Some(e) = &report.existence {
                text += &format!(
                    "s0 = {}, s1 = {}, eps = {}\n  signal subset exists for mu >= {}\n  indistinguishable subset exists for mu <= {}\n  noise condition log s1 <= (1 - eps) log s0: {}\n",
                    e.s0,
                    e.s1,
                    e.eps,
                    num(e.bounds.mu_signal_lower),
                    num(e.bounds.mu_indist_upper),
                    e.bounds.noise_condition_holds
                );
            }
            if let Some(r) = &report.recovery {
                text += &format!(
                    "beta = {}\n  recovery region ({}, {})\n",
                    r.beta,
                    num(r.r_signal_exists),
                    num(r.r_indist_vanishes)
                );
            }
            if let Some(c) = &report.calibration {
                text += &format!(
                    "n = {}, r = {}: pi = {}, mu = {}\n  signal subset {}, indistinguishable subset {}\n",
                    c.n,
                    c.r,
                    num(c.pi),
                    num(c.mu),
                    if c.regime.signal_subset { "exists" } else { "absent" },
                    if c.regime.indistinguishable_subset { "exists" } else { "absent" },
                );
            }
            let mut w = sink(dest)?;
            w.write_all(text.as_bytes())
                .and_then(|_| w.flush())
                .map_err(|e| CliError::io("write failed", e))
        }
    }
}
