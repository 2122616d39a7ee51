use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;

use tlt_core::simulation::{
    preset, run_experiment, Dependence, ExperimentOutput, ExperimentRow, ExperimentSettings,
    NoiseModel, Procedure, Scenario, Spread, SummaryTable, PRESET_NAMES,
};
use tlt_core::{Probability, TolerancePreset};

use crate::error::{CliError, CliResult};
use crate::output::{num, write_csv, write_json, SCHEMA_VERSION};
use crate::{parse_bounds, proportion_source, Format, OutputArgs, TolerancePresetArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpreadArg {
    /// Mean absolute deviation about the median.
    Mean,
    /// Median absolute deviation about the median, unscaled.
    Median,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Named table layout: table1, table2, table3 or table5. Without a
    /// preset, give --n, --pi and --mu.
    #[arg(long)]
    preset: Option<String>,
    /// Base seed; replication r uses seed + r.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    /// Signal mean (overrides the table3 default; required without a preset).
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    pi: Option<f64>,
    /// Gamma scale for heterogeneous noise.
    #[arg(long, requires = "hetero_fraction")]
    theta: Option<f64>,
    /// Share of observations with heterogeneous noise.
    #[arg(long, requires = "theta")]
    hetero_fraction: Option<f64>,
    /// AR(1) coefficient of the noise.
    #[arg(long)]
    ar: Option<f64>,
    /// Tolerance schedule for alpha_n and beta_n (defaults to the preset's).
    #[arg(long, value_enum)]
    tolerance: Option<TolerancePresetArg>,
    /// Run the bounded-prior variant with PI_MINUS PI_PLUS.
    #[arg(long, num_args = 2, value_names = ["PI_MINUS", "PI_PLUS"], allow_negative_numbers = true)]
    bounds: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.05)]
    fdr_alpha: f64,
    #[arg(long, value_enum, default_value = "mean")]
    spread: SpreadArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
    /// Write every replication's cutoffs, FP and FN as CSV.
    #[arg(long)]
    raw: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn custom_rows(args: &SimulateArgs, seed: u64) -> CliResult<Vec<ExperimentRow>> {
    let n = args.n.ok_or_else(|| usage("--n is required without --preset"))?;
    let pi = args.pi.ok_or_else(|| usage("--pi is required without --preset"))?;
    let mu = args.mu.ok_or_else(|| usage("--mu is required without --preset"))?;
    let noise_model = match (args.theta, args.hetero_fraction) {
        (Some(theta), Some(hetero_fraction)) => NoiseModel::HeteroGamma {
            theta,
            hetero_fraction,
        },
        _ => NoiseModel::UnitNormal,
    };
    let dependence = args.ar.map_or(Dependence::Independent, |a| Dependence::Ar1 { a });
    let scenario = Scenario::new(n, pi, mu, noise_model, dependence, seed).map_err(|e| usage(e.to_string()))?;
    Ok(vec![ExperimentRow {
        key: "mu".into(),
        value: mu,
        scenario,
    }])
}

pub fn run(args: SimulateArgs) -> CliResult<()> {
    let seed = args
        .seed
        .ok_or_else(|| usage("--seed is required so that runs can be reproduced"))?;
    if args.reps == 0 {
        return Err(usage("--reps must be at least 1"));
    }
    let fdr_alpha = Probability::open(args.fdr_alpha)
        .map_err(|_| usage(format!("--fdr-alpha must lie in (0, 1), got {}", args.fdr_alpha)))?;
    let bounds = parse_bounds(args.bounds.as_deref())?;

    let (name, rows, default_tolerance) = match &args.preset {
        Some(name) => {
            let p = preset(name, seed, args.mu).map_err(|_| {
                usage(format!(
                    "unknown preset '{name}'; available presets: {}",
                    PRESET_NAMES.join(", ")
                ))
            })?;
            if args.n.is_some() || args.pi.is_some() || args.theta.is_some() || args.ar.is_some() {
                return Err(usage("--n, --pi, --theta and --ar cannot be combined with --preset"));
            }
            (p.name.to_string(), p.rows, p.tolerance)
        }
        None => ("custom".to_string(), custom_rows(&args, seed)?, TolerancePreset::HalfInverseLog),
    };

    let settings = ExperimentSettings {
        tolerance: args.tolerance.map_or(default_tolerance, Into::into),
        proportion_source: proportion_source(bounds),
        fdr_alpha,
        spread: match args.spread {
            SpreadArg::Mean => Spread::MeanAbsoluteDeviation,
            SpreadArg::Median => Spread::MedianAbsoluteDeviation,
        },
    };
    let out = run_experiment(&rows, args.reps, &settings)?;

    if let Some(path) = &args.raw {
        write_raw(path, &out)?;
    }
    let dest = args.out.output.as_deref();
    match args.format {
        Format::Csv | Format::Text => write_table_csv(dest, &out.table),
        Format::Json => write_json(
            dest,
            &Report {
                schema_version: SCHEMA_VERSION,
                command: "simulate",
                preset: &name,
                seed,
                reps: args.reps,
                tolerance: format!("{:?}", settings.tolerance),
                fdr_alpha: fdr_alpha.get(),
                table: &out.table,
            },
        ),
    }
}

#[derive(Serialize)]
struct Report<'a> {
    schema_version: u32,
    command: &'static str,
    preset: &'a str,
    seed: u64,
    reps: usize,
    tolerance: String,
    fdr_alpha: f64,
    table: &'a SummaryTable,
}

fn metric_columns() -> Vec<String> {
    let mut cols = Vec::new();
    for p in Procedure::ALL {
        for m in ["cutoff", "fp", "fn"] {
            cols.push(format!("{}_{m}_median", p.as_str()));
            cols.push(format!("{}_{m}_mad", p.as_str()));
        }
    }
    cols
}

fn write_table_csv(path: Option<&Path>, table: &SummaryTable) -> CliResult<()> {
    let mut header = vec!["key".to_string(), "value".to_string(), "reps".to_string()];
    header.extend(metric_columns());
    let rows = table.rows.iter().map(|row| {
        let mut cells = vec![row.key.clone(), num(row.value), row.reps.to_string()];
        for p in Procedure::ALL {
            let s = row.get(p);
            for m in [s.cutoff, s.fp, s.fn_] {
                cells.push(num(m.median));
                cells.push(num(m.spread));
            }
        }
        cells
    });
    write_csv(path, &header, rows)
}

fn write_raw(path: &Path, out: &ExperimentOutput) -> CliResult<()> {
    let mut header: Vec<String> = [
        "key", "value", "rep", "seed", "pi_hat", "true_d_star", "true_d_star_star",
    ]
    .map(String::from)
    .to_vec();
    for p in Procedure::ALL {
        for m in ["cutoff", "fp", "fn"] {
            header.push(format!("{}_{m}", p.as_str()));
        }
    }
    let rows = out.table.rows.iter().zip(&out.raw).flat_map(|(row, recs)| {
        recs.iter().map(move |r| {
            let mut cells = vec![
                row.key.clone(),
                num(row.value),
                r.rep.to_string(),
                r.seed.to_string(),
                num(r.pi_hat),
                r.true_d_star.to_string(),
                r.true_d_star_star.to_string(),
            ];
            for p in Procedure::ALL {
                let m = r.metrics(p);
                cells.extend([m.cutoff, m.fp, m.fn_].map(|v| v.to_string()));
            }
            cells
        })
    });
    write_csv(Some(path), &header, rows)
}
