use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;

use tlt_core::interval_scan::{run_scan, ScanOutput, ScanSettings, Tail, Track, DEFAULT_MAX_LEN};
use tlt_core::{PriorBounds, Subset, TolerancePreset};

use crate::error::{CliError, CliResult};
use crate::output::{num, write_csv, write_json, SCHEMA_VERSION};
use crate::{parse_bounds, parse_delimiter, Format, LevelArgs, OutputArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailArg {
    /// Negative departures (deletions).
    Lower,
    /// Positive departures (duplications).
    Upper,
    Both,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Track file ('-' for standard input): rows of 'position,value' or one
    /// value per line; a non-numeric first row is read as a header.
    input: PathBuf,
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    delimiter: u8,
    /// Longest interval, in probes.
    #[arg(long = "max-len", default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
    /// Prior bounds PI_MINUS PI_PLUS on the share of real intervals.
    #[arg(long, num_args = 2, value_names = ["PI_MINUS", "PI_PLUS"], default_values_t = [0.0, 0.005], allow_negative_numbers = true)]
    bounds: Vec<f64>,
    #[command(flatten)]
    levels: LevelArgs,
    #[arg(long, value_enum, default_value = "lower")]
    tail: TailArg,
    /// Use the values as they are instead of median/MAD standardizing them.
    #[arg(long)]
    no_normalize: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
    /// Also write the summary record (d_star, d_star_star, n_kept) to this file,
    /// as CSV or JSON following --format.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Interval {
    rank: usize,
    start: i64,
    end: i64,
    probes: usize,
    statistic: f64,
    p_value: f64,
    subset: Subset,
}

#[derive(Debug, Serialize)]
struct Summary {
    schema_version: u32,
    command: &'static str,
    n_probes: usize,
    n_intervals: usize,
    n_kept: usize,
    max_len: usize,
    pi_minus: f64,
    pi_plus: f64,
    alpha_n: f64,
    beta_n: f64,
    d_star: usize,
    d_star_star: usize,
}

#[derive(Debug, Serialize)]
struct Report {
    #[serde(flatten)]
    summary: Summary,
    intervals: Vec<Interval>,
}

pub fn run(args: ScanArgs) -> CliResult<()> {
    if args.max_len == 0 {
        return Err(CliError::Usage("--max-len must be at least 1".into()));
    }
    let bounds: PriorBounds = parse_bounds(Some(&args.bounds))?.expect("two values given");
    let (positions, values) = crate::input::read_track(&args.input, args.delimiter)?;
    let track = Track::new(positions, values)?;

    let (alpha_n, beta_n) = args.levels.fixed()?;
    let settings = ScanSettings {
        max_len: args.max_len,
        tail: match args.tail {
            TailArg::Lower => Tail::Lower,
            TailArg::Upper => Tail::Upper,
            TailArg::Both => Tail::Both,
        },
        normalize: !args.no_normalize,
        bounds,
        alpha_n,
        beta_n,
        tolerance: args.levels.tolerance.map_or(TolerancePreset::HalfInverseLog, Into::into),
    };
    let out = run_scan(&track, &settings)?;
    let report = build_report(&track, &args, &out);

    if let Some(path) = &args.summary {
        match args.format {
            Format::Json => write_json(Some(path), &report.summary)?,
            _ => write_summary_csv(Some(path), &report.summary)?,
        }
    }
    let dest = args.out.output.as_deref();
    match args.format {
        Format::Json => write_json(dest, &report),
        Format::Csv | Format::Text => {
            eprintln!(
                "tlt scan: n_kept={} d_star={} d_star_star={}",
                report.summary.n_kept, report.summary.d_star, report.summary.d_star_star
            );
            write_intervals_csv(dest, &report.intervals)
        }
    }
}

fn build_report(track: &Track, args: &ScanArgs, out: &ScanOutput) -> Report {
    let pos = track.positions();
    let assignment = out.result.partition.assignment();
    let intervals = out
        .kept
        .iter()
        .enumerate()
        .map(|(r, k)| Interval {
            rank: r + 1,
            start: pos[k.start],
            end: pos[k.end],
            probes: k.len(),
            statistic: k.statistic,
            p_value: k.p_value.get(),
            subset: assignment[r],
        })
        .collect();
    Report {
        summary: Summary {
            schema_version: SCHEMA_VERSION,
            command: "scan",
            n_probes: track.len(),
            n_intervals: out.n_intervals,
            n_kept: out.kept.len(),
            max_len: args.max_len,
            pi_minus: args.bounds[0],
            pi_plus: args.bounds[1],
            alpha_n: out.result.alpha_n.get(),
            beta_n: out.result.beta_n.get(),
            d_star: out.result.d_star,
            d_star_star: out.result.d_star_star,
        },
        intervals,
    }
}

fn write_intervals_csv(path: Option<&Path>, intervals: &[Interval]) -> CliResult<()> {
    let header = ["rank", "start", "end", "probes", "statistic", "p_value", "subset"].map(String::from);
    write_csv(
        path,
        &header,
        intervals.iter().map(|i| {
            [
                i.rank.to_string(),
                i.start.to_string(),
                i.end.to_string(),
                i.probes.to_string(),
                num(i.statistic),
                num(i.p_value),
                i.subset.as_str().to_string(),
            ]
        }),
    )
}

fn write_summary_csv(path: Option<&Path>, s: &Summary) -> CliResult<()> {
    let header = [
        "n_probes", "n_intervals", "n_kept", "max_len", "pi_minus", "pi_plus", "alpha_n", "beta_n",
        "d_star", "d_star_star",
    ]
    .map(String::from);
    let row = [
        s.n_probes.to_string(),
        s.n_intervals.to_string(),
        s.n_kept.to_string(),
        s.max_len.to_string(),
        num(s.pi_minus),
        num(s.pi_plus),
        num(s.alpha_n),
        num(s.beta_n),
        s.d_star.to_string(),
        s.d_star_star.to_string(),
    ];
    write_csv(path, &header, [row])
}
