use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use tlt_core::proportion::MIN_SAMPLE_FOR_ESTIMATE;
use tlt_core::thresholds::ProportionUsed;
use tlt_core::{
    adaptive_fdr, bh_fdr, categorize, estimate_pi_mr, PValueSample, Probability, Subset, TltConfig,
    TolerancePreset,
};

use crate::error::CliResult;
use crate::output::{num, opt_num, write_csv, write_json, SCHEMA_VERSION};
use crate::{parse_bounds, parse_delimiter, proportion_source, Format, LevelArgs, OutputArgs};

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// P-value file ('-' for standard input): one value per line, or a
    /// delimited table together with --column.
    input: PathBuf,
    /// Header name of the p-value column.
    #[arg(long)]
    column: Option<String>,
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    delimiter: u8,
    /// Prior bounds PI_MINUS PI_PLUS on the signal proportion, used in place
    /// of the estimate.
    #[arg(long, num_args = 2, value_names = ["PI_MINUS", "PI_PLUS"], allow_negative_numbers = true)]
    bounds: Option<Vec<f64>>,
    #[command(flatten)]
    levels: LevelArgs,
    /// Level for the BH and adaptive FDR cutoffs.
    #[arg(long, default_value_t = 0.05)]
    fdr_alpha: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
    /// Also write the per-item subset table (index, p_value, rank, subset) as CSV.
    #[arg(long)]
    assignments: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Item {
    index: usize,
    line: u64,
    p_value: f64,
    rank: usize,
    subset: Subset,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    command: &'static str,
    n: usize,
    mode: &'static str,
    pi_hat: Option<f64>,
    pi_minus: Option<f64>,
    pi_plus: Option<f64>,
    k_start: usize,
    alpha_n: f64,
    beta_n: f64,
    d_star: usize,
    d_star_star: usize,
    fdr_alpha: f64,
    t_fdr: usize,
    t_afdr: Option<usize>,
    counts: Counts,
    items: Vec<Item>,
}

#[derive(Debug, Serialize)]
struct Counts {
    signal: usize,
    indistinguishable: usize,
    noise: usize,
}

pub fn run(args: AnalyzeArgs) -> CliResult<()> {
    let bounds = parse_bounds(args.bounds.as_deref())?;
    let fdr_alpha = Probability::open(args.fdr_alpha).map_err(|_| {
        crate::error::CliError::Usage(format!("--fdr-alpha must lie in (0, 1), got {}", args.fdr_alpha))
    })?;
    let (values, lines) = crate::input::read_p_values(&args.input, args.column.as_deref(), args.delimiter)?;
    let sample = PValueSample::new(values)?;
    let n = sample.len();

    let (alpha_n, beta_n) = args.levels.resolve(n, TolerancePreset::HalfInverseLog)?;
    let config = TltConfig {
        alpha_n,
        beta_n,
        proportion_source: proportion_source(bounds),
    };
    let result = categorize(&sample, &config)?;

    let pi_hat = match &result.proportion {
        ProportionUsed::Estimated(e) => Some(e.pi_hat),
        ProportionUsed::Bounds(_) if n >= MIN_SAMPLE_FOR_ESTIMATE => Some(estimate_pi_mr(&sample)?.pi_hat),
        ProportionUsed::Bounds(_) => None,
    };
    let t_fdr = bh_fdr(&sample, fdr_alpha).cutoff_rank;
    let t_afdr = pi_hat
        .map(|p| adaptive_fdr(&sample, fdr_alpha, p).map(|c| c.cutoff_rank))
        .transpose()?;

    let assignment = result.partition.assignment();
    let mut rank = vec![0; n];
    for (r, &i) in sample.order().iter().enumerate() {
        rank[i] = r + 1;
    }
    let items: Vec<Item> = (0..n)
        .map(|i| Item {
            index: i + 1,
            line: lines[i],
            p_value: sample.values()[i],
            rank: rank[i],
            subset: assignment[i],
        })
        .collect();

    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        n,
        mode: if bounds.is_some() { "bounds" } else { "estimate" },
        pi_hat,
        pi_minus: bounds.map(|b| b.pi_minus()),
        pi_plus: bounds.map(|b| b.pi_plus()),
        k_start: result.k_start,
        alpha_n: alpha_n.get(),
        beta_n: beta_n.get(),
        d_star: result.d_star,
        d_star_star: result.d_star_star,
        fdr_alpha: fdr_alpha.get(),
        t_fdr,
        t_afdr,
        counts: Counts {
            signal: result.partition.signal.len(),
            indistinguishable: result.partition.indistinguishable.len(),
            noise: result.partition.noise.len(),
        },
        items,
    };

    if let Some(path) = &args.assignments {
        write_items(Some(path), &report.items)?;
    }
    let out = args.out.output.as_deref();
    match args.format {
        Format::Json => write_json(out, &report),
        Format::Csv => write_summary_csv(out, &report),
        Format::Text => write_text(out, &report),
    }
}

fn write_items(path: Option<&Path>, items: &[Item]) -> CliResult<()> {
    let header = ["index", "p_value", "rank", "subset"].map(String::from);
    write_csv(
        path,
        &header,
        items.iter().map(|it| {
            [
                it.index.to_string(),
                num(it.p_value),
                it.rank.to_string(),
                it.subset.as_str().to_string(),
            ]
        }),
    )
}

fn write_summary_csv(path: Option<&Path>, r: &Report) -> CliResult<()> {
    let header = [
        "n", "mode", "pi_hat", "pi_minus", "pi_plus", "k_start", "alpha_n", "beta_n", "d_star",
        "d_star_star", "fdr_alpha", "t_fdr", "t_afdr",
    ]
    .map(String::from);
    let row = vec![
        r.n.to_string(),
        r.mode.to_string(),
        opt_num(r.pi_hat),
        opt_num(r.pi_minus),
        opt_num(r.pi_plus),
        r.k_start.to_string(),
        num(r.alpha_n),
        num(r.beta_n),
        r.d_star.to_string(),
        r.d_star_star.to_string(),
        num(r.fdr_alpha),
        r.t_fdr.to_string(),
        r.t_afdr.map(|t| t.to_string()).unwrap_or_default(),
    ];
    write_csv(path, &header, [row])
}

fn write_text(path: Option<&Path>, r: &Report) -> CliResult<()> {
    use std::io::Write;
    let mut w = crate::output::sink(path)?;
    let mut text = format!("n            {}\n", r.n);
    if let (Some(lo), Some(hi)) = (r.pi_minus, r.pi_plus) {
        text += &format!("bounds       [{lo}, {hi}]\n");
    }
    if let Some(p) = r.pi_hat {
        text += &format!("pi_hat       {p:.6}\n");
    }
    text += &format!(
        "alpha_n      {:.6}\nbeta_n       {:.6}\nd_star       {}\nd_star_star  {}\nt_fdr        {}\n",
        r.alpha_n, r.beta_n, r.d_star, r.d_star_star, r.t_fdr
    );
    if let Some(t) = r.t_afdr {
        text += &format!("t_afdr       {t}\n");
    }
    text += &format!(
        "subsets      {} signal, {} indistinguishable, {} noise\n",
        r.counts.signal, r.counts.indistinguishable, r.counts.noise
    );
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| crate::error::CliError::io("write failed", e))
}
