//! Seeded Monte Carlo harness: normal-mixture generators, FP/FN bookkeeping
//! against known labels, replication loops and median/spread summaries.
//!
//! Every replication draws from its own ChaCha20 stream seeded with
//! `scenario.seed + rep` (wrapping), through `SeedableRng::seed_from_u64`.
//! Within a replication the draws happen in a fixed order: signal positions,
//! then the `n` standard normal innovations, then heterogeneous positions and
//! their Gamma scales.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::baselines::{adaptive_fdr, bh_fdr};
use crate::error::{Error, Result};
use crate::proportion::estimate_pi_mr;
use crate::sample::{Label, PValueSample};
use crate::stats_math::{std_normal_sf, Probability};
use crate::thresholds::{categorize, true_separations, ProportionSource, TltConfig, TolerancePreset};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseModel {
    UnitNormal,
    /// A random `hetero_fraction` of the observations, all drawn from the
    /// noise positions, get their own `sigma ~ Gamma(shape 2, scale theta)`.
    HeteroGamma { theta: f64, hetero_fraction: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dependence {
    Independent,
    /// Stationary AR(1) with lag-one correlation `a`.
    Ar1 { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    pub n: usize,
    pub pi: f64,
    pub mu: f64,
    pub noise_model: NoiseModel,
    pub dependence: Dependence,
    pub seed: u64,
}

fn round_count(fraction: f64, n: usize) -> usize {
    (fraction * n as f64).round() as usize
}

impl Scenario {
    pub fn new(
        n: usize,
        pi: f64,
        mu: f64,
        noise_model: NoiseModel,
        dependence: Dependence,
        seed: u64,
    ) -> Result<Self> {
        let s = Self {
            n,
            pi,
            mu,
            noise_model,
            dependence,
            seed,
        };
        s.validate()?;
        Ok(s)
    }

    /// Independent unit-normal noise.
    pub fn basic(n: usize, pi: f64, mu: f64, seed: u64) -> Result<Self> {
        Self::new(n, pi, mu, NoiseModel::UnitNormal, Dependence::Independent, seed)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Input(msg));
        if self.n == 0 {
            return bad("scenario needs n >= 1".into());
        }
        if !(self.pi > 0.0 && self.pi < 1.0) {
            return bad(format!("pi must be in (0, 1), got {}", self.pi));
        }
        if self.pi * (self.n as f64) < 1.0 {
            return bad(format!("pi * n must be at least 1, got {}", self.pi * self.n as f64));
        }
        if !self.mu.is_finite() {
            return bad(format!("mu must be finite, got {}", self.mu));
        }
        if let NoiseModel::HeteroGamma {
            theta,
            hetero_fraction,
        } = self.noise_model
        {
            if !(theta > 0.0 && theta.is_finite()) {
                return bad(format!("theta must be positive, got {theta}"));
            }
            if !(0.0..1.0).contains(&hetero_fraction) {
                return bad(format!("hetero_fraction must be in [0, 1), got {hetero_fraction}"));
            }
            if round_count(hetero_fraction, self.n) > self.n - self.signal_count() {
                return bad("more heterogeneous observations than noise positions".into());
            }
        }
        if let Dependence::Ar1 { a } = self.dependence {
            if !(0.0..1.0).contains(&a) {
                return bad(format!("AR(1) coefficient must be in [0, 1), got {a}"));
            }
        }
        Ok(())
    }

    /// `round(pi * n)`.
    pub fn signal_count(&self) -> usize {
        round_count(self.pi, self.n).min(self.n)
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn replication_seed(&self, rep: usize) -> u64 {
        self.seed.wrapping_add(rep as u64)
    }
}

/// `x_0 = z_0`, `x_i = a x_{i-1} + sqrt(1 - a^2) z_i`. Unit marginal variance
/// when the `z_i` are standard normal.
pub fn ar1_path(innovations: &[f64], a: f64) -> Vec<f64> {
    let scale = (1.0 - a * a).sqrt();
    let mut out = Vec::with_capacity(innovations.len());
    let mut prev = 0.0;
    for (i, &z) in innovations.iter().enumerate() {
        let x = if i == 0 { z } else { a * prev + scale * z };
        out.push(x);
        prev = x;
    }
    out
}

/// Raw observations and labels for one draw.
pub fn generate_observations(scenario: &Scenario) -> Result<(Vec<f64>, Vec<Label>)> {
    scenario.validate()?;
    let mut rng = ChaCha20Rng::seed_from_u64(scenario.seed);
    Ok(draw(scenario, &mut rng))
}

fn draw<R: Rng>(scenario: &Scenario, rng: &mut R) -> (Vec<f64>, Vec<Label>) {
    let n = scenario.n;
    let k = scenario.signal_count();

    let mut labels = vec![Label::Noise; n];
    for i in index::sample(rng, n, k) {
        labels[i] = Label::Signal;
    }

    let z: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    let mut x = match scenario.dependence {
        Dependence::Independent => z,
        Dependence::Ar1 { a } => ar1_path(&z, a),
    };

    if let NoiseModel::HeteroGamma {
        theta,
        hetero_fraction,
    } = scenario.noise_model
    {
        let noise: Vec<usize> = (0..n).filter(|&i| labels[i] == Label::Noise).collect();
        let h = round_count(hetero_fraction, n);
        let gamma = Gamma::new(2.0, theta).expect("theta validated positive");
        for pick in index::sample(rng, noise.len(), h) {
            x[noise[pick]] *= gamma.sample(rng);
        }
    }

    for (xi, &l) in x.iter_mut().zip(&labels) {
        if l == Label::Signal {
            *xi += scenario.mu;
        }
    }
    (x, labels)
}

/// Labelled upper-tail p-values `1 - Φ(x)` for one draw.
pub fn generate(scenario: &Scenario) -> Result<PValueSample> {
    let (x, labels) = generate_observations(scenario)?;
    let p = x
        .iter()
        .map(|&v| std_normal_sf(v).map(Probability::get))
        .collect::<Result<Vec<_>>>()?;
    PValueSample::with_labels(p, labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RunMetrics {
    pub cutoff: usize,
    pub fp: usize,
    pub fn_: usize,
}

/// FP and FN when the top `cutoff_rank` p-values are selected.
pub fn evaluate_run(sample: &PValueSample, cutoff_rank: usize) -> Result<RunMetrics> {
    let labels = sample.sorted_labels()?;
    metrics_from_sorted(&labels, cutoff_rank)
}

fn metrics_from_sorted(sorted_labels: &[Label], cutoff: usize) -> Result<RunMetrics> {
    if cutoff > sorted_labels.len() {
        return Err(Error::Input(format!(
            "cutoff {cutoff} exceeds sample size {}",
            sorted_labels.len()
        )));
    }
    let (head, tail) = sorted_labels.split_at(cutoff);
    Ok(RunMetrics {
        cutoff,
        fp: head.iter().filter(|&&l| l == Label::Noise).count(),
        fn_: tail.iter().filter(|&&l| l == Label::Signal).count(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Procedure {
    DStar,
    BhFdr,
    AdaptiveFdr,
    DStarStar,
}

impl Procedure {
    pub const ALL: [Procedure; 4] = [
        Procedure::DStar,
        Procedure::BhFdr,
        Procedure::AdaptiveFdr,
        Procedure::DStarStar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Procedure::DStar => "d_star",
            Procedure::BhFdr => "t_fdr",
            Procedure::AdaptiveFdr => "t_afdr",
            Procedure::DStarStar => "d_star_star",
        }
    }
}

/// How spread around the median is summarized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spread {
    /// Mean of `|x - median|`.
    #[default]
    MeanAbsoluteDeviation,
    /// Median of `|x - median|`, unscaled.
    MedianAbsoluteDeviation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentSettings {
    pub tolerance: TolerancePreset,
    pub proportion_source: ProportionSource,
    pub fdr_alpha: Probability,
    pub spread: Spread,
}

impl Default for ExperimentSettings {
    fn default() -> Self {
        Self {
            tolerance: TolerancePreset::HalfInverseLog,
            proportion_source: ProportionSource::MrEstimator,
            fdr_alpha: Probability::new(0.05).expect("constant"),
            spread: Spread::MeanAbsoluteDeviation,
        }
    }
}

/// Everything recorded for one replication.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationRecord {
    pub rep: usize,
    pub seed: u64,
    pub pi_hat: f64,
    pub true_d_star: usize,
    pub true_d_star_star: usize,
    pub d_star: RunMetrics,
    pub bh_fdr: RunMetrics,
    pub adaptive_fdr: RunMetrics,
    pub d_star_star: RunMetrics,
}

impl ReplicationRecord {
    pub fn metrics(&self, procedure: Procedure) -> RunMetrics {
        match procedure {
            Procedure::DStar => self.d_star,
            Procedure::BhFdr => self.bh_fdr,
            Procedure::AdaptiveFdr => self.adaptive_fdr,
            Procedure::DStarStar => self.d_star_star,
        }
    }
}

/// Generates one replication and runs all four procedures on it.
pub fn run_replication(
    scenario: &Scenario,
    rep: usize,
    settings: &ExperimentSettings,
) -> Result<ReplicationRecord> {
    let seed = scenario.replication_seed(rep);
    let sample = generate(&scenario.with_seed(seed))?;
    let labels = sample.sorted_labels()?;
    let n = sample.len();

    let config = TltConfig::with_preset(n, settings.tolerance, settings.proportion_source)?;
    let tlt = categorize(&sample, &config)?;
    let pi_hat = estimate_pi_mr(&sample)?.pi_hat;
    let bh = bh_fdr(&sample, settings.fdr_alpha);
    let afdr = adaptive_fdr(&sample, settings.fdr_alpha, pi_hat)?;
    let (true_d_star, true_d_star_star) = true_separations(&sample)?;

    Ok(ReplicationRecord {
        rep,
        seed,
        pi_hat,
        true_d_star,
        true_d_star_star,
        d_star: metrics_from_sorted(&labels, tlt.d_star)?,
        bh_fdr: metrics_from_sorted(&labels, bh.cutoff_rank)?,
        adaptive_fdr: metrics_from_sorted(&labels, afdr.cutoff_rank)?,
        d_star_star: metrics_from_sorted(&labels, tlt.d_star_star)?,
    })
}

/// All replications of one scenario, in replication order.
pub fn run_replications(
    scenario: &Scenario,
    reps: usize,
    settings: &ExperimentSettings,
) -> Result<Vec<ReplicationRecord>> {
    if reps == 0 {
        return Err(Error::Input("reps must be at least 1".into()));
    }
    scenario.validate()?;
    (0..reps)
        .into_par_iter()
        .map(|rep| run_replication(scenario, rep, settings))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub median: f64,
    pub spread: f64,
}

fn median_of_sorted(sorted: &[f64]) -> f64 {
    let m = sorted.len();
    if m % 2 == 1 {
        sorted[m / 2]
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
    }
}

/// Median and spread of a non-empty list of values.
pub fn summarize(values: &[f64], spread: Spread) -> Summary {
    assert!(!values.is_empty(), "summarize needs at least one value");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = median_of_sorted(&sorted);
    let mut dev: Vec<f64> = sorted.iter().map(|v| (v - median).abs()).collect();
    let spread = match spread {
        Spread::MeanAbsoluteDeviation => dev.iter().sum::<f64>() / dev.len() as f64,
        Spread::MedianAbsoluteDeviation => {
            dev.sort_by(f64::total_cmp);
            median_of_sorted(&dev)
        }
    };
    Summary { median, spread }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProcedureSummary {
    pub procedure: Procedure,
    pub cutoff: Summary,
    pub fp: Summary,
    pub fn_: Summary,
}

/// One scenario, keyed by the parameter that varies across rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub key: String,
    pub value: f64,
    pub scenario: Scenario,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub key: String,
    pub value: f64,
    pub scenario: Scenario,
    pub reps: usize,
    pub procedures: Vec<ProcedureSummary>,
}

impl SummaryRow {
    pub fn get(&self, procedure: Procedure) -> &ProcedureSummary {
        self.procedures
            .iter()
            .find(|p| p.procedure == procedure)
            .expect("every procedure is summarized")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryTable {
    pub spread: Spread,
    pub rows: Vec<SummaryRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentOutput {
    pub table: SummaryTable,
    /// Per-row replication records, in row and replication order.
    pub raw: Vec<Vec<ReplicationRecord>>,
}

pub fn summarize_records(
    row: &ExperimentRow,
    records: &[ReplicationRecord],
    spread: Spread,
) -> SummaryRow {
    let procedures = Procedure::ALL
        .iter()
        .map(|&procedure| {
            let pick = |f: fn(&RunMetrics) -> usize| {
                let v: Vec<f64> = records
                    .iter()
                    .map(|r| f(&r.metrics(procedure)) as f64)
                    .collect();
                summarize(&v, spread)
            };
            ProcedureSummary {
                procedure,
                cutoff: pick(|m| m.cutoff),
                fp: pick(|m| m.fp),
                fn_: pick(|m| m.fn_),
            }
        })
        .collect();
    SummaryRow {
        key: row.key.clone(),
        value: row.value,
        scenario: row.scenario,
        reps: records.len(),
        procedures,
    }
}

pub fn run_experiment(
    rows: &[ExperimentRow],
    reps: usize,
    settings: &ExperimentSettings,
) -> Result<ExperimentOutput> {
    let mut summary_rows = Vec::with_capacity(rows.len());
    let mut raw = Vec::with_capacity(rows.len());
    for row in rows {
        let records = run_replications(&row.scenario, reps, settings)?;
        summary_rows.push(summarize_records(row, &records, settings.spread));
        raw.push(records);
    }
    Ok(ExperimentOutput {
        table: SummaryTable {
            spread: settings.spread,
            rows: summary_rows,
        },
        raw,
    })
}

/// A named table layout with its own tolerance schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub rows: Vec<ExperimentRow>,
    pub tolerance: TolerancePreset,
}

pub const PRESET_NAMES: [&str; 4] = ["table1", "table2", "table3", "table5"];

fn row(key: &str, value: f64, scenario: Result<Scenario>) -> Result<ExperimentRow> {
    Ok(ExperimentRow {
        key: key.to_string(),
        value,
        scenario: scenario?,
    })
}

/// Signal strength sweep: `n = 10_000`, `pi = 0.01`.
pub fn table1(seed: u64) -> Result<Preset> {
    let rows = [2.5, 3.5, 4.5, 5.5]
        .into_iter()
        .map(|mu| row("mu", mu, Scenario::basic(10_000, 0.01, mu, seed)))
        .collect::<Result<_>>()?;
    Ok(Preset {
        name: "table1",
        rows,
        tolerance: TolerancePreset::HalfInverseLog,
    })
}

/// Signal count sweep at `mu = 3`.
pub fn table2(seed: u64) -> Result<Preset> {
    let rows = [100usize, 500, 1000, 2000]
        .into_iter()
        .map(|s1| {
            row(
                "signals",
                s1 as f64,
                Scenario::basic(10_000, s1 as f64 / 10_000.0, 3.0, seed),
            )
        })
        .collect::<Result<_>>()?;
    Ok(Preset {
        name: "table2",
        rows,
        tolerance: TolerancePreset::HalfInverseLog,
    })
}

/// Heterogeneous noise: 1% signals, 10% of observations with Gamma scales.
pub fn table3(seed: u64, mu: f64) -> Result<Preset> {
    let rows = [0.5, 1.0, 1.5, 2.0]
        .into_iter()
        .map(|theta| {
            row(
                "theta",
                theta,
                Scenario::new(
                    10_000,
                    0.01,
                    mu,
                    NoiseModel::HeteroGamma {
                        theta,
                        hetero_fraction: 0.1,
                    },
                    Dependence::Independent,
                    seed,
                ),
            )
        })
        .collect::<Result<_>>()?;
    Ok(Preset {
        name: "table3",
        rows,
        tolerance: TolerancePreset::HalfInverseLog,
    })
}

pub const TABLE3_DEFAULT_MU: f64 = 3.5;

/// AR(1) noise at `n = 1000`, `pi = 0.05`, `mu = 3`, tolerance `1 / log n`.
pub fn table5(seed: u64) -> Result<Preset> {
    let rows = [0.0, 0.5, 0.7, 0.9]
        .into_iter()
        .map(|a| {
            row(
                "a",
                a,
                Scenario::new(
                    1000,
                    0.05,
                    3.0,
                    NoiseModel::UnitNormal,
                    Dependence::Ar1 { a },
                    seed,
                ),
            )
        })
        .collect::<Result<_>>()?;
    Ok(Preset {
        name: "table5",
        rows,
        tolerance: TolerancePreset::InverseLog,
    })
}

/// Looks a preset up by name. `mu` only affects `table3`.
pub fn preset(name: &str, seed: u64, mu: Option<f64>) -> Result<Preset> {
    match name {
        "table1" => table1(seed),
        "table2" => table2(seed),
        "table3" => table3(seed, mu.unwrap_or(TABLE3_DEFAULT_MU)),
        "table5" => table5(seed),
        other => Err(Error::Input(format!(
            "unknown preset '{other}', expected one of {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}
