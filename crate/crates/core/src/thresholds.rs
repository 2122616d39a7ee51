//! Two-level thresholding on ranked p-values.
//!
//! The first cut `d*` is an adaptive Bonferroni count. The second cut `d**`
//! walks the order statistics upward from the estimated number of signals
//! until a p-value falls at or below the `beta_n` quantile of the
//! corresponding uniform order statistic of the remaining noise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::proportion::{estimate_pi_mr, validate_bounds, PriorBounds, ProportionEstimate};
use crate::sample::{Label, PValueSample};
use crate::stats_math::{reg_inc_beta, Probability};

/// Where the signal proportion comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProportionSource {
    MrEstimator,
    Bounds(PriorBounds),
}

/// Default tolerance schedules for `alpha_n` and `beta_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TolerancePreset {
    /// `1 / (2 log n)`, about 0.054 at `n = 10_000`.
    #[default]
    HalfInverseLog,
    /// `1 / log n`.
    InverseLog,
}

impl TolerancePreset {
    pub fn value(self, n: usize) -> Result<Probability> {
        let log_n = (n as f64).ln();
        let v = match self {
            TolerancePreset::HalfInverseLog => 1.0 / (2.0 * log_n),
            TolerancePreset::InverseLog => 1.0 / log_n,
        };
        Probability::open(v).map_err(|_| {
            Error::Domain(format!("tolerance preset {self:?} is not in (0, 1) for n = {n}"))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TltConfig {
    pub alpha_n: Probability,
    pub beta_n: Probability,
    pub proportion_source: ProportionSource,
}

impl TltConfig {
    pub fn new(alpha_n: f64, beta_n: f64, proportion_source: ProportionSource) -> Result<Self> {
        Ok(Self {
            alpha_n: Probability::open(alpha_n)?,
            beta_n: Probability::open(beta_n)?,
            proportion_source,
        })
    }

    /// Both tolerances from the same preset for a sample of size `n`.
    pub fn with_preset(
        n: usize,
        preset: TolerancePreset,
        proportion_source: ProportionSource,
    ) -> Result<Self> {
        let t = preset.value(n)?;
        Ok(Self {
            alpha_n: t,
            beta_n: t,
            proportion_source,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subset {
    Signal,
    Indistinguishable,
    Noise,
}

impl Subset {
    pub fn as_str(self) -> &'static str {
        match self {
            Subset::Signal => "signal",
            Subset::Indistinguishable => "indistinguishable",
            Subset::Noise => "noise",
        }
    }
}

/// Original indices in each subset, listed in rank order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetPartition {
    pub signal: Vec<usize>,
    pub indistinguishable: Vec<usize>,
    pub noise: Vec<usize>,
}

impl SubsetPartition {
    fn from_ranks(order: &[usize], d_star: usize, d_star_star: usize) -> Self {
        Self {
            signal: order[..d_star].to_vec(),
            indistinguishable: order[d_star..d_star_star].to_vec(),
            noise: order[d_star_star..].to_vec(),
        }
    }

    /// Subset of each original index.
    pub fn assignment(&self) -> Vec<Subset> {
        let n = self.signal.len() + self.indistinguishable.len() + self.noise.len();
        let mut out = vec![Subset::Noise; n];
        for &i in &self.signal {
            out[i] = Subset::Signal;
        }
        for &i in &self.indistinguishable {
            out[i] = Subset::Indistinguishable;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ProportionUsed {
    Estimated(ProportionEstimate),
    Bounds(PriorBounds),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TltResult {
    pub n: usize,
    pub d_star: usize,
    pub d_star_star: usize,
    /// Proportion that fixes the start of the step-down search (`pi_hat` or `pi_plus`).
    pub pi_used: f64,
    pub k_start: usize,
    pub alpha_n: Probability,
    pub beta_n: Probability,
    pub proportion: ProportionUsed,
    pub partition: SubsetPartition,
}

/// True separation points from labels: `d*` is one less than the rank of the
/// first noise p-value, `d**` is the rank of the last signal.
///
/// With no noise at all `d* = n`; with no signal `d** = 0`.
pub fn true_separations(sample: &PValueSample) -> Result<(usize, usize)> {
    let labels = sample.sorted_labels()?;
    let d_star = labels
        .iter()
        .position(|&l| l == Label::Noise)
        .unwrap_or(labels.len());
    let d_star_star = labels
        .iter()
        .rposition(|&l| l == Label::Signal)
        .map_or(0, |r| r + 1);
    Ok((d_star, d_star_star))
}

fn check_proportion(pi: f64, what: &str) -> Result<()> {
    if (0.0..1.0).contains(&pi) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must lie in [0, 1), got {pi}")))
    }
}

/// Integer part of `pi * n`, used as an index into the order statistics.
///
/// The small offset keeps products such as `0.29 * 100 = 28.999...` from
/// losing a unit to representation error.
pub fn proportion_to_count(pi: f64, n: usize) -> usize {
    ((pi * n as f64 + 1e-9).floor() as usize).min(n)
}

/// Number of sorted p-values strictly below `alpha_n / ((1 - pi) n)`.
pub fn d_star_hat(sample: &PValueSample, pi_for_denominator: f64, alpha_n: Probability) -> Result<usize> {
    check_proportion(pi_for_denominator, "proportion")?;
    let n = sample.len();
    if n == 0 {
        return Ok(0);
    }
    let threshold = alpha_n.get() / ((1.0 - pi_for_denominator) * n as f64);
    Ok(sample.sorted().partition_point(|&p| p < threshold))
}

/// Step-down cut.
///
/// Starts at `k = floor(pi_start * n)`. If `k <= d_star` the result is
/// `d_star`. Otherwise it returns the first rank `k + j`, `j >= 1`, with
/// `p_(k+j) <= F_j^{-1}(beta_n)`, where `F_j` is the law of the `j`-th of
/// `m = n - floor(pi_beta_param * n)` uniforms. The test is carried out as
/// `F_j(p_(k+j)) <= beta_n`, which is equivalent since `F_j` is continuous
/// and strictly increasing. If the ranks or the Beta shape run out first,
/// the result is `n`.
pub fn d_star_star_hat(
    sample: &PValueSample,
    pi_start: f64,
    pi_beta_param: f64,
    beta_n: Probability,
    d_star: usize,
) -> Result<usize> {
    check_proportion(pi_start, "starting proportion")?;
    check_proportion(pi_beta_param, "noise proportion parameter")?;
    let n = sample.len();
    let k = proportion_to_count(pi_start, n);
    if k <= d_star {
        return Ok(d_star);
    }
    let m = n - proportion_to_count(pi_beta_param, n);
    let sorted = sample.sorted();
    let beta = beta_n.get();

    for j in 1..=m.min(n - k) {
        let p = Probability::new(sorted[k + j - 1])?;
        let cdf = reg_inc_beta(j as f64, (m - j + 1) as f64, p)?;
        if cdf.get() <= beta {
            return Ok(k + j);
        }
    }
    Ok(n)
}

/// Runs the full procedure and partitions the sample.
pub fn categorize(sample: &PValueSample, config: &TltConfig) -> Result<TltResult> {
    let n = sample.len();
    if n == 0 {
        return Err(Error::Input("cannot categorize an empty sample".into()));
    }

    // (pi in the d* denominator, pi where the search starts, pi in the Beta law)
    let (pi_lower, pi_start, pi_beta, proportion) = match config.proportion_source {
        ProportionSource::MrEstimator => {
            let est = estimate_pi_mr(sample)?;
            (est.pi_hat, est.pi_hat, est.pi_hat, ProportionUsed::Estimated(est))
        }
        ProportionSource::Bounds(bounds) => {
            let b = validate_bounds(bounds, n)?;
            // The search starts from the upper bound while the noise count in
            // the Beta law uses the lower bound.
            (b.pi_minus(), b.pi_plus(), b.pi_minus(), ProportionUsed::Bounds(b))
        }
    };

    let d_star = d_star_hat(sample, pi_lower, config.alpha_n)?;
    let d_star_star = d_star_star_hat(sample, pi_start, pi_beta, config.beta_n, d_star)?;

    Ok(TltResult {
        n,
        d_star,
        d_star_star,
        pi_used: pi_start,
        k_start: proportion_to_count(pi_start, n),
        alpha_n: config.alpha_n,
        beta_n: config.beta_n,
        proportion,
        partition: SubsetPartition::from_ranks(sample.order(), d_star, d_star_star),
    })
}
