//! Signal-proportion estimation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sample::PValueSample;

/// Output of a proportion estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProportionEstimate {
    /// Clamped estimate, in `[0, 1 - 1/n]`.
    pub pi_hat: f64,
    /// 1-based rank `i` at which the maximum is attained.
    pub argmax_index: usize,
    /// The maximum before clamping; may be negative.
    pub raw_value: f64,
}

/// Something that turns a p-value sample into a signal-proportion estimate.
pub trait ProportionEstimator {
    fn estimate(&self, sample: &PValueSample) -> Result<ProportionEstimate>;
}

/// Meinshausen–Rice lower-bound estimator with the `sqrt(2 log log n / n)`
/// bounding sequence.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeinshausenRice;

impl ProportionEstimator for MeinshausenRice {
    fn estimate(&self, sample: &PValueSample) -> Result<ProportionEstimate> {
        estimate_pi_mr(sample)
    }
}

pub const MIN_SAMPLE_FOR_ESTIMATE: usize = 8;

/// `max_{1 < i < n/2} (i/n - p_(i) - c_n sqrt(p_(i)(1 - p_(i)))) / (1 - p_(i))`
/// with `c_n = sqrt(2 log log n / n)`, clamped below at zero.
///
/// The index range is `i = 2, ..., ceil(n/2) - 1`. Terms with `p_(i) = 1`
/// are skipped (their denominator vanishes and the numerator is negative).
pub fn estimate_pi_mr(sample: &PValueSample) -> Result<ProportionEstimate> {
    let n = sample.len();
    if n < MIN_SAMPLE_FOR_ESTIMATE {
        return Err(Error::Input(format!(
            "proportion estimation needs at least {MIN_SAMPLE_FOR_ESTIMATE} p-values, got {n}"
        )));
    }
    let nf = n as f64;
    let penalty = (2.0 * nf.ln().ln() / nf).sqrt();
    let sorted = sample.sorted();
    let last = n.div_ceil(2) - 1;

    let mut best = f64::NEG_INFINITY;
    let mut best_i = 2;
    for i in 2..=last {
        let p = sorted[i - 1];
        if p >= 1.0 {
            continue;
        }
        let value = (i as f64 / nf - p - penalty * (p * (1.0 - p)).sqrt()) / (1.0 - p);
        if value > best {
            best = value;
            best_i = i;
        }
    }

    Ok(ProportionEstimate {
        pi_hat: best.clamp(0.0, 1.0 - 1.0 / nf),
        argmax_index: best_i,
        raw_value: best,
    })
}

/// Prior interval `[pi_minus, pi_plus]` for the signal proportion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PriorBounds {
    pi_minus: f64,
    pi_plus: f64,
}

impl PriorBounds {
    pub fn new(pi_minus: f64, pi_plus: f64) -> Result<Self> {
        let in_range = |v: f64| (0.0..1.0).contains(&v);
        if !in_range(pi_minus) || !in_range(pi_plus) {
            return Err(Error::Input(format!(
                "proportion bounds ({pi_minus}, {pi_plus}) must lie in [0, 1)"
            )));
        }
        if pi_minus > pi_plus {
            return Err(Error::Input(format!(
                "lower proportion bound {pi_minus} exceeds upper bound {pi_plus}"
            )));
        }
        Ok(Self { pi_minus, pi_plus })
    }

    pub fn pi_minus(&self) -> f64 {
        self.pi_minus
    }

    pub fn pi_plus(&self) -> f64 {
        self.pi_plus
    }
}

/// Re-checks bounds against a sample size before use.
pub fn validate_bounds(bounds: PriorBounds, n: usize) -> Result<PriorBounds> {
    if n == 0 {
        return Err(Error::Input("bounds cannot be applied to an empty sample".into()));
    }
    PriorBounds::new(bounds.pi_minus, bounds.pi_plus)
}
