//! Step-up FDR procedures used for comparison.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sample::PValueSample;
use crate::stats_math::Probability;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdrCutoff {
    pub cutoff_rank: usize,
    pub alpha: Probability,
    pub pi_hat_used: Option<f64>,
}

/// Largest `i` with `p_(i) <= i * alpha / (scale * n)`, or 0.
fn step_up(sorted: &[f64], alpha: f64, scale: f64) -> usize {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .rev()
        .find(|&(r, &p)| p <= (r + 1) as f64 * alpha / (scale * n))
        .map_or(0, |(r, _)| r + 1)
}

/// Benjamini–Hochberg cutoff rank.
pub fn bh_fdr(sample: &PValueSample, alpha: Probability) -> FdrCutoff {
    FdrCutoff {
        cutoff_rank: step_up(sample.sorted(), alpha.get(), 1.0),
        alpha,
        pi_hat_used: None,
    }
}

/// BH with the null count `(1 - pi_hat) n` in place of `n`.
pub fn adaptive_fdr(sample: &PValueSample, alpha: Probability, pi_hat: f64) -> Result<FdrCutoff> {
    if !(0.0..1.0).contains(&pi_hat) {
        return Err(Error::Domain(format!("pi_hat must lie in [0, 1), got {pi_hat}")));
    }
    Ok(FdrCutoff {
        cutoff_rank: step_up(sample.sorted(), alpha.get(), 1.0 - pi_hat),
        alpha,
        pi_hat_used: Some(pi_hat),
    })
}
