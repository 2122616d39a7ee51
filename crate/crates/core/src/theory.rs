//! Asymptotic boundaries for the existence of the three subsets under a
//! sparse normal mixture.

use serde::Serialize;

use crate::error::{Error, Result};

/// Calibration `pi = n^{-beta}`, `mu = sqrt(2 r log n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixtureCalibration {
    pub n: u64,
    pub beta_sparsity: f64,
    pub r_strength: f64,
}

impl MixtureCalibration {
    pub fn new(n: u64, beta_sparsity: f64, r_strength: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Input(format!("calibration needs n >= 2, got {n}")));
        }
        if !(beta_sparsity > 0.0 && beta_sparsity < 1.0) {
            return Err(Error::Input(format!("sparsity beta must be in (0, 1), got {beta_sparsity}")));
        }
        if !(r_strength > 0.0 && r_strength.is_finite()) {
            return Err(Error::Input(format!("strength r must be positive, got {r_strength}")));
        }
        Ok(Self {
            n,
            beta_sparsity,
            r_strength,
        })
    }

    pub fn pi(&self) -> f64 {
        (self.n as f64).powf(-self.beta_sparsity)
    }

    pub fn mu(&self) -> f64 {
        (2.0 * self.r_strength * (self.n as f64).ln()).sqrt()
    }

    /// Which subsets exist asymptotically at this calibration.
    pub fn regime(&self) -> Regime {
        let (lo, hi) = recovery_region(self.beta_sparsity).expect("validated in new");
        Regime {
            signal_subset: self.r_strength > lo,
            indistinguishable_subset: self.r_strength < hi,
            noise_subset: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub signal_subset: bool,
    pub indistinguishable_subset: bool,
    pub noise_subset: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExistenceBoundaries {
    /// Signal subset exists when `mu` is at least this.
    pub mu_signal_lower: f64,
    /// Indistinguishable subset exists when `mu` is at most this.
    pub mu_indist_upper: f64,
    /// `log s1 <= (1 - eps) log s0`.
    pub noise_condition_holds: bool,
}

/// Boundaries on the signal mean for `s0` noise and `s1` signal observations.
///
/// `eps` must lie in `(0, 1)`; the upper boundary involves `sqrt(1 - eps)`.
pub fn existence_boundaries(s0: u64, s1: u64, eps: f64) -> Result<ExistenceBoundaries> {
    if s0 < 2 {
        return Err(Error::Input(format!("noise count must be at least 2, got {s0}")));
    }
    if s1 < 1 {
        return Err(Error::Input("signal count must be at least 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Input(format!("eps must lie in (0, 1), got {eps}")));
    }
    let log0 = (s0 as f64).ln();
    let log1 = (s1 as f64).ln();
    let signal_term = (2.0 * log1).sqrt();
    Ok(ExistenceBoundaries {
        mu_signal_lower: (2.0 * (1.0 + eps) * log0).sqrt() - signal_term,
        mu_indist_upper: (2.0 * (1.0 - eps) * log0).sqrt() + signal_term,
        noise_condition_holds: log1 <= (1.0 - eps) * log0,
    })
}

/// `((1 - sqrt(1 - beta))^2, (1 + sqrt(1 - beta))^2)`: the signal subset
/// exists for `r` above the first value and the indistinguishable subset for
/// `r` below the second.
pub fn recovery_region(beta_sparsity: f64) -> Result<(f64, f64)> {
    if !(beta_sparsity > 0.0 && beta_sparsity < 1.0) {
        return Err(Error::Input(format!(
            "sparsity beta must be in (0, 1), got {beta_sparsity}"
        )));
    }
    let s = (1.0 - beta_sparsity).sqrt();
    Ok(((1.0 - s).powi(2), (1.0 + s).powi(2)))
}
