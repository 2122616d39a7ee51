//! Two-level thresholding (TLT) for ranked p-values.
//!
//! Given `n` p-values, TLT places two cuts on the ascending order statistics:
//! an adaptive Bonferroni cut `d*` below which only signals are expected, and
//! a step-down cut `d**` beyond which only noise is expected. Ranks in between
//! form the indistinguishable subset.
//!
//! The crate also carries the comparison procedures (BH-FDR, adaptive FDR),
//! asymptotic boundary evaluators, a seeded Monte Carlo harness and an
//! interval scan for copy-number style signal tracks.

pub mod baselines;
pub mod error;
pub mod interval_scan;
pub mod proportion;
pub mod sample;
pub mod simulation;
pub mod stats_math;
pub mod theory;
pub mod thresholds;

pub use baselines::{adaptive_fdr, bh_fdr, FdrCutoff};
pub use error::{Error, Result};
pub use proportion::{estimate_pi_mr, validate_bounds, PriorBounds, ProportionEstimate};
pub use sample::{Label, PValueSample};
pub use interval_scan::{
    categorize_intervals, normalize, prune_overlaps, run_scan, scan_intervals, IntervalStat,
    ScanOutput, ScanSettings, Tail, Track,
};
pub use simulation::{
    evaluate_run, generate, run_experiment, ExperimentSettings, RunMetrics, Scenario, SummaryTable,
};
pub use stats_math::{order_stat_quantile, reg_inc_beta, OrderStatisticLaw, Probability};
pub use thresholds::{
    categorize, d_star_hat, d_star_star_hat, true_separations, ProportionSource, Subset,
    SubsetPartition, TltConfig, TltResult, TolerancePreset,
};
