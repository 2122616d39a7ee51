//! Interval scan for a one-dimensional signal track (for example Log R
//! ratios along a chromosome).
//!
//! The pipeline normalizes the track, scores every interval of up to `L`
//! consecutive probes by its standardized sum, keeps the locally most
//! significant non-overlapping intervals and splits them into the three
//! subsets with the prior-bounds variant of two-level thresholding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::proportion::PriorBounds;
use crate::sample::PValueSample;
use crate::stats_math::{std_normal_cdf, std_normal_sf, Probability};
use crate::thresholds::{categorize, ProportionSource, TltConfig, TltResult, TolerancePreset};

/// Consistency factor that turns the median absolute deviation of normal
/// data into its standard deviation.
pub const MAD_TO_SD: f64 = 1.4826;

pub const DEFAULT_MAX_LEN: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Track {
    positions: Vec<i64>,
    values: Vec<f64>,
}

impl Track {
    pub fn new(positions: Vec<i64>, values: Vec<f64>) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::Input(format!(
                "{} positions for {} values",
                positions.len(),
                values.len()
            )));
        }
        if let Some(i) = positions.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::Input(format!(
                "positions must be strictly increasing: {} then {} at row {}",
                positions[i],
                positions[i + 1],
                i + 2
            )));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Input(format!("value {v} at row {} is not finite", i + 1)));
        }
        Ok(Self { positions, values })
    }

    /// Positions `1..=n`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let positions = (1..=values.len() as i64).collect();
        Self::new(positions, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

/// Subtracts the median and divides by `1.4826 * MAD`.
pub fn normalize(track: &Track) -> Result<Track> {
    if track.len() < 2 {
        return Err(Error::Input(format!(
            "normalization needs at least 2 probes, got {}",
            track.len()
        )));
    }
    let center = median(&track.values);
    let dev: Vec<f64> = track.values.iter().map(|v| (v - center).abs()).collect();
    let scale = MAD_TO_SD * median(&dev);
    if !(scale > 0.0) {
        return Err(Error::Input(
            "track has zero robust scale (more than half the values are identical)".into(),
        ));
    }
    Ok(Track {
        positions: track.positions.clone(),
        values: track.values.iter().map(|v| (v - center) / scale).collect(),
    })
}

/// Which direction of departure counts as significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// `Φ(z)`: negative sums, as for deletions.
    #[default]
    Lower,
    /// `1 - Φ(z)`: positive sums, as for duplications.
    Upper,
    /// `2 min(Φ(z), 1 - Φ(z))`.
    Both,
}

impl Tail {
    pub fn p_value(self, z: f64) -> Result<Probability> {
        match self {
            Tail::Lower => std_normal_cdf(z),
            Tail::Upper => std_normal_sf(z),
            Tail::Both => {
                let one = std_normal_sf(z.abs())?.get();
                Probability::new((2.0 * one).min(1.0))
            }
        }
    }
}

/// Score of one interval of probes `start..=end` (0-based track indices).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalStat {
    pub start: usize,
    pub end: usize,
    pub statistic: f64,
    pub p_value: Probability,
    pub pruned: bool,
}

impl IntervalStat {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn overlaps(&self, other: &IntervalStat) -> bool {
        self.start <= other.end && other.start <= self.end
    }
}

/// `sum_{l=1}^{min(L, n)} (n - l + 1)`.
pub fn interval_count(n_probes: usize, max_len: usize) -> usize {
    let l = max_len.min(n_probes);
    l * n_probes - l * (l.saturating_sub(1)) / 2
}

/// Every interval of `1..=max_len` consecutive probes, ordered by start and
/// then by length, scored by `sum / sqrt(len)`.
pub fn scan_intervals(track: &Track, max_len: usize, tail: Tail) -> Result<Vec<IntervalStat>> {
    if max_len == 0 {
        return Err(Error::Input("maximum interval length must be at least 1".into()));
    }
    let x = track.values();
    let n = x.len();
    let per_start: Vec<Vec<IntervalStat>> = (0..n)
        .into_par_iter()
        .map(|start| {
            let stop = (start + max_len).min(n);
            let mut sum = 0.0;
            (start..stop)
                .map(|end| {
                    sum += x[end];
                    let statistic = sum / ((end - start + 1) as f64).sqrt();
                    Ok(IntervalStat {
                        start,
                        end,
                        statistic,
                        p_value: tail.p_value(statistic)?,
                        pruned: false,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_start.into_iter().flatten().collect())
}

/// Order in which the greedy pruning visits intervals: smaller p first, then
/// smaller start, then shorter.
fn greedy_order(stats: &[IntervalStat]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..stats.len()).collect();
    idx.sort_by(|&a, &b| {
        let (x, y) = (&stats[a], &stats[b]);
        x.p_value
            .get()
            .total_cmp(&y.p_value.get())
            .then(x.start.cmp(&y.start))
            .then(x.len().cmp(&y.len()))
    });
    idx
}

/// Sets `pruned` on every interval that overlaps a more significant kept one.
///
/// Visiting intervals in greedy order, an interval is kept when none of its
/// probes is already claimed by a kept interval; otherwise it is pruned.
pub fn mark_overlaps(stats: &mut [IntervalStat]) {
    let width = stats.iter().map(|s| s.end + 1).max().unwrap_or(0);
    let mut claimed = vec![false; width];
    for i in greedy_order(stats) {
        let s = &mut stats[i];
        let span = &mut claimed[s.start..=s.end];
        if span.iter().any(|&c| c) {
            s.pruned = true;
        } else {
            s.pruned = false;
            span.fill(true);
        }
    }
}

/// Kept intervals, ordered by ascending p-value (ties as in the greedy order).
pub fn prune_overlaps(stats: &[IntervalStat]) -> Vec<IntervalStat> {
    let mut marked = stats.to_vec();
    mark_overlaps(&mut marked);
    greedy_order(&marked)
        .into_iter()
        .map(|i| marked[i])
        .filter(|s| !s.pruned)
        .collect()
}

/// Prior-bounds TLT on the p-values of the kept intervals. Partition indices
/// refer to positions in `kept`.
pub fn categorize_intervals(
    kept: &[IntervalStat],
    bounds: PriorBounds,
    alpha_n: Probability,
    beta_n: Probability,
) -> Result<TltResult> {
    let sample = PValueSample::new(kept.iter().map(|s| s.p_value.get()).collect())?;
    let config = TltConfig::new(alpha_n.get(), beta_n.get(), ProportionSource::Bounds(bounds))?;
    categorize(&sample, &config)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub max_len: usize,
    pub tail: Tail,
    pub normalize: bool,
    pub bounds: PriorBounds,
    /// Fixed `alpha_n`; when absent it follows the tolerance preset at the
    /// number of kept intervals. Likewise for `beta_n`.
    pub alpha_n: Option<Probability>,
    pub beta_n: Option<Probability>,
    pub tolerance: TolerancePreset,
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            max_len: DEFAULT_MAX_LEN,
            tail: Tail::Lower,
            normalize: true,
            bounds: PriorBounds::new(0.0, 0.005).expect("constant bounds"),
            alpha_n: None,
            beta_n: None,
            tolerance: TolerancePreset::HalfInverseLog,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutput {
    pub n_intervals: usize,
    /// Kept intervals by ascending p-value; index `r` has rank `r + 1`.
    pub kept: Vec<IntervalStat>,
    pub result: TltResult,
}

pub fn run_scan(track: &Track, settings: &ScanSettings) -> Result<ScanOutput> {
    if track.is_empty() {
        return Err(Error::Input("track is empty".into()));
    }
    let normalized;
    let track = if settings.normalize {
        normalized = normalize(track)?;
        &normalized
    } else {
        track
    };
    let stats = scan_intervals(track, settings.max_len, settings.tail)?;
    let kept = prune_overlaps(&stats);
    let preset = || settings.tolerance.value(kept.len());
    let alpha_n = settings.alpha_n.map_or_else(preset, Ok)?;
    let beta_n = settings.beta_n.map_or_else(preset, Ok)?;
    let result = categorize_intervals(&kept, settings.bounds, alpha_n, beta_n)?;
    Ok(ScanOutput {
        n_intervals: stats.len(),
        kept,
        result,
    })
}

/// A planted shift of `depth` over `width` probes starting at `start`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlantedSegment {
    pub start: usize,
    pub width: usize,
    pub depth: f64,
}

/// Standard normal track with the given segments added, positions `1..=n`.
pub fn synthetic_track(n_probes: usize, planted: &[PlantedSegment], seed: u64) -> Result<Track> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut values: Vec<f64> = (0..n_probes).map(|_| rng.sample(StandardNormal)).collect();
    for seg in planted {
        if seg.width == 0 || seg.start + seg.width > n_probes {
            return Err(Error::Input(format!(
                "planted segment at {} of width {} does not fit in {n_probes} probes",
                seg.start, seg.width
            )));
        }
        for v in &mut values[seg.start..seg.start + seg.width] {
            *v += seg.depth;
        }
    }
    Track::from_values(values)
}
