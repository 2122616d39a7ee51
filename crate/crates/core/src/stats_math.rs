//! Special functions: normal tails, the regularized incomplete beta function
//! and quantiles of uniform order statistics.
//!
//! Everything here is a pure function of its arguments.

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::{Serialize, Serializer};
use libm::{erfc, lgamma};

use crate::error::{Error, Result};

/// A real number in `[0, 1]`. NaN is rejected.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::Domain(format!("{value} is not a probability")))
        }
    }

    /// Accepts only values strictly inside `(0, 1)`.
    pub fn open(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Probability(value))
        } else {
            Err(Error::Domain(format!("{value} is not in the open interval (0, 1)")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.0)
    }
}

/// Law of the `rank`-th smallest of `size` independent uniforms, i.e.
/// `Beta(rank, size - rank + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderStatisticLaw {
    rank: u64,
    size: u64,
}

impl OrderStatisticLaw {
    pub fn new(rank: u64, size: u64) -> Result<Self> {
        if rank == 0 || rank > size {
            return Err(Error::Domain(format!(
                "order statistic rank {rank} must lie in 1..={size}"
            )));
        }
        Ok(Self { rank, size })
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Shape parameters `(a, b)` of the Beta law.
    pub fn beta_shapes(&self) -> (f64, f64) {
        (self.rank as f64, (self.size - self.rank + 1) as f64)
    }

    pub fn cdf(&self, x: Probability) -> Result<Probability> {
        let (a, b) = self.beta_shapes();
        reg_inc_beta(a, b, x)
    }
}

fn check_finite(z: f64) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("expected a finite argument, got {z}")))
    }
}

/// Standard normal CDF `Φ(z)`.
pub fn std_normal_cdf(z: f64) -> Result<Probability> {
    check_finite(z)?;
    Ok(Probability(0.5 * erfc(-z / SQRT_2)))
}

/// Standard normal upper tail `1 - Φ(z)`, computed without cancellation.
pub fn std_normal_sf(z: f64) -> Result<Probability> {
    check_finite(z)?;
    Ok(Probability(0.5 * erfc(z / SQRT_2)))
}

/// `ln Γ(x) - [(x - 1/2) ln x - x + ln sqrt(2π)]` for `x >= 10`, from the
/// Stirling series.
fn ln_gamma_correction(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    COEFFS.iter().rev().fold(0.0, |acc, &c| acc * inv2 + c) * inv
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln B(a, b)`. When an argument is large the Stirling parts are combined
/// analytically so that the huge `ln Γ` values never cancel.
fn ln_beta(a: f64, b: f64) -> f64 {
    let (p, q) = if a < b { (a, b) } else { (b, a) };
    let total = p + q;
    if p >= 10.0 {
        let corr = ln_gamma_correction(p) + ln_gamma_correction(q) - ln_gamma_correction(total);
        -0.5 * q.ln() + LN_SQRT_2PI + corr + (p - 0.5) * (p / total).ln()
            + q * (-p / total).ln_1p()
    } else if q >= 10.0 {
        let corr = ln_gamma_correction(q) - ln_gamma_correction(total);
        lgamma(p) + corr + p - p * total.ln() + (q - 0.5) * (-p / total).ln_1p()
    } else {
        lgamma(p) + lgamma(q) - lgamma(total)
    }
}

const CF_MAX_ITER: usize = 20_000;
const CF_EPS: f64 = 1e-16;
const CF_TINY: f64 = 1e-300;

/// Continued fraction for `I_x(a, b)`, evaluated with the modified Lentz
/// method. Converges quickly for `x < (a + 1) / (a + b + 2)`.
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;

    let clamp = |v: f64| if v.abs() < CF_TINY { CF_TINY } else { v };

    let mut c = 1.0;
    let mut d = 1.0 / clamp(1.0 - qab * x / qap);
    let mut h = d;

    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;

        // even step
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        h *= d * c;

        // odd step
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        let delta = d * c;
        h *= delta;

        if (delta - 1.0).abs() <= CF_EPS {
            return Ok(h);
        }
    }
    Err(Error::Numeric(format!(
        "incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )))
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn reg_inc_beta(a: f64, b: f64, x: Probability) -> Result<Probability> {
    if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
        return Err(Error::Domain(format!(
            "incomplete beta needs positive finite shapes, got a={a}, b={b}"
        )));
    }
    let x = x.get();
    if x == 0.0 {
        return Ok(Probability::ZERO);
    }
    if x == 1.0 {
        return Ok(Probability::ONE);
    }

    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta(a, b);
    let front = ln_front.exp();

    let value = if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x)? / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x)? / b
    };
    Ok(Probability(value.clamp(0.0, 1.0)))
}

/// Density of `Beta(a, b)` at `x` in `(0, 1)`.
fn beta_density(a: f64, b: f64, x: f64) -> f64 {
    ((a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() - ln_beta(a, b)).exp()
}

const QUANTILE_MAX_ITER: usize = 400;

/// Quantile of the `j`-th order statistic of `m` uniforms: the `x` with
/// `I_x(j, m - j + 1) = q`.
///
/// The two boundary ranks have closed forms and are returned directly. All
/// other ranks use Newton steps safeguarded by a bracket that starts at
/// `[0, 1]`; any step leaving the bracket is replaced by bisection.
pub fn order_stat_quantile(law: OrderStatisticLaw, q: Probability) -> Result<Probability> {
    let q = q.get();
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!(
            "order statistic quantile level must be in (0, 1), got {q}"
        )));
    }
    let m = law.size as f64;
    if law.rank == 1 {
        // 1 - (1 - q)^(1/m)
        return Ok(Probability(-((-q).ln_1p() / m).exp_m1()));
    }
    if law.rank == law.size {
        return Ok(Probability((q.ln() / m).exp()));
    }

    let (a, b) = law.beta_shapes();
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    let mut x = a / (a + b);

    for _ in 0..QUANTILE_MAX_ITER {
        let f = reg_inc_beta(a, b, Probability(x))?.get() - q;
        if f == 0.0 {
            return Ok(Probability(x));
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }

        let density = beta_density(a, b, x);
        let newton = x - f / density;
        let next = if density > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };

        if (next - x).abs() <= 1e-15 * next || hi - lo <= 1e-15 * hi {
            return Ok(Probability(next));
        }
        x = next;
    }
    Err(Error::Numeric(format!(
        "order statistic quantile did not converge for j={}, m={}, q={q}",
        law.rank, law.size
    )))
}
