//! Order statistics, the empirical distribution function and m-spacings.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::sqrt;

/// A finite real sample stored as its order statistics.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Sample {
    values: Vec<f64>,
    std_dev: f64,
}

impl Sample {
    /// Builds a sample from unsorted observations. Rejects empty input and
    /// any NaN or infinite value.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        values.sort_by(f64::total_cmp);
        let std_dev = std_dev(&values);
        Ok(Sample { values, std_dev })
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }

    /// Order statistics, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sample standard deviation with divisor n-1 (0 for a single point).
    pub fn std_dev(&self) -> f64 {
        self.std_dev
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `X_{i:n}` with 1-based `i`, clamped to `X_{1:n}` below and `X_{n:n}` above.
    #[inline]
    pub fn clamped(&self, i: i64) -> f64 {
        let n = self.values.len() as i64;
        let idx = i.clamp(1, n) - 1;
        self.values[idx as usize]
    }

    /// `X_{i+m:n} - X_{i-m:n}` with boundary clamping. Ties give 0.
    #[inline]
    pub fn spacing(&self, window: SpacingConfig, i: usize) -> f64 {
        let (i, m) = (i as i64, window.m as i64);
        self.clamped(i + m) - self.clamped(i - m)
    }

    pub fn ecdf(&self) -> EmpiricalCdf<'_> {
        EmpiricalCdf { sample: self }
    }

    /// Applies `x -> a x + b`. Order is preserved for `a > 0`.
    pub fn affine(&self, a: f64, b: f64) -> Result<Sample> {
        Sample::new(self.values.iter().map(|&x| a * x + b).collect())
    }
}

fn std_dev(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n < 2 {
        return 0.0;
    }
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let ss: f64 = sorted.iter().map(|x| (x - mean) * (x - mean)).sum();
    sqrt(ss / (n - 1) as f64)
}

/// `X_{i:n}` with clamping; `i` may be any integer.
pub fn clamped_order_stat(sample: &Sample, i: i64) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(sample.clamped(i))
}

/// Half-width of the spacing window. The `m < n/2` constraint is checked by
/// [`SpacingConfig::check`] at the point of use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpacingConfig {
    pub m: usize,
}

impl SpacingConfig {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroWindow);
        }
        Ok(SpacingConfig { m })
    }

    /// Enforces `m < n/2`.
    pub fn check(self, n: usize) -> Result<Self> {
        if self.m == 0 {
            return Err(Error::ZeroWindow);
        }
        if 2 * self.m >= n {
            return Err(Error::WindowTooLarge { m: self.m, n });
        }
        Ok(self)
    }

    /// Recommended window for a sample of size `n`:
    /// up to 10 -> 2, 11..=50 -> 6, 51..=99 -> 8, 100 and above -> 10.
    pub fn recommended(n: usize) -> Self {
        let m = match n {
            0..=10 => 2,
            11..=50 => 6,
            51..=99 => 8,
            _ => 10,
        };
        SpacingConfig { m }
    }
}

/// `X_{i+m:n} - X_{i-m:n}` for `1 <= i <= n`, with `m < n/2` enforced.
pub fn m_spacing(sample: &Sample, window: SpacingConfig, i: usize) -> Result<f64> {
    let n = sample.len();
    window.check(n)?;
    if i < 1 || i > n {
        return Err(Error::IndexOutOfRange { index: i as i64, n });
    }
    Ok(sample.spacing(window, i))
}

/// Right-continuous empirical distribution function of a sample.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalCdf<'a> {
    sample: &'a Sample,
}

impl EmpiricalCdf<'_> {
    /// Fraction of observations `<= x`.
    pub fn at(&self, x: f64) -> f64 {
        let values = self.sample.values();
        let count = values.partition_point(|&v| v <= x);
        count as f64 / values.len() as f64
    }
}

pub fn empirical_cdf_at(cdf: &EmpiricalCdf<'_>, x: f64) -> f64 {
    cdf.at(x)
}

/// Sample quantile with linear interpolation between order statistics
/// (position `q (n - 1)` in 0-based indexing).
pub fn empirical_quantile(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidProbability(q));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&sorted, q))
}

/// As [`empirical_quantile`] on data that is already sorted ascending.
pub(crate) fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = crate::math::floor(pos) as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = pos - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}
