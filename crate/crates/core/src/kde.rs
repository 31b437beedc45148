//! Gaussian kernel density estimation and integrals of its powers.

use crate::error::{Error, Result};
use crate::math::{pow, std_normal_pdf};
use crate::quadrature::Simpson;
use crate::sample::Sample;

/// Beyond this many bandwidths the Gaussian kernel underflows to exactly 0.
const KERNEL_CUTOFF: f64 = 40.0;

/// Normal-reference bandwidth `1.06 s n^(-1/5)`.
pub fn default_bandwidth(sample: &Sample) -> Result<f64> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::TooFewObservations { needed: 2, got: n });
    }
    let s = sample.std_dev();
    if s <= 0.0 {
        return Err(Error::DegenerateSample);
    }
    Ok(1.06 * s * pow(n as f64, -0.2))
}

/// Kernel density estimate `f(x) = 1/(n h) sum phi((x - X_i) / h)` with the
/// standard normal kernel `phi`.
#[derive(Debug, Clone, Copy)]
pub struct KernelDensity<'a> {
    sample: &'a Sample,
    h: f64,
}

impl<'a> KernelDensity<'a> {
    pub fn new(sample: &'a Sample, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidBandwidth(h));
        }
        Ok(KernelDensity { sample, h })
    }

    pub fn with_default_bandwidth(sample: &'a Sample) -> Result<Self> {
        Self::new(sample, default_bandwidth(sample)?)
    }

    pub fn bandwidth(&self) -> f64 {
        self.h
    }

    pub fn sample(&self) -> &'a Sample {
        self.sample
    }

    /// Density estimate at `x`.
    ///
    /// Only observations within `KERNEL_CUTOFF` bandwidths are visited; the
    /// skipped terms are exactly zero in `f64`, so the sum is unchanged.
    pub fn density(&self, x: f64) -> f64 {
        let values = self.sample.values();
        let reach = KERNEL_CUTOFF * self.h;
        let lo = values.partition_point(|&v| v < x - reach);
        let hi = values.partition_point(|&v| v <= x + reach);
        let sum: f64 = values[lo..hi]
            .iter()
            .map(|&xi| std_normal_pdf((x - xi) / self.h))
            .sum();
        sum / (values.len() as f64 * self.h)
    }

    /// `integral of f^p` over `[min - 5h, max + 5h]` by composite Simpson.
    pub fn integrate_power(&self, p: u32) -> Result<f64> {
        if !(2..=3).contains(&p) {
            return Err(Error::UnsupportedPower(p));
        }
        self.integrate_raw(p)
    }

    /// Total mass of the estimate over the integration range (should be 1).
    pub fn total_mass(&self) -> Result<f64> {
        self.integrate_raw(1)
    }

    fn integrate_raw(&self, p: u32) -> Result<f64> {
        let lo = self.sample.min() - 5.0 * self.h;
        let hi = self.sample.max() + 5.0 * self.h;
        let intervals = (4.0 * (hi - lo) / self.h) as usize;
        let rule = Simpson::default().with_initial_intervals(intervals.max(64));
        rule.integrate(|x| crate::math::powu(self.density(x), p), lo, hi)
    }
}

pub fn kde_at(kd: &KernelDensity<'_>, x: f64) -> f64 {
    kd.density(x)
}

pub fn integrate_density_power(kd: &KernelDensity<'_>, p: u32) -> Result<f64> {
    kd.integrate_power(p)
}
