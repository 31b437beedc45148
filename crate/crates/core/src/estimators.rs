//! The six nonparametric varextropy estimators.
//!
//! Every estimator has the shape `1/4 mean(d_i^2) - 1/4 (mean d_i)^2` for some
//! per-observation density proxy `d_i`: reciprocal m-spacings (D1, D2), a
//! local least-squares slope (D5) or a kernel density estimate (D3, D4, D6).

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::kde::{default_bandwidth, KernelDensity};
use crate::sample::{Sample, SpacingConfig};

/// Form of the D5/D6 estimators.
///
/// `AsPrinted` keeps the published formulas literally: a cubed first term for
/// D5, and a difference `f(X_{i+m}) - f(X_{i-m})` for D6. `Corrected` squares
/// the D5 slope and averages the two D6 endpoint densities, which is what a
/// consistent varextropy estimator needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Variant {
    #[default]
    Corrected,
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum EstimatorId {
    D1,
    D2,
    D3,
    D4,
    D5(Variant),
    D6(Variant),
}

impl EstimatorId {
    pub fn uses_window(self) -> bool {
        matches!(self, Self::D1 | Self::D2 | Self::D5(_) | Self::D6(_))
    }

    pub fn uses_bandwidth(self) -> bool {
        matches!(self, Self::D3 | Self::D4 | Self::D6(_))
    }

    /// Whether the estimate is a variance of real numbers, hence `>= 0`.
    pub fn is_variance_form(self) -> bool {
        !matches!(self, Self::D3 | Self::D5(Variant::AsPrinted))
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::D1 => "D1",
            Self::D2 => "D2",
            Self::D3 => "D3",
            Self::D4 => "D4",
            Self::D5(_) => "D5",
            Self::D6(_) => "D6",
        }
    }
}

impl fmt::Display for EstimatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::D5(Variant::AsPrinted) | Self::D6(Variant::AsPrinted) => {
                write!(f, "{} (as printed)", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EstimatorReport {
    pub estimator: EstimatorId,
    pub value: f64,
    pub m: Option<usize>,
    pub h: Option<f64>,
    pub n: usize,
    /// Set when a non-variance-form estimator (D3, D5 as printed) came out
    /// negative.
    pub negative: bool,
}

impl EstimatorReport {
    fn new(estimator: EstimatorId, value: f64, m: Option<usize>, h: Option<f64>, n: usize) -> Self {
        EstimatorReport {
            estimator,
            value,
            m,
            h,
            n,
            negative: value < 0.0,
        }
    }
}

/// Optional knobs for [`estimate`]. Missing values fall back to the
/// recommended window and the normal-reference bandwidth.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EstimatorSettings {
    pub m: Option<usize>,
    pub h: Option<f64>,
}

/// Runs any estimator by id.
pub fn estimate(sample: &Sample, id: EstimatorId, settings: EstimatorSettings) -> Result<EstimatorReport> {
    let window = || -> Result<SpacingConfig> {
        match settings.m {
            Some(m) => SpacingConfig::new(m),
            None => Ok(SpacingConfig::recommended(sample.len())),
        }
    };
    match id {
        EstimatorId::D1 => d1(sample, window()?),
        EstimatorId::D2 => d2(sample, window()?),
        EstimatorId::D3 => d3(sample, settings.h),
        EstimatorId::D4 => d4(sample, settings.h),
        EstimatorId::D5(v) => d5(sample, window()?, v),
        EstimatorId::D6(v) => d6(sample, window()?, settings.h, v),
    }
}

/// `1/4` of the population variance, computed in two passes about the first
/// element. It never goes negative and is exactly zero for constant input.
fn quarter_variance(d: &[f64]) -> f64 {
    let n = d.len() as f64;
    let shift = d[0];
    let mean = d.iter().map(|x| x - shift).sum::<f64>() / n;
    let ss: f64 = d.iter().map(|x| (x - shift - mean) * (x - shift - mean)).sum();
    0.25 * ss / n
}

fn reciprocal_spacings<C>(sample: &Sample, window: SpacingConfig, name: &'static str, coeff: C) -> Result<Vec<f64>>
where
    C: Fn(usize) -> f64,
{
    let n = sample.len();
    window.check(n)?;
    let scale = window.m as f64 / n as f64;
    (1..=n)
        .map(|i| {
            let spacing = sample.spacing(window, i);
            if spacing > 0.0 {
                Ok(coeff(i) * scale / spacing)
            } else {
                Err(Error::TiedSpacing { estimator: name, index: i })
            }
        })
        .collect()
}

/// Boundary-corrected spacing weights: `1 + (i-1)/m` on the left edge,
/// `2` in the interior and `1 + (n-i)/m` on the right edge.
pub fn boundary_coefficient(i: usize, n: usize, m: usize) -> f64 {
    if i <= m {
        1.0 + (i - 1) as f64 / m as f64
    } else if i + m <= n {
        2.0
    } else {
        1.0 + (n - i) as f64 / m as f64
    }
}

/// Spacing estimator with `d_i = (2m/n) / (X_{i+m} - X_{i-m})`.
pub fn d1(sample: &Sample, window: SpacingConfig) -> Result<EstimatorReport> {
    let d = reciprocal_spacings(sample, window, "D1", |_| 2.0)?;
    Ok(EstimatorReport::new(EstimatorId::D1, quarter_variance(&d), Some(window.m), None, sample.len()))
}

/// Spacing estimator with boundary-corrected weights `c_i m/n`.
pub fn d2(sample: &Sample, window: SpacingConfig) -> Result<EstimatorReport> {
    let n = sample.len();
    let d = reciprocal_spacings(sample, window, "D2", |i| boundary_coefficient(i, n, window.m))?;
    Ok(EstimatorReport::new(EstimatorId::D2, quarter_variance(&d), Some(window.m), None, n))
}

fn kernel<'a>(sample: &'a Sample, h: Option<f64>) -> Result<KernelDensity<'a>> {
    // The bandwidth rule's preconditions apply even when h is supplied.
    let default = default_bandwidth(sample)?;
    KernelDensity::new(sample, h.unwrap_or(default))
}

/// Plug-in estimator `1/4 int f^3 - 1/4 (int f^2)^2` on the kernel estimate.
pub fn d3(sample: &Sample, h: Option<f64>) -> Result<EstimatorReport> {
    let kd = kernel(sample, h)?;
    let i2 = kd.integrate_power(2)?;
    let i3 = kd.integrate_power(3)?;
    let value = 0.25 * i3 - 0.25 * i2 * i2;
    Ok(EstimatorReport::new(EstimatorId::D3, value, None, Some(kd.bandwidth()), sample.len()))
}

/// Resubstitution estimator: quarter variance of `f(X_i)`.
pub fn d4(sample: &Sample, h: Option<f64>) -> Result<EstimatorReport> {
    let kd = kernel(sample, h)?;
    let f: Vec<f64> = sample.values().iter().map(|&x| kd.density(x)).collect();
    Ok(EstimatorReport::new(
        EstimatorId::D4,
        quarter_variance(&f),
        None,
        Some(kd.bandwidth()),
        sample.len(),
    ))
}

/// Least-squares slope of `j/n` on `X_{j:n}` over the clamped window
/// `j = i-m ..= i+m`.
pub fn local_slopes(sample: &Sample, window: SpacingConfig) -> Result<Vec<f64>> {
    let n = sample.len();
    window.check(n)?;
    let m = window.m as i64;
    let width = (2 * m + 1) as f64;
    (1..=n)
        .map(|i| {
            let centre = i as i64;
            let mean = (centre - m..=centre + m).map(|j| sample.clamped(j)).sum::<f64>() / width;
            let (mut sxy, mut sxx) = (0.0, 0.0);
            for j in centre - m..=centre + m {
                let dx = sample.clamped(j) - mean;
                sxy += dx * (j - centre) as f64;
                sxx += dx * dx;
            }
            if sxx > 0.0 {
                Ok(sxy / (n as f64 * sxx))
            } else {
                Err(Error::ZeroLocalVariance { index: i })
            }
        })
        .collect()
}

/// Local linear regression estimator.
pub fn d5(sample: &Sample, window: SpacingConfig, variant: Variant) -> Result<EstimatorReport> {
    let b = local_slopes(sample, window)?;
    let value = match variant {
        Variant::Corrected => quarter_variance(&b),
        Variant::AsPrinted => {
            let n = b.len() as f64;
            let cubes = b.iter().map(|x| x * x * x).sum::<f64>() / n;
            let mean = b.iter().sum::<f64>() / n;
            0.25 * cubes - 0.25 * mean * mean
        }
    };
    Ok(EstimatorReport::new(
        EstimatorId::D5(variant),
        value,
        Some(window.m),
        None,
        sample.len(),
    ))
}

/// Kernel density at the window endpoints `X_{i-m}` and `X_{i+m}`, combined
/// as their average (corrected) or half-difference (as printed).
pub fn d6(sample: &Sample, window: SpacingConfig, h: Option<f64>, variant: Variant) -> Result<EstimatorReport> {
    let n = sample.len();
    window.check(n)?;
    let kd = kernel(sample, h)?;
    let f: Vec<f64> = sample.values().iter().map(|&x| kd.density(x)).collect();
    let at = |i: i64| f[(i.clamp(1, n as i64) - 1) as usize];
    let m = window.m as i64;
    let g: Vec<f64> = (1..=n as i64)
        .map(|i| match variant {
            Variant::Corrected => (at(i + m) + at(i - m)) / 2.0,
            Variant::AsPrinted => (at(i + m) - at(i - m)) / 2.0,
        })
        .collect();
    Ok(EstimatorReport::new(
        EstimatorId::D6(variant),
        quarter_variance(&g),
        Some(window.m),
        Some(kd.bandwidth()),
        n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{exp, sqrt, std_normal_pdf};
    use alloc::vec;
    use core::f64::consts::PI;

    fn s(v: &[f64]) -> Sample {
        Sample::from_slice(v).unwrap()
    }

    fn w(m: usize) -> SpacingConfig {
        SpacingConfig::new(m).unwrap()
    }

    #[test]
    fn d1_hand_values() {
        let r = d1(&s(&[1.0, 2.0, 3.0, 4.0]), w(1)).unwrap();
        assert_eq!(r.value, 0.003_906_25);
        assert_eq!((r.m, r.h, r.n), (Some(1), None, 4));
        let r = d1(&s(&[2.0, 4.0, 6.0, 8.0]), w(1)).unwrap();
        assert_eq!(r.value, 0.000_976_562_5);
    }

    #[test]
    fn d2_hand_values() {
        let x = s(&[1.0, 2.0, 3.0, 4.0]);
        let c: Vec<f64> = (1..=4).map(|i| boundary_coefficient(i, 4, 1)).collect();
        assert_eq!(c, vec![1.0, 2.0, 2.0, 1.0]);
        assert_eq!(d2(&x, w(1)).unwrap().value, 0.0);
    }

    #[test]
    fn d2_interior_coefficients_are_two() {
        let (n, m) = (40, 5);
        for i in m + 1..=n - m {
            assert_eq!(boundary_coefficient(i, n, m), 2.0);
        }
        assert_eq!(boundary_coefficient(1, n, m), 1.0);
        assert_eq!(boundary_coefficient(n, n, m), 1.0);
        assert_eq!(boundary_coefficient(m, n, m), 1.8);
    }

    #[test]
    fn d2_with_flat_coefficients_is_d1() {
        let x = s(&[0.3, 1.9, 2.2, 4.0, 4.4, 7.1, 8.0, 9.5, 11.0]);
        let flat = reciprocal_spacings(&x, w(2), "D2", |_| 2.0).unwrap();
        assert_eq!(quarter_variance(&flat), d1(&x, w(2)).unwrap().value);
    }

    #[test]
    fn quarter_variance_of_constant_is_zero() {
        for n in 1..200 {
            assert_eq!(quarter_variance(&vec![0.1; n]), 0.0, "n={n}");
        }
        assert_eq!(quarter_variance(&[1.0, 3.0]), 0.25);
    }

    #[test]
    fn arithmetic_progressions_give_zero_d2() {
        for n in [3, 7, 45, 99, 150] {
            let x = Sample::new((0..n).map(|j| -12.5 + 0.375 * j as f64).collect()).unwrap();
            assert_eq!(d2(&x, w(1)).unwrap().value, 0.0, "n={n}");
        }
    }

    #[test]
    fn ties_are_errors() {
        let x = s(&[1.0, 2.0, 2.0, 2.0, 3.0, 4.0]);
        assert_eq!(
            d1(&x, w(1)),
            Err(Error::TiedSpacing { estimator: "D1", index: 3 })
        );
        assert!(matches!(d2(&x, w(1)), Err(Error::TiedSpacing { estimator: "D2", .. })));
        let flat = s(&[1.0, 5.0, 5.0, 5.0, 5.0, 5.0, 9.0]);
        assert_eq!(
            d5(&flat, w(1), Variant::Corrected),
            Err(Error::ZeroLocalVariance { index: 3 })
        );
    }

    #[test]
    fn window_validated() {
        let x = s(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d1(&x, w(2)), Err(Error::WindowTooLarge { m: 2, n: 4 }));
        assert_eq!(d5(&x, w(2), Variant::Corrected), Err(Error::WindowTooLarge { m: 2, n: 4 }));
        assert_eq!(d6(&x, w(2), None, Variant::Corrected), Err(Error::WindowTooLarge { m: 2, n: 4 }));
    }

    #[test]
    fn kernel_estimators_reject_degenerate_samples() {
        let flat = s(&[3.0, 3.0, 3.0, 3.0, 3.0]);
        assert_eq!(d3(&flat, None), Err(Error::DegenerateSample));
        assert_eq!(d4(&flat, Some(1.0)), Err(Error::DegenerateSample));
        assert_eq!(d6(&flat, w(1), None, Variant::Corrected), Err(Error::DegenerateSample));
    }

    #[test]
    fn d3_two_point_oracle() {
        let x = s(&[-1.0, 1.0]);
        // Gaussian-mixture overlap integrals with h = 1.
        let i2 = (2.0 + 2.0 * exp(-1.0)) / (4.0 * 2.0 * sqrt(PI));
        // Triples: all equal (2 of 8) contribute 1; mixed (6 of 8) have
        // squared deviation 8/3 from their mean.
        let i3 = (2.0 + 6.0 * exp(-4.0 / 3.0)) / (8.0 * 2.0 * PI * sqrt(3.0));
        let r = d3(&x, Some(1.0)).unwrap();
        assert!((r.value - (0.25 * i3 - 0.25 * i2 * i2)).abs() < 1e-8);
        assert_eq!(r.h, Some(1.0));
    }

    #[test]
    fn d4_symmetric_pair_is_zero() {
        let x = s(&[-1.0, 1.0]);
        let f = 0.5 * (std_normal_pdf(0.0) + std_normal_pdf(2.0));
        let kd = KernelDensity::new(&x, 1.0).unwrap();
        assert!((kd.density(1.0) - f).abs() < 1e-16);
        assert_eq!(d4(&x, Some(1.0)).unwrap().value, 0.0);
    }

    #[test]
    fn d5_arithmetic_slopes() {
        let x = s(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        let b = local_slopes(&x, w(2)).unwrap();
        for i in 3..=7 {
            assert!((b[i - 1] - 10.0 / 90.0).abs() < 1e-15);
        }
        for i in 1..=9 {
            assert!((b[i - 1] - b[9 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn d6_as_printed_symmetric_sample_has_zero_mean_term() {
        let x = s(&[-3.0, -1.5, -0.7, -0.2, 0.2, 0.7, 1.5, 3.0]);
        let kd = KernelDensity::with_default_bandwidth(&x).unwrap();
        let n = 8i64;
        let f = |i: i64| kd.density(x.clamped(i));
        let g: Vec<f64> = (1..=n).map(|i| (f(i + 2) - f(i - 2)) / 2.0).collect();
        let mean = g.iter().sum::<f64>() / 8.0;
        assert!(mean.abs() < 1e-15);
        let expected = 0.25 * g.iter().map(|v| v * v).sum::<f64>() / 8.0;
        let r = d6(&x, w(2), None, Variant::AsPrinted).unwrap();
        assert!((r.value - expected).abs() < 1e-15);
    }

    #[test]
    fn negative_flag_only_from_signed_estimators() {
        let x = s(&[0.0, 0.1, 0.2, 0.3, 0.35, 0.4, 0.5, 0.9, 1.0, 1.05]);
        let r = d5(&x, w(2), Variant::AsPrinted).unwrap();
        assert_eq!(r.negative, r.value < 0.0);
        let r = d1(&x, w(2)).unwrap();
        assert!(!r.negative);
    }

    #[test]
    fn dispatch_defaults() {
        let v: Vec<f64> = (0..20).map(|i| f64::from(i) * 0.37 + f64::from(i * i) * 0.01).collect();
        let x = Sample::new(v).unwrap();
        let r = estimate(&x, EstimatorId::D1, EstimatorSettings::default()).unwrap();
        assert_eq!(r.m, Some(6));
        let r = estimate(&x, EstimatorId::D4, EstimatorSettings::default()).unwrap();
        assert_eq!(r.h, Some(default_bandwidth(&x).unwrap()));
        let r = estimate(&x, EstimatorId::D2, EstimatorSettings { m: Some(12), h: None });
        assert_eq!(r, Err(Error::WindowTooLarge { m: 12, n: 20 }));
    }
}
