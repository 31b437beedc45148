//! Closed-form and numerically integrated extropy, varextropy and weighted
//! varextropy for a small family of reference distributions.

use core::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::math::{exp, lgamma, log, powu, sqrt, std_normal_pdf};
use crate::quadrature::Simpson;

/// Densities below this value are treated as the end of the support.
const DENSITY_FLOOR: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "snake_case"))]
pub enum DistributionSpec {
    Uniform { a: f64, b: f64 },
    Exponential { rate: f64 },
    Normal { mean: f64, variance: f64 },
    ChiSquare { dof: u32 },
    /// Density `2x` on (0, 1).
    TriangularUp,
    /// Density `2(1 - x)` on (0, 1).
    TriangularDown,
}

impl DistributionSpec {
    pub const STANDARD_NORMAL: DistributionSpec = DistributionSpec::Normal { mean: 0.0, variance: 1.0 };
    pub const STANDARD_UNIFORM: DistributionSpec = DistributionSpec::Uniform { a: 0.0, b: 1.0 };

    pub fn validate(&self) -> Result<()> {
        let bad = |name, value| Err(Error::InvalidParameter { name, value });
        match *self {
            Self::Uniform { a, b } => {
                if !(a.is_finite() && b.is_finite()) {
                    return bad("a", a);
                }
                if b <= a {
                    return bad("b", b);
                }
            }
            Self::Exponential { rate } if !(rate.is_finite() && rate > 0.0) => return bad("rate", rate),
            Self::Normal { mean, .. } if !mean.is_finite() => return bad("mean", mean),
            Self::Normal { variance, .. } if !(variance.is_finite() && variance > 0.0) => {
                return bad("variance", variance)
            }
            Self::ChiSquare { dof: 0 } => return bad("dof", 0.0),
            _ => {}
        }
        Ok(())
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            Self::Uniform { a, b } => {
                if (a..=b).contains(&x) {
                    1.0 / (b - a)
                } else {
                    0.0
                }
            }
            Self::Exponential { rate } => {
                if x >= 0.0 {
                    rate * exp(-rate * x)
                } else {
                    0.0
                }
            }
            Self::Normal { mean, variance } => {
                let sd = sqrt(variance);
                std_normal_pdf((x - mean) / sd) / sd
            }
            Self::ChiSquare { dof } => {
                if x < 0.0 {
                    return 0.0;
                }
                if x == 0.0 {
                    return match dof {
                        1 => f64::INFINITY,
                        2 => 0.5,
                        _ => 0.0,
                    };
                }
                let k = f64::from(dof) / 2.0;
                exp((k - 1.0) * log(x) - x / 2.0 - k * LN_2 - lgamma(k))
            }
            Self::TriangularUp => {
                if (0.0..=1.0).contains(&x) {
                    2.0 * x
                } else {
                    0.0
                }
            }
            Self::TriangularDown => {
                if (0.0..=1.0).contains(&x) {
                    2.0 * (1.0 - x)
                } else {
                    0.0
                }
            }
        }
    }

    /// Whether the law is symmetric about some centre.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, Self::Uniform { .. } | Self::Normal { .. })
    }

    /// Integration range: the support, cut where the density drops below
    /// `DENSITY_FLOOR`.
    fn truncated_support(&self) -> (f64, f64) {
        match *self {
            Self::Uniform { a, b } => (a, b),
            Self::Exponential { rate } => (0.0, log(rate / DENSITY_FLOOR).max(1.0) / rate),
            Self::Normal { mean, variance } => {
                let sd = sqrt(variance);
                let peak = std_normal_pdf(0.0) / sd;
                let k = sqrt(2.0 * log(peak / DENSITY_FLOOR).max(0.0)).max(8.0);
                (mean - k * sd, mean + k * sd)
            }
            Self::ChiSquare { dof } => {
                let mut hi = f64::from(dof).max(2.0);
                while self.pdf(hi) >= DENSITY_FLOOR {
                    hi *= 2.0;
                }
                (0.0, hi)
            }
            Self::TriangularUp | Self::TriangularDown => (0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WeightFunction {
    /// `w(x) = 1`
    #[default]
    Unit,
    /// `w(x) = x`
    Identity,
}

impl WeightFunction {
    fn power(self) -> u32 {
        match self {
            Self::Unit => 0,
            Self::Identity => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AnalyticValue {
    pub value: f64,
    pub method: Method,
}

impl AnalyticValue {
    fn closed(value: f64) -> Self {
        AnalyticValue { value, method: Method::ClosedForm }
    }
    fn numeric(value: f64) -> Self {
        AnalyticValue { value, method: Method::Quadrature }
    }
}

/// `integral of x^k f(x)^p` over the (truncated) support.
pub fn density_moment(d: &DistributionSpec, k: u32, p: u32) -> Result<f64> {
    d.validate()?;
    let (lo, hi) = d.truncated_support();
    let rule = Simpson {
        initial_intervals: 256,
        max_intervals: 1 << 20,
        rel_tol: 1e-12,
        accept_at_cap: 1e-9,
    };
    match d {
        // x = t^2 removes the square-root behaviour at the origin.
        DistributionSpec::ChiSquare { .. } => rule.integrate(
            |t| {
                let x = t * t;
                powu(x, k) * powu(d.pdf(x), p) * 2.0 * t
            },
            sqrt(lo),
            sqrt(hi),
        ),
        _ => rule.integrate(|x| powu(x, k) * powu(d.pdf(x), p), lo, hi),
    }
}

/// `J = -1/2 integral f^2`.
pub fn extropy(d: &DistributionSpec) -> Result<AnalyticValue> {
    d.validate()?;
    let closed = match *d {
        DistributionSpec::Uniform { a, b } => Some(-0.5 / (b - a)),
        DistributionSpec::Exponential { rate } => Some(-rate / 4.0),
        DistributionSpec::Normal { variance, .. } => Some(-1.0 / (4.0 * sqrt(PI * variance))),
        DistributionSpec::TriangularUp | DistributionSpec::TriangularDown => Some(-2.0 / 3.0),
        DistributionSpec::ChiSquare { .. } => None,
    };
    match closed {
        Some(v) => Ok(AnalyticValue::closed(v)),
        None => extropy_by_quadrature(d).map(AnalyticValue::numeric),
    }
}

pub fn extropy_by_quadrature(d: &DistributionSpec) -> Result<f64> {
    Ok(-0.5 * density_moment(d, 0, 2)?)
}

/// `VJ = 1/4 integral f^3 - 1/4 (integral f^2)^2`.
pub fn varextropy(d: &DistributionSpec) -> Result<AnalyticValue> {
    d.validate()?;
    let closed = match *d {
        DistributionSpec::Uniform { .. } => Some(0.0),
        DistributionSpec::Exponential { rate } => Some(rate * rate / 48.0),
        DistributionSpec::Normal { variance, .. } => {
            Some((2.0 - sqrt(3.0)) / (16.0 * PI * variance * sqrt(3.0)))
        }
        DistributionSpec::TriangularUp | DistributionSpec::TriangularDown => Some(1.0 / 18.0),
        DistributionSpec::ChiSquare { .. } => None,
    };
    match closed {
        Some(v) => Ok(AnalyticValue::closed(v)),
        None => varextropy_by_quadrature(d).map(AnalyticValue::numeric),
    }
}

pub fn varextropy_by_quadrature(d: &DistributionSpec) -> Result<f64> {
    weighted_varextropy_by_quadrature(d, WeightFunction::Unit)
}

/// `VJ^w = 1/4 [integral w^2 f^3 - (integral w f^2)^2]`.
pub fn weighted_varextropy(d: &DistributionSpec, w: WeightFunction) -> Result<AnalyticValue> {
    if w == WeightFunction::Unit {
        return varextropy(d);
    }
    d.validate()?;
    let closed = match *d {
        DistributionSpec::Uniform { .. } => Some(1.0 / 48.0),
        DistributionSpec::Exponential { .. } => Some(5.0 / 1728.0),
        DistributionSpec::Normal { mean, variance } => {
            // f^3 is a multiple of the N(mean, variance/3) density.
            let i3 = 1.0 / (2.0 * PI * variance * sqrt(3.0));
            let i2 = 1.0 / (2.0 * sqrt(PI * variance));
            let second = i3 * (mean * mean + variance / 3.0);
            let first = i2 * mean;
            Some(0.25 * (second - first * first))
        }
        DistributionSpec::TriangularUp => Some(1.0 / 12.0),
        DistributionSpec::TriangularDown => Some(1.0 / 180.0),
        DistributionSpec::ChiSquare { .. } => None,
    };
    match closed {
        Some(v) => Ok(AnalyticValue::closed(v)),
        None => weighted_varextropy_by_quadrature(d, w).map(AnalyticValue::numeric),
    }
}

pub fn weighted_varextropy_by_quadrature(d: &DistributionSpec, w: WeightFunction) -> Result<f64> {
    let k = w.power();
    let cube = density_moment(d, 2 * k, 3)?;
    let square = density_moment(d, k, 2)?;
    Ok(0.25 * (cube - square * square))
}

/// Varextropy of the n-th upper record of an exponential(rate) sample:
/// `(rate^2/16) [4 G(3n-2) / (G(n)^3 3^(3n-2)) - G(2n-1)^2 / (G(n)^4 4^(2n-2))]`,
/// evaluated in log space.
pub fn record_varextropy_exponential(n: u32, rate: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter { name: "n", value: 0.0 });
    }
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::InvalidParameter { name: "rate", value: rate });
    }
    let n = f64::from(n);
    let lg_n = lgamma(n);
    let first = exp(2.0 * LN_2 + lgamma(3.0 * n - 2.0) - 3.0 * lg_n - (3.0 * n - 2.0) * log(3.0));
    let second = exp(2.0 * lgamma(2.0 * n - 1.0) - 4.0 * lg_n - (2.0 * n - 2.0) * 2.0 * LN_2);
    Ok(rate * rate / 16.0 * (first - second))
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIT: DistributionSpec = DistributionSpec::Uniform { a: 0.0, b: 1.0 };

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn extropy_examples() {
        assert_eq!(extropy(&UNIT).unwrap().value, -0.5);
        assert_eq!(extropy(&DistributionSpec::Exponential { rate: 2.0 }).unwrap().value, -0.5);
        assert_eq!(extropy(&DistributionSpec::TriangularUp).unwrap().value, -2.0 / 3.0);
        let v = varextropy(&DistributionSpec::Exponential { rate: 2.0 }).unwrap().value;
        assert!(close(v, 1.0 / 12.0, 1e-15));
    }

    #[test]
    fn uniform_extropy_decreases_with_width() {
        let widths = [1.0, 2.0, 4.0];
        let vals: alloc::vec::Vec<f64> = widths
            .iter()
            .map(|w| extropy(&DistributionSpec::Uniform { a: 3.0, b: 3.0 + w }).unwrap().value)
            .collect();
        for (w, v) in widths.iter().zip(&vals) {
            assert_eq!(*v, -1.0 / (2.0 * w));
        }
        assert!(vals[0] < vals[1] && vals[1] < vals[2]);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let specs = [
            UNIT,
            DistributionSpec::Uniform { a: -2.0, b: 5.0 },
            DistributionSpec::Exponential { rate: 0.5 },
            DistributionSpec::Exponential { rate: 3.0 },
            DistributionSpec::Normal { mean: 1.5, variance: 0.7 },
            DistributionSpec::Normal { mean: -4.0, variance: 9.0 },
            DistributionSpec::TriangularUp,
            DistributionSpec::TriangularDown,
        ];
        for d in specs {
            assert!(close(extropy(&d).unwrap().value, extropy_by_quadrature(&d).unwrap(), 1e-8), "{d:?}");
            assert!(close(varextropy(&d).unwrap().value, varextropy_by_quadrature(&d).unwrap(), 1e-8), "{d:?}");
            let w = WeightFunction::Identity;
            assert!(
                close(
                    weighted_varextropy(&d, w).unwrap().value,
                    weighted_varextropy_by_quadrature(&d, w).unwrap(),
                    1e-8
                ),
                "{d:?}"
            );
        }
    }

    #[test]
    fn unit_weight_is_varextropy() {
        for d in [DistributionSpec::TriangularUp, DistributionSpec::Exponential { rate: 1.3 }] {
            let a = weighted_varextropy(&d, WeightFunction::Unit).unwrap().value;
            let b = varextropy(&d).unwrap().value;
            assert!(close(a, b, 1e-10));
            let a = weighted_varextropy_by_quadrature(&d, WeightFunction::Unit).unwrap();
            assert!(close(a, b, 1e-10));
        }
    }

    #[test]
    fn chi_square_uses_quadrature() {
        // chi-square(2) is exponential(1/2).
        let v = varextropy(&DistributionSpec::ChiSquare { dof: 2 }).unwrap();
        assert_eq!(v.method, Method::Quadrature);
        assert!(close(v.value, 0.25 / 48.0, 1e-10));
        let j = extropy(&DistributionSpec::ChiSquare { dof: 2 }).unwrap();
        assert!(close(j.value, -0.125, 1e-10));
        let v3 = varextropy(&DistributionSpec::ChiSquare { dof: 3 }).unwrap().value;
        assert!(v3 > 0.0);
        assert_eq!(
            varextropy(&DistributionSpec::ChiSquare { dof: 1 }),
            Err(Error::DivergentIntegral)
        );
    }

    #[test]
    fn only_uniform_has_zero_varextropy() {
        let specs = [
            DistributionSpec::Uniform { a: 2.0, b: 2.5 },
            DistributionSpec::Exponential { rate: 1.0 },
            DistributionSpec::Normal { mean: 0.0, variance: 1.0 },
            DistributionSpec::ChiSquare { dof: 4 },
            DistributionSpec::TriangularUp,
            DistributionSpec::TriangularDown,
        ];
        for d in specs {
            let v = varextropy(&d).unwrap().value;
            if matches!(d, DistributionSpec::Uniform { .. }) {
                assert_eq!(v, 0.0);
            } else {
                assert!(v > 0.0, "{d:?}");
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(extropy(&DistributionSpec::Uniform { a: 1.0, b: 1.0 }).is_err());
        assert!(extropy(&DistributionSpec::Exponential { rate: 0.0 }).is_err());
        assert!(extropy(&DistributionSpec::Normal { mean: 0.0, variance: -1.0 }).is_err());
        assert!(extropy(&DistributionSpec::ChiSquare { dof: 0 }).is_err());
    }

    // Direct evaluation with factorials, independent of lgamma.
    fn record_oracle(n: u32, rate: f64) -> f64 {
        let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
        let g = |x: u32| fact(x - 1);
        let n3 = 3 * n - 2;
        let first = 4.0 * g(n3) / (g(n).powi(3) * 3f64.powi(n3 as i32));
        let second = g(2 * n - 1).powi(2) / (g(n).powi(4) * 4f64.powi(2 * n as i32 - 2));
        rate * rate / 16.0 * (first - second)
    }

    #[test]
    fn record_varextropy() {
        assert!(close(record_varextropy_exponential(1, 1.0).unwrap(), 1.0 / 48.0, 1e-15));
        for rate in [0.5, 2.0, 7.0] {
            let v = record_varextropy_exponential(1, rate).unwrap();
            let direct = varextropy(&DistributionSpec::Exponential { rate }).unwrap().value;
            assert!(close(v, direct, 1e-14 * direct.max(1.0)));
        }
        for n in 1..=10 {
            let v = record_varextropy_exponential(n, 1.3).unwrap();
            assert!(v >= 0.0);
            assert!(close(v, record_oracle(n, 1.3), 1e-12), "n={n}");
        }
        assert!(record_varextropy_exponential(500, 1.0).unwrap().is_finite());
        assert!(record_varextropy_exponential(0, 1.0).is_err());
    }

    #[test]
    fn record_matches_gamma_density_quadrature() {
        // The n-th upper record of exponential(rate) is Gamma(n, rate).
        for n in [2u32, 4] {
            let rate = 1.5;
            let gamma_pdf = |x: f64| {
                if x <= 0.0 {
                    0.0
                } else {
                    exp(f64::from(n) * log(rate) + f64::from(n - 1) * log(x) - rate * x - lgamma(f64::from(n)))
                }
            };
            let rule = Simpson::default();
            let i2 = rule.integrate(|x| powu(gamma_pdf(x), 2), 0.0, 60.0).unwrap();
            let i3 = rule.integrate(|x| powu(gamma_pdf(x), 3), 0.0, 60.0).unwrap();
            let vj = 0.25 * i3 - 0.25 * i2 * i2;
            assert!(close(record_varextropy_exponential(n, rate).unwrap(), vj, 1e-9));
        }
    }
}
