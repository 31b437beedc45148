//! Record-value extropy statistic for testing symmetry.
//!
//! The statistic contrasts the cumulative residual extropy of the n-th upper
//! k-record with the cumulative past extropy of the n-th lower k-record. Both
//! are integrals of a weight against the quantile density; replacing the
//! quantile density by scaled m-spacings gives
//!
//! `T = -(1/(2N)) sum_i W(i/(N+1)) (X_{i+m:N} - X_{i-m:N}) / (2m/N)`
//!
//! with `W(u) = (1-u)^{2k} P(-k log(1-u))^2 - u^{2k} P(-k log u)^2` and
//! `P(t) = sum_{j<n} t^j / j!`. `T` is zero for a symmetric law.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{exp_series, log, powu};
use crate::sample::{Sample, SpacingConfig};

/// Record index `n_rec` and record depth `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RecordOrder {
    pub n_rec: u32,
    pub k: u32,
}

impl RecordOrder {
    pub fn new(n_rec: u32, k: u32) -> Result<Self> {
        if n_rec == 0 || k == 0 {
            return Err(Error::InvalidRecordOrder);
        }
        Ok(RecordOrder { n_rec, k })
    }

    /// Squared record tail `v^{2k} P(-k log v)^2`.
    fn tail(self, v: f64) -> f64 {
        let p = exp_series(-f64::from(self.k) * log(v), self.n_rec);
        powu(v, 2 * self.k) * p * p
    }
}

impl Default for RecordOrder {
    /// `n_rec = 2`, `k = 2`.
    fn default() -> Self {
        RecordOrder { n_rec: 2, k: 2 }
    }
}

/// `W(u)`; antisymmetric about `u = 1/2`.
pub fn record_weight(u: f64, order: RecordOrder) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::OutsideOpenUnit(u));
    }
    Ok(order.tail(1.0 - u) - order.tail(u))
}

/// Weights `W(i/(N+1))` for `i = 1..=N`, with `u` and `1 - u` both formed
/// from integers so that `W_i = -W_{N+1-i}` holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryWeights {
    order: RecordOrder,
    weights: Vec<f64>,
}

impl SymmetryWeights {
    pub fn new(n: usize, order: RecordOrder) -> Self {
        let denom = (n + 1) as f64;
        let weights = (1..=n)
            .map(|i| {
                let u = i as f64 / denom;
                let ubar = (n + 1 - i) as f64 / denom;
                order.tail(ubar) - order.tail(u)
            })
            .collect();
        SymmetryWeights { order, weights }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> RecordOrder {
        self.order
    }

    /// Statistic for a sample of matching size.
    pub fn evaluate(&self, sample: &Sample, window: SpacingConfig) -> Result<f64> {
        let n = sample.len();
        debug_assert_eq!(n, self.weights.len());
        if n < 3 {
            return Err(Error::TooFewObservations { needed: 3, got: n });
        }
        window.check(n)?;
        let nf = n as f64;
        // Mirror-image terms are paired so a symmetric configuration
        // cancels exactly.
        let sum: f64 = (1..=n / 2)
            .map(|i| self.weights[i - 1] * (sample.spacing(window, i) - sample.spacing(window, n + 1 - i)))
            .sum();
        Ok(-sum / (2.0 * nf) / (2.0 * window.m as f64 / nf))
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SymmetryStatistic {
    pub value: f64,
    pub n_rec: u32,
    pub k: u32,
    pub m: usize,
    pub n: usize,
    pub weights: Vec<f64>,
}

pub fn symmetry_statistic(sample: &Sample, window: SpacingConfig, order: RecordOrder) -> Result<SymmetryStatistic> {
    let weights = SymmetryWeights::new(sample.len(), order);
    let value = weights.evaluate(sample, window)?;
    Ok(SymmetryStatistic {
        value,
        n_rec: order.n_rec,
        k: order.k,
        m: window.m,
        n: sample.len(),
        weights: weights.weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weight_vanishes_at_half() {
        for (n, k) in [(1, 1), (2, 2), (3, 5), (6, 1)] {
            let w = record_weight(0.5, RecordOrder::new(n, k).unwrap()).unwrap();
            assert_eq!(w, 0.0);
        }
    }

    #[test]
    fn weight_at_quarter() {
        let w = record_weight(0.25, RecordOrder::default()).unwrap();
        let expected = 0.75f64.powi(4) * (1.0 - 2.0 * 0.75f64.ln()).powi(2)
            - 0.25f64.powi(4) * (1.0 - 2.0 * 0.25f64.ln()).powi(2);
        assert!((w - expected).abs() < 1e-15);
    }

    #[test]
    fn weight_antisymmetric() {
        let ro = RecordOrder::default();
        for u in [0.1, 0.3, 0.45] {
            let a = record_weight(u, ro).unwrap();
            let b = record_weight(1.0 - u, ro).unwrap();
            assert!((a + b).abs() < 1e-12);
        }
        for n in [3, 10, 51, 200] {
            let w = SymmetryWeights::new(n, RecordOrder::new(3, 2).unwrap());
            for i in 0..n {
                assert_eq!(w.as_slice()[i], -w.as_slice()[n - 1 - i]);
            }
        }
    }

    #[test]
    fn weight_domain() {
        let ro = RecordOrder::default();
        assert_eq!(record_weight(0.0, ro), Err(Error::OutsideOpenUnit(0.0)));
        assert_eq!(record_weight(1.0, ro), Err(Error::OutsideOpenUnit(1.0)));
        assert!(record_weight(f64::NAN, ro).is_err());
        assert_eq!(RecordOrder::new(0, 2), Err(Error::InvalidRecordOrder));
        assert_eq!(RecordOrder::new(2, 0), Err(Error::InvalidRecordOrder));
    }

    #[test]
    fn palindromic_sample_is_zero() {
        let x = Sample::from_slice(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let w = SpacingConfig::new(2).unwrap();
        let t = symmetry_statistic(&x, w, RecordOrder::default()).unwrap();
        assert_eq!(t.value, 0.0);
        assert_eq!((t.n_rec, t.k, t.m, t.n), (2, 2, 2, 5));
        assert_eq!(t.weights.len(), 5);
    }

    #[test]
    fn preconditions() {
        let x = Sample::from_slice(&[1.0, 2.0]).unwrap();
        let w = SpacingConfig::new(1).unwrap();
        assert!(symmetry_statistic(&x, w, RecordOrder::default()).is_err());
        let x = Sample::from_slice(&[1.0, 2.0, 4.0, 8.0]).unwrap();
        assert_eq!(
            symmetry_statistic(&x, SpacingConfig::new(2).unwrap(), RecordOrder::default()),
            Err(Error::WindowTooLarge { m: 2, n: 4 })
        );
    }

    #[test]
    fn right_skew_is_positive() {
        let x = Sample::from_slice(&[0.1, 0.2, 0.3, 0.5, 0.8, 1.3, 2.1, 3.4, 5.5, 8.9]).unwrap();
        let t = symmetry_statistic(&x, SpacingConfig::new(2).unwrap(), RecordOrder::default()).unwrap();
        assert!(t.value > 0.0);
    }

    proptest! {
        #[test]
        fn reflection_flips_sign(v in prop::collection::vec(-100.0f64..100.0, 5..60), m in 1usize..5) {
            let x = Sample::new(v.clone()).unwrap();
            prop_assume!(2 * m < x.len());
            let y = Sample::new(v.iter().map(|t| -t).collect()).unwrap();
            let w = SpacingConfig::new(m).unwrap();
            let ro = RecordOrder::default();
            let tx = symmetry_statistic(&x, w, ro).unwrap().value;
            let ty = symmetry_statistic(&y, w, ro).unwrap().value;
            prop_assert!((tx + ty).abs() <= 1e-10 * (1.0 + tx.abs()));
        }

        #[test]
        fn location_shift_invariant(v in prop::collection::vec(-10.0f64..10.0, 5..60), b in -50.0f64..50.0) {
            let x = Sample::new(v).unwrap();
            let y = x.affine(1.0, b).unwrap();
            let w = SpacingConfig::new(1).unwrap();
            let ro = RecordOrder::default();
            let tx = symmetry_statistic(&x, w, ro).unwrap().value;
            let ty = symmetry_statistic(&y, w, ro).unwrap().value;
            prop_assert!((tx - ty).abs() <= 1e-9 * (1.0 + tx.abs()));
        }
    }
}
