//! Packaged tests: symmetry about a center via the record-weighted spacing
//! statistic, and goodness of fit to the uniform law on `[0, 1]` via a
//! varextropy estimator.

use crate::analytic::DistributionSpec;
use crate::error::{Error, Result};
use crate::estimators::{estimate, EstimatorId, EstimatorSettings};
use crate::mc::{
    p_value_from, replicate_statistics, symmetry_null_columns, two_sided_critical_value, upper_critical_value,
    CriticalBasis, Executor, MonteCarloConfig, PValueMode, Purpose,
};
use crate::sample::{Sample, SpacingConfig};
use crate::symmetry::{RecordOrder, SymmetryWeights};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Decision {
    Reject,
    DoNotReject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TestKind {
    Symmetry,
    Uniformity,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TestProvenance {
    pub seed: u64,
    pub replicates: usize,
    pub null: DistributionSpec,
    pub p_value_mode: PValueMode,
    pub critical_basis: Option<CriticalBasis>,
    pub estimator: Option<EstimatorId>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TestReport {
    pub test: TestKind,
    pub n: usize,
    pub m: Option<usize>,
    pub statistic: f64,
    pub critical_value: f64,
    pub alpha: f64,
    pub p_value: f64,
    pub decision: Decision,
    pub provenance: TestProvenance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryTestOptions {
    pub order: RecordOrder,
    pub null: DistributionSpec,
    pub p_value_mode: PValueMode,
    pub basis: CriticalBasis,
}

impl Default for SymmetryTestOptions {
    fn default() -> Self {
        SymmetryTestOptions {
            order: RecordOrder::default(),
            null: DistributionSpec::STANDARD_NORMAL,
            p_value_mode: PValueMode::default(),
            basis: CriticalBasis::default(),
        }
    }
}

/// Symmetry test. The critical value and the `p`-value come from one null
/// pool of `mc.replicates` samples of the same size; the hypothesis is
/// rejected when `|T| > c`.
pub fn symmetry_test<E: Executor>(
    exec: &E,
    sample: &Sample,
    window: SpacingConfig,
    alpha: f64,
    options: SymmetryTestOptions,
    mc: &MonteCarloConfig,
) -> Result<TestReport> {
    let n = sample.len();
    let statistic = SymmetryWeights::new(n, options.order).evaluate(sample, window)?;
    let null = symmetry_null_columns(exec, n, &[window], options.order, &options.null, Purpose::Null, mc)?;
    let critical_value = two_sided_critical_value(&null[0], alpha, options.basis)?;
    let decision = if statistic.abs() > critical_value { Decision::Reject } else { Decision::DoNotReject };
    Ok(TestReport {
        test: TestKind::Symmetry,
        n,
        m: Some(window.m),
        statistic,
        critical_value,
        alpha,
        p_value: p_value_from(&null[0], statistic, options.p_value_mode),
        decision,
        provenance: TestProvenance {
            seed: mc.seed,
            replicates: mc.replicates,
            null: options.null,
            p_value_mode: options.p_value_mode,
            critical_basis: Some(options.basis),
            estimator: None,
        },
    })
}

/// Uniformity test on `[0, 1]`. The statistic is a varextropy estimate,
/// which vanishes for the uniform law; large values reject at the upper
/// `(1 - alpha)` null quantile.
pub fn uniformity_test<E: Executor>(
    exec: &E,
    sample: &Sample,
    estimator: EstimatorId,
    settings: EstimatorSettings,
    alpha: f64,
    mc: &MonteCarloConfig,
) -> Result<TestReport> {
    if let Some(index) = sample.values().iter().position(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::SupportViolation { index, value: sample.values()[index] });
    }
    let n = sample.len();
    let observed = estimate(sample, estimator, settings)?;
    let null = DistributionSpec::STANDARD_UNIFORM;
    let pinned = EstimatorSettings { m: observed.m, h: settings.h };
    let stats = replicate_statistics(exec, n, &null, Purpose::Null, mc, |s| {
        estimate(s, estimator, pinned).map(|r| r.value)
    })?;
    let critical_value = upper_critical_value(&stats, alpha)?;
    let statistic = observed.value;
    let decision = if statistic > critical_value { Decision::Reject } else { Decision::DoNotReject };
    Ok(TestReport {
        test: TestKind::Uniformity,
        n,
        m: observed.m,
        statistic,
        critical_value,
        alpha,
        p_value: p_value_from(&stats, statistic, PValueMode::Upper),
        decision,
        provenance: TestProvenance {
            seed: mc.seed,
            replicates: mc.replicates,
            null,
            p_value_mode: PValueMode::Upper,
            critical_basis: None,
            estimator: Some(estimator),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::{replicate_rng, sample_from, Serial};

    fn mc(replicates: usize) -> MonteCarloConfig {
        MonteCarloConfig::new(replicates, 9).unwrap()
    }

    #[test]
    fn symmetric_data_is_not_rejected() {
        let s = Sample::new((1..=30).map(f64::from).collect()).unwrap();
        let w = SpacingConfig::new(3).unwrap();
        let r = symmetry_test(&Serial, &s, w, 0.05, SymmetryTestOptions::default(), &mc(500)).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.decision, Decision::DoNotReject);
        assert!(r.p_value > 0.3 && r.p_value < 0.7);
    }

    #[test]
    fn skewed_data_is_rejected() {
        let mut rng = replicate_rng(4, Purpose::Synthetic, 0);
        let s = sample_from(&DistributionSpec::ChiSquare { dof: 1 }, 100, &mut rng).unwrap();
        let w = SpacingConfig::new(10).unwrap();
        let r = symmetry_test(&Serial, &s, w, 0.05, SymmetryTestOptions::default(), &mc(500)).unwrap();
        assert!(r.statistic > r.critical_value);
        assert_eq!(r.decision, Decision::Reject);
        assert_eq!(r.p_value, 0.0);
    }

    #[test]
    fn decision_matches_comparison() {
        let mut rng = replicate_rng(5, Purpose::Synthetic, 0);
        for _ in 0..5 {
            let s = sample_from(&DistributionSpec::STANDARD_NORMAL, 25, &mut rng).unwrap();
            let w = SpacingConfig::new(2).unwrap();
            let r = symmetry_test(&Serial, &s, w, 0.10, SymmetryTestOptions::default(), &mc(200)).unwrap();
            assert_eq!(r.decision == Decision::Reject, r.statistic.abs() > r.critical_value);
        }
    }

    #[test]
    fn uniformity_support_is_checked() {
        let s = Sample::new(alloc::vec![0.1, 0.5, 1.2]).unwrap();
        let r = uniformity_test(&Serial, &s, EstimatorId::D2, EstimatorSettings::default(), 0.05, &mc(100));
        assert_eq!(r, Err(Error::SupportViolation { index: 2, value: 1.2 }));
    }

    #[test]
    fn uniformity_test_separates_laws() {
        let mut rng = replicate_rng(6, Purpose::Synthetic, 0);
        let u = sample_from(&DistributionSpec::STANDARD_UNIFORM, 200, &mut rng).unwrap();
        let t = sample_from(&DistributionSpec::TriangularUp, 200, &mut rng).unwrap();
        let settings = EstimatorSettings { m: Some(10), h: None };
        let ru = uniformity_test(&Serial, &u, EstimatorId::D2, settings, 0.05, &mc(400)).unwrap();
        let rt = uniformity_test(&Serial, &t, EstimatorId::D2, settings, 0.05, &mc(400)).unwrap();
        assert_eq!(ru.m, Some(10));
        assert!(rt.statistic > ru.statistic);
        assert_eq!(rt.decision, Decision::Reject);
        assert!(rt.p_value < 0.01);
    }
}
