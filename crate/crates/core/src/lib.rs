//! Extropy and varextropy estimation, a spacing-based symmetry test and the
//! Monte Carlo machinery behind both.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod analytic;
pub mod error;
pub mod estimators;
pub mod hypothesis;
pub mod kde;
pub mod math;
pub mod mc;
pub mod quadrature;
pub mod sample;
pub mod symmetry;

pub use analytic::{AnalyticValue, DistributionSpec, Method, WeightFunction};
pub use error::{Error, Result};
pub use estimators::{estimate, EstimatorId, EstimatorReport, EstimatorSettings, Variant};
pub use hypothesis::{symmetry_test, uniformity_test, Decision, SymmetryTestOptions, TestReport};
pub use kde::{default_bandwidth, KernelDensity};
pub use mc::{CriticalBasis, Executor, MonteCarloConfig, PValueMode, Serial};
pub use sample::{Sample, SpacingConfig};
pub use symmetry::{symmetry_statistic, RecordOrder, SymmetryStatistic, SymmetryWeights};
