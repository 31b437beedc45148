//! Machine-readable record of one CLI run.

use serde::Serialize;
use serde_json::Value;

use extropy_core::{AnalyticValue, DistributionSpec, EstimatorReport, TestReport};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    /// `dataset-K` or the file path.
    pub source: String,
    pub n: usize,
    /// SHA-256 of the values in canonical one-per-line form.
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub seed: u64,
    pub replicates: Option<usize>,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticResult {
    pub distribution: DistributionSpec,
    pub measure: &'static str,
    pub weight: Option<&'static str>,
    #[serde(flatten)]
    pub value: AnalyticValue,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableResult {
    pub table: u32,
    pub rows: usize,
    pub out: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Results {
    Estimate(EstimatorReport),
    Test(TestReport),
    Analytic(AnalyticResult),
    Table(TableResult),
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input: Option<InputDigest>,
    pub settings: Value,
    pub results: Results,
    pub provenance: Provenance,
}

impl RunReport {
    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}
