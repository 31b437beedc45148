//! Seeded Monte Carlo machinery: per-replicate random streams, sampling from
//! reference laws, critical values, power and empirical p-values.
//!
//! Replicate `r` of a run with seed `s` draws from a ChaCha8 generator keyed
//! by `(s, purpose)` on stream `r`, so its numbers depend on nothing but
//! `(s, purpose, r)`. Results are collected in replicate order and all
//! reductions run afterwards, which makes every output independent of how
//! an [`Executor`] schedules the replicates.

use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::analytic::DistributionSpec;
use crate::error::{Error, Result};
use crate::math::{log, sqrt, std_normal_quantile};
use crate::sample::{quantile_sorted, Sample, SpacingConfig};
use crate::symmetry::{RecordOrder, SymmetryWeights};

pub const DEFAULT_REPLICATES: usize = 10_000;
pub const MIN_REPLICATES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MonteCarloConfig {
    pub replicates: usize,
    pub seed: u64,
    /// Worker threads requested from the executor; never affects results.
    pub workers: Option<usize>,
}

impl MonteCarloConfig {
    pub fn new(replicates: usize, seed: u64) -> Result<Self> {
        let cfg = MonteCarloConfig { replicates, seed, workers: None };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers.max(1));
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates < MIN_REPLICATES {
            return Err(Error::TooFewReplicates { min: MIN_REPLICATES, got: self.replicates });
        }
        Ok(())
    }
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig { replicates: DEFAULT_REPLICATES, seed: 0, workers: None }
    }
}

/// Independent families of streams under one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purpose {
    Null = 1,
    Alternative = 2,
    Synthetic = 3,
}

/// Generator for replicate `index` of the given purpose.
pub fn replicate_rng(seed: u64, purpose: Purpose, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(purpose as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Uniform draw on the open interval (0, 1) with 53 random bits.
#[inline]
pub fn uniform_open<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// One draw by inversion (chi-square as a sum of squared normals).
pub fn draw<R: RngCore>(d: &DistributionSpec, rng: &mut R) -> f64 {
    match *d {
        DistributionSpec::Uniform { a, b } => a + (b - a) * uniform_open(rng),
        DistributionSpec::Exponential { rate } => -log(uniform_open(rng)) / rate,
        DistributionSpec::Normal { mean, variance } => {
            mean + sqrt(variance) * std_normal_quantile(uniform_open(rng))
        }
        DistributionSpec::ChiSquare { dof } => (0..dof)
            .map(|_| {
                let z = std_normal_quantile(uniform_open(rng));
                z * z
            })
            .sum(),
        DistributionSpec::TriangularUp => sqrt(uniform_open(rng)),
        DistributionSpec::TriangularDown => 1.0 - sqrt(uniform_open(rng)),
    }
}

/// `n` independent draws from `d`.
pub fn sample_from<R: RngCore>(d: &DistributionSpec, n: usize, rng: &mut R) -> Result<Sample> {
    d.validate()?;
    Sample::new((0..n).map(|_| draw(d, rng)).collect())
}

/// Runs independent replicate closures, returning results in index order.
pub trait Executor: Sync {
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every replicate on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl Executor for Serial {
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}

/// How `p`-values are read off the null distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum PValueMode {
    /// Fraction of null statistics strictly above the observed signed value.
    #[default]
    Upper,
    /// Fraction of null statistics whose magnitude exceeds `|observed|`.
    TwoSided,
}

/// What the `(1 - alpha/2)` quantile is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CriticalBasis {
    /// Signed null statistics. Rejecting on `|T| > c` then has size `alpha`
    /// for a null law symmetric in distribution.
    #[default]
    Signed,
    /// Absolute null statistics; the resulting two-sided test has size
    /// `alpha / 2`.
    Absolute,
}

/// Replicated statistics of `n`-samples from `d`, one entry per replicate.
pub fn replicate_statistics<E, S, T>(
    exec: &E,
    n: usize,
    d: &DistributionSpec,
    purpose: Purpose,
    mc: &MonteCarloConfig,
    statistic: S,
) -> Result<Vec<T>>
where
    E: Executor,
    T: Send,
    S: Fn(&Sample) -> Result<T> + Sync + Send,
{
    mc.validate()?;
    d.validate()?;
    let seed = mc.seed;
    exec.map_indexed(mc.replicates, |r| {
        let mut rng = replicate_rng(seed, purpose, r as u64);
        let sample = sample_from(d, n, &mut rng)?;
        statistic(&sample)
    })
    .into_iter()
    .collect()
}

/// Symmetry statistics for several windows over one replicate pool.
/// Returns one column (vector over replicates) per window.
pub fn symmetry_null_columns<E: Executor>(
    exec: &E,
    n: usize,
    windows: &[SpacingConfig],
    order: RecordOrder,
    d: &DistributionSpec,
    purpose: Purpose,
    mc: &MonteCarloConfig,
) -> Result<Vec<Vec<f64>>> {
    for w in windows {
        w.check(n)?;
    }
    let weights = SymmetryWeights::new(n, order);
    let rows = replicate_statistics(exec, n, d, purpose, mc, |s| {
        windows.iter().map(|&w| weights.evaluate(s, w)).collect::<Result<Vec<f64>>>()
    })?;
    Ok((0..windows.len())
        .map(|j| rows.iter().map(|row| row[j]).collect())
        .collect())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// Two-sided critical value: the `(1 - alpha/2)` linear-interpolation
/// quantile of the null statistics (or of their magnitudes).
pub fn two_sided_critical_value(null: &[f64], alpha: f64, basis: CriticalBasis) -> Result<f64> {
    check_alpha(alpha)?;
    if null.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut v: Vec<f64> = match basis {
        CriticalBasis::Signed => null.to_vec(),
        CriticalBasis::Absolute => null.iter().map(|x| x.abs()).collect(),
    };
    v.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&v, 1.0 - alpha / 2.0))
}

/// One-sided upper critical value: the `(1 - alpha)` quantile.
pub fn upper_critical_value(null: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if null.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut v = null.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&v, 1.0 - alpha))
}

/// Monte Carlo `p`-value of `observed` against null statistics.
pub fn p_value_from(null: &[f64], observed: f64, mode: PValueMode) -> f64 {
    let count = match mode {
        PValueMode::Upper => null.iter().filter(|&&t| t > observed).count(),
        PValueMode::TwoSided => null.iter().filter(|&&t| t.abs() > observed.abs()).count(),
    };
    count as f64 / null.len() as f64
}

/// Fraction of statistics with `|t| > critical`.
pub fn rejection_rate(stats: &[f64], critical: f64) -> f64 {
    stats.iter().filter(|t| t.abs() > critical).count() as f64 / stats.len() as f64
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Provenance {
    pub seed: u64,
    pub replicates: usize,
    pub null: DistributionSpec,
    pub basis: CriticalBasis,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CriticalRow {
    pub m: usize,
    /// One critical value per entry of the table's `alphas`.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CriticalValueTable {
    pub n: usize,
    pub alphas: Vec<f64>,
    pub rows: Vec<CriticalRow>,
    /// Windows that violated `m < n/2` and were left out.
    pub skipped: Vec<usize>,
    /// Soft structural warnings (critical values rising with `m`).
    pub warnings: Vec<String>,
    pub provenance: Provenance,
}

impl CriticalValueTable {
    pub fn get(&self, m: usize, alpha: f64) -> Option<f64> {
        let col = self.alphas.iter().position(|&a| a == alpha)?;
        self.rows.iter().find(|r| r.m == m).map(|r| r.values[col])
    }
}

fn split_windows(n: usize, m_list: &[usize]) -> (Vec<SpacingConfig>, Vec<usize>) {
    let mut valid = Vec::new();
    let mut skipped = Vec::new();
    for &m in m_list {
        match SpacingConfig::new(m).and_then(|w| w.check(n)) {
            Ok(w) => valid.push(w),
            Err(_) => skipped.push(m),
        }
    }
    (valid, skipped)
}

/// Critical values of the symmetry statistic for sample size `n`, every
/// window in `m_list` and every level in `alphas`. One replicate pool is
/// shared by all windows.
#[allow(clippy::too_many_arguments)]
pub fn critical_values<E: Executor>(
    exec: &E,
    n: usize,
    m_list: &[usize],
    alphas: &[f64],
    order: RecordOrder,
    null: &DistributionSpec,
    basis: CriticalBasis,
    mc: &MonteCarloConfig,
) -> Result<CriticalValueTable> {
    for &a in alphas {
        check_alpha(a)?;
    }
    let (windows, skipped) = split_windows(n, m_list);
    let columns = symmetry_null_columns(exec, n, &windows, order, null, Purpose::Null, mc)?;
    let mut rows = Vec::with_capacity(windows.len());
    for (w, col) in windows.iter().zip(&columns) {
        let values = alphas
            .iter()
            .map(|&a| two_sided_critical_value(col, a, basis))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(CriticalRow { m: w.m, values });
    }
    let mut warnings = Vec::new();
    for pair in rows.windows(2) {
        for (j, &a) in alphas.iter().enumerate() {
            if pair[1].m > pair[0].m && pair[1].values[j] > pair[0].values[j] {
                warnings.push(alloc::format!(
                    "n={n}, alpha={a}: critical value rises from m={} to m={}",
                    pair[0].m,
                    pair[1].m
                ));
            }
        }
    }
    Ok(CriticalValueTable {
        n,
        alphas: alphas.to_vec(),
        rows,
        skipped,
        warnings,
        provenance: Provenance { seed: mc.seed, replicates: mc.replicates, null: *null, basis },
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PowerCell {
    pub m: usize,
    pub alpha: f64,
    pub critical_value: f64,
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PowerTable {
    pub n: usize,
    pub alternative: DistributionSpec,
    pub cells: Vec<PowerCell>,
    pub skipped: Vec<usize>,
    pub provenance: Provenance,
}

impl PowerTable {
    pub fn get(&self, m: usize, alpha: f64) -> Option<&PowerCell> {
        self.cells.iter().find(|c| c.m == m && c.alpha == alpha)
    }
}

/// Rejection rates of the symmetry test under `alternative` for every window
/// and level, with critical values from `null`. Null and alternative pools
/// use distinct streams, so `alternative == null` estimates the size.
#[allow(clippy::too_many_arguments)]
pub fn power_table<E: Executor>(
    exec: &E,
    n: usize,
    m_list: &[usize],
    alphas: &[f64],
    order: RecordOrder,
    null: &DistributionSpec,
    alternative: &DistributionSpec,
    basis: CriticalBasis,
    mc: &MonteCarloConfig,
) -> Result<PowerTable> {
    let table = critical_values(exec, n, m_list, alphas, order, null, basis, mc)?;
    let windows: Vec<SpacingConfig> = table.rows.iter().map(|r| SpacingConfig { m: r.m }).collect();
    let alt = symmetry_null_columns(exec, n, &windows, order, alternative, Purpose::Alternative, mc)?;
    let mut cells = Vec::new();
    for (row, col) in table.rows.iter().zip(&alt) {
        for (&alpha, &cv) in table.alphas.iter().zip(&row.values) {
            cells.push(PowerCell { m: row.m, alpha, critical_value: cv, power: rejection_rate(col, cv) });
        }
    }
    Ok(PowerTable { n, alternative: *alternative, cells, skipped: table.skipped, provenance: table.provenance })
}

/// Power of the default-order symmetry test at one `(n, m, alpha)`.
pub fn power<E: Executor>(
    exec: &E,
    n: usize,
    window: SpacingConfig,
    alpha: f64,
    null: &DistributionSpec,
    alternative: &DistributionSpec,
    mc: &MonteCarloConfig,
) -> Result<PowerCell> {
    window.check(n)?;
    let t = power_table(
        exec,
        n,
        &[window.m],
        &[alpha],
        RecordOrder::default(),
        null,
        alternative,
        CriticalBasis::Signed,
        mc,
    )?;
    Ok(t.cells[0].clone())
}

/// Empirical `p`-value of an observed default-order symmetry statistic.
pub fn empirical_p_value<E: Executor>(
    exec: &E,
    observed: f64,
    n: usize,
    window: SpacingConfig,
    null: &DistributionSpec,
    mode: PValueMode,
    mc: &MonteCarloConfig,
) -> Result<f64> {
    let cols = symmetry_null_columns(exec, n, &[window], RecordOrder::default(), null, Purpose::Null, mc)?;
    Ok(p_value_from(&cols[0], observed, mode))
}
