//! Regeneration of the reference tables as CSV with a provenance header.

use std::fmt::Write as _;

use extropy_core::mc::{critical_values, empirical_p_value, power_table, PowerTable};
use extropy_core::{
    symmetry_statistic, CriticalBasis, DistributionSpec, Executor, MonteCarloConfig, PValueMode, RecordOrder,
    SpacingConfig,
};

use crate::datasets::DATASETS;
use crate::error::{AppError, AppResult};

pub const SIZES: [usize; 7] = [5, 10, 20, 30, 40, 50, 100];
pub const ALPHA: f64 = 0.05;
const CHI1: DistributionSpec = DistributionSpec::ChiSquare { dof: 1 };

/// Window sizes of the grid tables: 2..=30 and 40.
pub fn grid_windows() -> Vec<usize> {
    (2..=30).chain([40]).collect()
}

/// `(n, windows)` blocks of the multi-alternative power table.
pub fn power_blocks() -> Vec<(usize, Vec<usize>)> {
    vec![
        (20, (2..=9).collect()),
        (50, vec![2, 4, 7, 9, 15, 17, 20, 22]),
        (100, vec![2, 4, 5, 7, 10, 15, 20, 30, 40]),
    ]
}

/// `(n, windows)` blocks of the size table.
pub fn size_blocks() -> Vec<(usize, Vec<usize>)> {
    vec![
        (20, (2..=9).collect()),
        (50, vec![2, 3, 5, 8, 10, 15, 20, 24]),
        (100, vec![2, 3, 5, 8, 10, 15, 20, 30, 49]),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    CriticalValues,
    PowerChiSquare,
    PowerAlternatives,
    Size,
    Datasets,
}

impl TableId {
    pub fn parse(s: &str) -> AppResult<Self> {
        match s.trim() {
            "1" => Ok(TableId::CriticalValues),
            "2" => Ok(TableId::PowerChiSquare),
            "7" => Ok(TableId::PowerAlternatives),
            "8" => Ok(TableId::Size),
            "11" => Ok(TableId::Datasets),
            other => Err(AppError::Usage(format!("unknown table {other:?} (expected 1, 2, 7, 8 or 11)"))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            TableId::CriticalValues => 1,
            TableId::PowerChiSquare => 2,
            TableId::PowerAlternatives => 7,
            TableId::Size => 8,
            TableId::Datasets => 11,
        }
    }

    fn description(self) -> &'static str {
        match self {
            TableId::CriticalValues => "critical values of the symmetry statistic at alpha=0.05, standard normal null; rows m, columns N",
            TableId::PowerChiSquare => "power at alpha=0.05 against chi-square(1); rows m, columns N",
            TableId::PowerAlternatives => "power at alpha=0.05 against chi-square(1), chi-square(2), chi-square(3) and N(0,1)",
            TableId::Size => "size at alpha=0.05 under the standard normal",
            TableId::Datasets => "symmetry statistic and p-value for the embedded datasets",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub id: TableId,
    /// Provenance lines, written as `# `-prefixed comments.
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for h in &self.header {
            writeln!(s, "# {h}").unwrap();
        }
        writeln!(s, "{}", self.columns.join(",")).unwrap();
        for r in &self.rows {
            writeln!(s, "{}", r.join(",")).unwrap();
        }
        s
    }
}

/// Truncates toward zero at four decimals.
pub fn truncate4(x: f64) -> f64 {
    (x * 1e4).trunc() / 1e4
}

pub fn fmt4(x: f64) -> String {
    format!("{x:.4}")
}

fn provenance(id: TableId, mc: &MonteCarloConfig, basis: CriticalBasis, extra: &[String]) -> Vec<String> {
    let r = mc.replicates as f64;
    let mut h = vec![
        format!("table {}: {}", id.number(), id.description()),
        format!("seed: {}", mc.seed),
        format!("replicates: {}", mc.replicates),
        format!("critical basis: {}", basis_name(basis)),
        format!(
            "monte carlo standard error: {:.4} for a rate near 0.05, {:.4} near 0.5",
            (0.05 * 0.95 / r).sqrt(),
            (0.25 / r).sqrt()
        ),
        format!("version: {}", env!("CARGO_PKG_VERSION")),
    ];
    h.extend_from_slice(extra);
    h
}

pub fn basis_name(b: CriticalBasis) -> &'static str {
    match b {
        CriticalBasis::Signed => "signed",
        CriticalBasis::Absolute => "absolute",
    }
}

fn grid<F>(mut cell: F) -> AppResult<(Vec<String>, Vec<Vec<String>>)>
where
    F: FnMut(usize, &[usize]) -> AppResult<Vec<(usize, f64)>>,
{
    let windows = grid_windows();
    let mut columns = vec!["m".to_string()];
    let mut rows: Vec<Vec<String>> = windows.iter().map(|m| vec![m.to_string()]).collect();
    for &n in &SIZES {
        columns.push(format!("N={n}"));
        let valid: Vec<usize> = windows.iter().copied().filter(|m| 2 * m < n).collect();
        let values = cell(n, &valid)?;
        for (row, m) in rows.iter_mut().zip(&windows) {
            let v = values.iter().find(|(vm, _)| vm == m).map(|&(_, v)| fmt4(v));
            row.push(v.unwrap_or_default());
        }
    }
    Ok((columns, rows))
}

fn power_cells(t: &PowerTable) -> Vec<(usize, f64)> {
    t.cells.iter().map(|c| (c.m, c.power)).collect()
}

/// Rebuilds one table. `mc.replicates` sets the Monte Carlo effort.
pub fn reproduce<E: Executor>(
    exec: &E,
    id: TableId,
    mc: &MonteCarloConfig,
    basis: CriticalBasis,
) -> AppResult<CsvTable> {
    let order = RecordOrder::default();
    let normal = DistributionSpec::STANDARD_NORMAL;
    let mut notes = Vec::new();
    let (columns, rows) = match id {
        TableId::CriticalValues => grid(|n, ms| {
            let t = critical_values(exec, n, ms, &[ALPHA], order, &normal, basis, mc)?;
            notes.extend(t.warnings.iter().map(|w| format!("warning: {w}")));
            Ok(t.rows.iter().map(|r| (r.m, r.values[0])).collect())
        })?,
        TableId::PowerChiSquare => grid(|n, ms| {
            let t = power_table(exec, n, ms, &[ALPHA], order, &normal, &CHI1, basis, mc)?;
            Ok(power_cells(&t))
        })?,
        TableId::PowerAlternatives => {
            let alts = [CHI1, DistributionSpec::ChiSquare { dof: 2 }, DistributionSpec::ChiSquare { dof: 3 }, normal];
            let mut rows = Vec::new();
            for (n, ms) in power_blocks() {
                let tables = alts
                    .iter()
                    .map(|alt| power_table(exec, n, &ms, &[ALPHA], order, &normal, alt, basis, mc))
                    .collect::<Result<Vec<_>, _>>()?;
                for (j, m) in ms.iter().enumerate() {
                    let mut row = vec![n.to_string(), m.to_string()];
                    row.extend(tables.iter().map(|t| fmt4(t.cells[j].power)));
                    rows.push(row);
                }
            }
            let columns = ["N", "m", "chi2(1)", "chi2(2)", "chi2(3)", "N(0,1)"];
            (columns.iter().map(|c| c.to_string()).collect(), rows)
        }
        TableId::Size => {
            let mut rows = Vec::new();
            for (n, ms) in size_blocks() {
                let t = power_table(exec, n, &ms, &[ALPHA], order, &normal, &normal, basis, mc)?;
                for c in &t.cells {
                    rows.push(vec![n.to_string(), c.m.to_string(), fmt4(c.power)]);
                }
            }
            (vec!["N".into(), "m".into(), "N(0,1)".into()], rows)
        }
        TableId::Datasets => {
            let mut rows = Vec::new();
            for d in &DATASETS {
                let sample = d.sample()?;
                let window = SpacingConfig::new(d.reference_m)?;
                let stat = symmetry_statistic(&sample, window, order)?.value;
                let p = empirical_p_value(exec, stat, d.n(), window, &normal, PValueMode::Upper, mc)?;
                rows.push(vec![
                    d.id.to_string(),
                    d.n().to_string(),
                    d.reference_m.to_string(),
                    fmt4(truncate4(stat)),
                    fmt4(p),
                ]);
            }
            notes.push("statistic truncated to 4 decimals; p-value: fraction of null statistics above the observed value".into());
            (
                ["dataset", "N", "m", "statistic", "p_value"].iter().map(|c| c.to_string()).collect(),
                rows,
            )
        }
    };
    Ok(CsvTable { id, header: provenance(id, mc, basis, &notes), columns, rows })
}
