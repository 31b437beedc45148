//! Argument parsing and command dispatch for the `extropy` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use extropy_core::analytic::{extropy, varextropy, weighted_varextropy};
use extropy_core::{
    estimate, symmetry_test, uniformity_test, CriticalBasis, Decision, DistributionSpec, EstimatorId,
    EstimatorSettings, MonteCarloConfig, PValueMode, RecordOrder, Sample, SpacingConfig, SymmetryTestOptions,
    TestReport, Variant, WeightFunction,
};

use crate::datasets;
use crate::error::{exit, AppError, AppResult};
use crate::input::{digest, emit_values, read_values};
use crate::parallel::Rayon;
use crate::report::{AnalyticResult, InputDigest, Provenance, Results, RunReport, TableResult};
use crate::tables::{self, fmt4, truncate4, TableId};

pub const SEED_ENV: &str = "EXTROPY_SEED";

#[derive(Debug, Parser)]
#[command(name = "extropy", version, about = "Extropy and varextropy estimation and a spacing-based symmetry test")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the varextropy of a sample.
    Estimate(EstimateArgs),
    /// Test a sample for symmetry.
    Symtest(SymtestArgs),
    /// Test a sample on [0, 1] for uniformity.
    Uniftest(UniftestArgs),
    /// Closed-form or quadrature reference values for a parametric law.
    Analytic(AnalyticArgs),
    /// Regenerate a reference table as CSV.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Embedded dataset, `dataset-1` .. `dataset-6`.
    #[arg(long)]
    pub data: Option<String>,
    /// Text file of numbers separated by whitespace, commas or newlines.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Monte Carlo replicates.
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
    /// Base seed; falls back to EXTROPY_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EstimatorArg {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum VariantArg {
    AsPrinted,
    #[default]
    Corrected,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum PValueArg {
    /// Fraction of null statistics above the observed value.
    #[default]
    #[value(alias = "paper")]
    Upper,
    /// Fraction of null statistics larger in magnitude.
    TwoSided,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum BasisArg {
    #[default]
    Signed,
    Absolute,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum)]
    pub estimator: EstimatorArg,
    /// Window size; defaults by sample size.
    #[arg(long)]
    pub m: Option<usize>,
    /// Kernel bandwidth; defaults to 1.06 s n^(-1/5).
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub variant: VariantArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SymtestArgs {
    #[command(flatten)]
    pub source: Source,
    /// Window size; defaults to the dataset's reference window, else by
    /// sample size.
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub mc: McArgs,
    #[arg(long, value_enum, default_value_t)]
    pub pvalue_mode: PValueArg,
    #[arg(long, value_enum, default_value_t)]
    pub critical_basis: BasisArg,
    /// Record index of the weight function.
    #[arg(long, default_value_t = 2)]
    pub n_rec: u32,
    /// Record parameter k of the weight function.
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct UniftestArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum, default_value = "d2")]
    pub estimator: EstimatorArg,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub variant: VariantArg,
    #[command(flatten)]
    pub mc: McArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Uniform,
    Exponential,
    Normal,
    ChiSquare,
    TriangularUp,
    TriangularDown,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MeasureArg {
    Extropy,
    Varextropy,
    WeightedVarextropy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeightArg {
    #[value(name = "1")]
    One,
    #[value(name = "x")]
    X,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    /// Weight of the weighted measure.
    #[arg(long, value_enum, default_value = "x")]
    pub weight: WeightArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mean: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1)]
    pub dof: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// One of 1, 2, 7, 8, 11.
    #[arg(long)]
    pub table: String,
    /// Replicate count override.
    #[arg(long)]
    pub scale: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub critical_basis: BasisArg,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

impl EstimatorArg {
    fn id(self, v: VariantArg) -> EstimatorId {
        let v = match v {
            VariantArg::AsPrinted => Variant::AsPrinted,
            VariantArg::Corrected => Variant::Corrected,
        };
        match self {
            EstimatorArg::D1 => EstimatorId::D1,
            EstimatorArg::D2 => EstimatorId::D2,
            EstimatorArg::D3 => EstimatorId::D3,
            EstimatorArg::D4 => EstimatorId::D4,
            EstimatorArg::D5 => EstimatorId::D5(v),
            EstimatorArg::D6 => EstimatorId::D6(v),
        }
    }
}

impl From<PValueArg> for PValueMode {
    fn from(p: PValueArg) -> Self {
        match p {
            PValueArg::Upper => PValueMode::Upper,
            PValueArg::TwoSided => PValueMode::TwoSided,
        }
    }
}

impl From<BasisArg> for CriticalBasis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Signed => CriticalBasis::Signed,
            BasisArg::Absolute => CriticalBasis::Absolute,
        }
    }
}

/// Seed from the flag, else `EXTROPY_SEED`, else 0.
pub fn resolve_seed(flag: Option<u64>, env: Option<OsString>) -> AppResult<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env {
        None => Ok(0),
        Some(v) => v
            .to_str()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| AppError::Usage(format!("{SEED_ENV} must be an unsigned 64-bit integer, got {v:?}"))),
    }
}

struct Loaded {
    sample: Sample,
    digest: InputDigest,
    reference_m: Option<usize>,
}

fn load(source: &Source) -> AppResult<Loaded> {
    let (values, name, reference_m) = match (&source.data, &source.file) {
        (Some(id), _) => {
            let d = datasets::lookup(id).ok_or_else(|| AppError::UnknownDataset(id.clone()))?;
            (d.values.to_vec(), d.id.to_string(), Some(d.reference_m))
        }
        (None, Some(path)) => (read_values(path)?, path.display().to_string(), None),
        (None, None) => return Err(AppError::Usage("one of --data or --file is required".into())),
    };
    let digest = InputDigest { source: name, n: values.len(), sha256: digest(&emit_values(&values)) };
    Ok(Loaded { sample: Sample::new(values)?, digest, reference_m })
}

fn mc_config(reps: usize, seed: u64, workers: Option<usize>) -> AppResult<MonteCarloConfig> {
    let mut mc = MonteCarloConfig::new(reps, seed)?;
    mc.workers = workers;
    Ok(mc)
}

fn check_alpha(alpha: f64) -> AppResult<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(AppError::Usage(format!("--alpha must lie in (0, 1), got {alpha}")))
    }
}

fn decision_text(d: Decision) -> &'static str {
    match d {
        Decision::Reject => "reject",
        Decision::DoNotReject => "do not reject",
    }
}

fn test_text(title: &str, input: &InputDigest, r: &TestReport) -> String {
    let m = r.m.map_or_else(|| "-".to_string(), |m| m.to_string());
    format!(
        "{title}\n  input           {} (n={})\n  m               {m}\n  statistic       {}\n  critical value  {}\n  alpha           {}\n  p-value         {}\n  decision        {}\n  replicates      {}\n  seed            {}\n",
        input.source,
        input.n,
        fmt4(truncate4(r.statistic)),
        fmt4(r.critical_value),
        r.alpha,
        fmt4(r.p_value),
        decision_text(r.decision),
        r.provenance.replicates,
        r.provenance.seed,
    )
}

/// What a command produced: the structured report and its human rendering.
pub struct Outcome {
    pub report: RunReport,
    pub text: String,
}

fn provenance(seed: u64, replicates: Option<usize>) -> Provenance {
    Provenance { seed, replicates, version: env!("CARGO_PKG_VERSION") }
}

pub fn cmd_estimate(a: &EstimateArgs, command: Vec<String>, seed: u64) -> AppResult<Outcome> {
    let input = load(&a.source)?;
    let id = a.estimator.id(a.variant);
    let r = estimate(&input.sample, id, EstimatorSettings { m: a.m, h: a.h })?;
    let mut text = format!("estimator  {}\n  input      {} (n={})\n", r.estimator, input.digest.source, r.n);
    if let Some(m) = r.m {
        text += &format!("  m          {m}\n");
    }
    if let Some(h) = r.h {
        text += &format!("  h          {h:.6}\n");
    }
    text += &format!("  value      {:.7}\n", r.value);
    if r.negative {
        text += "  note       negative estimate\n";
    }
    let report = RunReport {
        command,
        input: Some(input.digest),
        settings: json!({ "estimator": id, "m": a.m, "h": a.h }),
        results: Results::Estimate(r),
        provenance: provenance(seed, None),
    };
    Ok(Outcome { report, text })
}

pub fn cmd_symtest(a: &SymtestArgs, command: Vec<String>, seed: u64) -> AppResult<Outcome> {
    check_alpha(a.mc.alpha)?;
    let input = load(&a.source)?;
    let n = input.sample.len();
    let m = a.m.or(input.reference_m).unwrap_or_else(|| SpacingConfig::recommended(n).m);
    let window = SpacingConfig::new(m)?;
    let mc = mc_config(a.mc.reps, seed, a.mc.workers)?;
    let options = SymmetryTestOptions {
        order: RecordOrder::new(a.n_rec, a.k)?,
        null: DistributionSpec::STANDARD_NORMAL,
        p_value_mode: a.pvalue_mode.into(),
        basis: a.critical_basis.into(),
    };
    let exec = Rayon::new(a.mc.workers)?;
    let r = symmetry_test(&exec, &input.sample, window, a.mc.alpha, options, &mc)?;
    let text = test_text("symmetry test", &input.digest, &r);
    let report = RunReport {
        command,
        input: Some(input.digest),
        settings: json!({
            "m": m,
            "alpha": a.mc.alpha,
            "n_rec": a.n_rec,
            "k": a.k,
            "pvalue_mode": options.p_value_mode,
            "critical_basis": options.basis,
        }),
        results: Results::Test(r),
        provenance: provenance(seed, Some(mc.replicates)),
    };
    Ok(Outcome { report, text })
}

pub fn cmd_uniftest(a: &UniftestArgs, command: Vec<String>, seed: u64) -> AppResult<Outcome> {
    check_alpha(a.mc.alpha)?;
    let input = load(&a.source)?;
    let id = a.estimator.id(a.variant);
    let mc = mc_config(a.mc.reps, seed, a.mc.workers)?;
    let exec = Rayon::new(a.mc.workers)?;
    let r = uniformity_test(&exec, &input.sample, id, EstimatorSettings { m: a.m, h: a.h }, a.mc.alpha, &mc)?;
    let text = test_text(&format!("uniformity test ({id})"), &input.digest, &r);
    let report = RunReport {
        command,
        input: Some(input.digest),
        settings: json!({ "estimator": id, "m": r.m, "h": a.h, "alpha": a.mc.alpha }),
        results: Results::Test(r),
        provenance: provenance(seed, Some(mc.replicates)),
    };
    Ok(Outcome { report, text })
}

pub fn cmd_analytic(a: &AnalyticArgs, command: Vec<String>, seed: u64) -> AppResult<Outcome> {
    let d = match a.family {
        FamilyArg::Uniform => DistributionSpec::Uniform { a: a.a, b: a.b },
        FamilyArg::Exponential => DistributionSpec::Exponential { rate: a.lambda },
        FamilyArg::Normal => DistributionSpec::Normal { mean: a.mean, variance: a.sigma * a.sigma },
        FamilyArg::ChiSquare => DistributionSpec::ChiSquare { dof: a.dof },
        FamilyArg::TriangularUp => DistributionSpec::TriangularUp,
        FamilyArg::TriangularDown => DistributionSpec::TriangularDown,
    };
    if matches!(a.family, FamilyArg::Normal) && (a.sigma.is_nan() || a.sigma <= 0.0) {
        return Err(AppError::Usage(format!("--sigma must be positive, got {}", a.sigma)));
    }
    let (measure, weight, value) = match a.measure {
        MeasureArg::Extropy => ("extropy", None, extropy(&d)?),
        MeasureArg::Varextropy => ("varextropy", None, varextropy(&d)?),
        MeasureArg::WeightedVarextropy => {
            let (w, name) = match a.weight {
                WeightArg::One => (WeightFunction::Unit, "1"),
                WeightArg::X => (WeightFunction::Identity, "x"),
            };
            ("weighted-varextropy", Some(name), weighted_varextropy(&d, w)?)
        }
    };
    let method = match value.method {
        extropy_core::Method::ClosedForm => "closed form",
        extropy_core::Method::Quadrature => "quadrature",
    };
    let text = format!("{measure}  {:.7}  ({method})\n", value.value);
    let report = RunReport {
        command,
        input: None,
        settings: json!({ "distribution": d, "measure": measure, "weight": weight }),
        results: Results::Analytic(AnalyticResult { distribution: d, measure, weight, value }),
        provenance: provenance(seed, None),
    };
    Ok(Outcome { report, text })
}

pub fn cmd_reproduce(a: &ReproduceArgs, command: Vec<String>, seed: u64) -> AppResult<Outcome> {
    let id = TableId::parse(&a.table)?;
    let reps = a.scale.unwrap_or(extropy_core::mc::DEFAULT_REPLICATES);
    let mc = mc_config(reps, seed, a.workers)?;
    let exec = Rayon::new(a.workers)?;
    let table = tables::reproduce(&exec, id, &mc, a.critical_basis.into())?;
    let csv = table.to_csv();
    let text = match &a.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|source| AppError::Write { path: path.clone(), source })?;
            format!("table {} written to {} ({} rows)\n", id.number(), path.display(), table.rows.len())
        }
        None => csv,
    };
    let report = RunReport {
        command,
        input: None,
        settings: json!({ "table": id.number(), "critical_basis": tables::basis_name(a.critical_basis.into()) }),
        results: Results::Table(TableResult {
            table: id.number(),
            rows: table.rows.len(),
            out: a.out.as_ref().map(|p| p.display().to_string()),
        }),
        provenance: provenance(seed, Some(mc.replicates)),
    };
    Ok(Outcome { report, text })
}

fn dispatch(cli: &Cli, command: Vec<String>, env_seed: Option<OsString>) -> AppResult<(Outcome, bool)> {
    let seed_flag = match &cli.command {
        Command::Symtest(a) => a.mc.seed,
        Command::Uniftest(a) => a.mc.seed,
        Command::Reproduce(a) => a.seed,
        Command::Estimate(_) | Command::Analytic(_) => None,
    };
    let seed = resolve_seed(seed_flag, env_seed)?;
    match &cli.command {
        Command::Estimate(a) => Ok((cmd_estimate(a, command, seed)?, a.json)),
        Command::Symtest(a) => Ok((cmd_symtest(a, command, seed)?, a.json)),
        Command::Uniftest(a) => Ok((cmd_uniftest(a, command, seed)?, a.json)),
        Command::Analytic(a) => Ok((cmd_analytic(a, command, seed)?, a.json)),
        Command::Reproduce(a) => Ok((cmd_reproduce(a, command, seed)?, a.json && a.out.is_some())),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, W, E>(args: I, env_seed: Option<OsString>, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = OsString>,
    W: Write,
    E: Write,
{
    let args: Vec<OsString> = args.into_iter().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    let command = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = dispatch(&cli, command, env_seed).and_then(|(o, as_json)| {
        let body = if as_json { o.report.to_json()? + "\n" } else { o.text };
        Ok(body)
    });
    match result {
        Ok(body) => {
            let _ = out.write_all(body.as_bytes());
            exit::OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
