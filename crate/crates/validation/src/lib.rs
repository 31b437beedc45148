//! Reference checks for the workspace. Each check returns a [`Verdict`]
//! carrying a pass flag and the numbers behind it; the `acceptance` test
//! target runs them all and prints one line per check.

use std::ffi::OsString;
use std::time::Instant;

use extropy::cli;
use extropy::datasets::DATASETS;
use extropy::tables::{self, grid_windows, size_blocks, truncate4, TableId};
use extropy::Rayon;
use extropy_core::analytic::{
    extropy as extropy_of, extropy_by_quadrature, varextropy, varextropy_by_quadrature, weighted_varextropy,
    weighted_varextropy_by_quadrature,
};
use extropy_core::estimators::{d2, d6, estimate};
use extropy_core::mc::{critical_values, power_table, replicate_rng, replicate_statistics, sample_from, uniform_open, Purpose};
use extropy_core::{
    symmetry_statistic, symmetry_test, uniformity_test, CriticalBasis, DistributionSpec, EstimatorId,
    EstimatorSettings, Method, MonteCarloConfig, RecordOrder, Sample, SpacingConfig, SymmetryTestOptions, Variant,
    WeightFunction,
};

pub const REPLICATES: usize = 10_000;
pub const SEED: u64 = 0;
const NORMAL: DistributionSpec = DistributionSpec::STANDARD_NORMAL;
const CHI1: DistributionSpec = DistributionSpec::ChiSquare { dof: 1 };

/// Published symmetry statistics of the six embedded datasets.
pub const DATASET_STATISTICS: [f64; 6] = [0.1531, 3.6678, 0.1545, 6.2144, 0.0247, 0.5776];

/// Published critical values `(n, m, value)` at alpha = 0.05.
pub const CRITICAL_CELLS: [(usize, usize, f64); 4] =
    [(20, 2, 0.6673), (30, 10, 0.3642), (50, 5, 0.5305), (100, 10, 0.4405)];

#[derive(Debug, Clone)]
pub struct Verdict {
    pub criterion: u32,
    pub title: &'static str,
    pub pass: bool,
    pub details: Vec<String>,
}

impl Verdict {
    fn new(criterion: u32, title: &'static str) -> Self {
        Verdict { criterion, title, pass: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.pass &= ok;
        self.details.push(format!("[{}] {detail}", if ok { "ok" } else { "FAIL" }));
    }

    fn note(&mut self, detail: String) {
        self.details.push(format!("[info] {detail}"));
    }
}

fn mc() -> MonteCarloConfig {
    MonteCarloConfig::new(REPLICATES, SEED).expect("valid config")
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<OsString> = std::iter::once("extropy").chain(args.iter().copied()).map(OsString::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, None, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli_json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = run_cli(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).expect("json report")
}

/// Exact statistics of the embedded datasets through the `symtest` command.
pub fn criterion_1() -> Verdict {
    let mut v = Verdict::new(1, "dataset statistics to 4 decimals");
    for (d, &want) in DATASETS.iter().zip(&DATASET_STATISTICS) {
        let m = d.reference_m.to_string();
        let r = cli_json(&["symtest", "--data", d.id, "--m", &m, "--reps", "100", "--json"]);
        let stat = r["results"]["statistic"].as_f64().unwrap();
        let (code, text, _) = run_cli(&["symtest", "--data", d.id, "--m", &m, "--reps", "100"]);
        let printed = format!("{want:.4}");
        v.check(
            code == 0 && truncate4(stat) == want && text.contains(&format!("statistic       {printed}")),
            format!("{} (n={}, m={m}): {stat:.10} -> {printed}", d.id, d.n()),
        );
    }
    v
}

/// Monte Carlo p-values of the embedded datasets.
pub fn criterion_2() -> Verdict {
    let mut v = Verdict::new(2, "dataset p-values, upper mode, 10000 replicates");
    let targets: [(f64, f64); 6] = [(0.2969, 0.03), (0.0, 0.001), (0.2821, 0.03), (0.0, 0.001), (0.4425, 0.03), (0.021, 0.010)];
    for (d, &(target, tol)) in DATASETS.iter().zip(&targets) {
        let start = Instant::now();
        let r = cli_json(&["symtest", "--data", d.id, "--reps", "10000", "--seed", "0", "--json"]);
        let secs = start.elapsed().as_secs_f64();
        let p = r["results"]["p_value"].as_f64().unwrap();
        let ok = if target == 0.0 { p < tol } else { within(p, target, tol) };
        let want = if target == 0.0 { format!("< {tol}") } else { format!("{target} +/- {tol}") };
        v.check(ok && secs < 120.0, format!("{}: p = {p:.4} (want {want}), {secs:.2}s", d.id));
    }
    v
}

/// Critical values at the published spot cells.
pub fn criterion_3(exec: &Rayon) -> Verdict {
    let mut v = Verdict::new(3, "critical values at alpha=0.05 within 0.03");
    for &(n, m, want) in &CRITICAL_CELLS {
        let cv = |basis| {
            critical_values(exec, n, &[m], &[0.05], RecordOrder::default(), &NORMAL, basis, &mc())
                .unwrap()
                .rows[0]
                .values[0]
        };
        let signed = cv(CriticalBasis::Signed);
        v.check(within(signed, want, 0.03), format!("N={n}, m={m}: {signed:.4} (want {want} +/- 0.03)"));
        v.note(format!("N={n}, m={m}: quantile of |T| (absolute basis) = {:.4}", cv(CriticalBasis::Absolute)));
    }
    v
}

/// Power against chi-square(1).
pub fn criterion_4(exec: &Rayon) -> Verdict {
    let mut v = Verdict::new(4, "power against chi-square(1)");
    let order = RecordOrder::default();
    for basis in [CriticalBasis::Signed, CriticalBasis::Absolute] {
        let t20 = power_table(exec, 20, &[2], &[0.05], order, &NORMAL, &CHI1, basis, &mc()).unwrap();
        let t50 = power_table(exec, 50, &[4], &[0.05], order, &NORMAL, &CHI1, basis, &mc()).unwrap();
        let ms: Vec<usize> = grid_windows().into_iter().filter(|m| 2 * m < 100).collect();
        let t100 = power_table(exec, 100, &ms, &[0.05], order, &NORMAL, &CHI1, basis, &mc()).unwrap();
        let p20 = t20.cells[0].power;
        let p50 = t50.cells[0].power;
        let min100 = t100.cells.iter().map(|c| c.power).fold(1.0, f64::min);
        let lines = [
            (within(p20, 0.8759, 0.02), format!("N=20, m=2: {p20:.4} (want 0.8759 +/- 0.02)")),
            (within(p50, 0.9997, 0.005), format!("N=50, m=4: {p50:.4} (want 0.9997 +/- 0.005)")),
            (min100 >= 0.999, format!("N=100, {} windows: min {min100:.4} (want >= 0.999)", ms.len())),
        ];
        for (ok, line) in lines {
            match basis {
                CriticalBasis::Signed => v.check(ok, line),
                CriticalBasis::Absolute => v.note(format!("absolute basis {line}")),
            }
        }
    }
    v
}

/// Size under the standard normal at every listed cell.
pub fn criterion_5(exec: &Rayon) -> Verdict {
    let mut v = Verdict::new(5, "size under N(0,1) in [0.04, 0.06]");
    for (n, ms) in size_blocks() {
        let t = power_table(exec, n, &ms, &[0.05], RecordOrder::default(), &NORMAL, &NORMAL, CriticalBasis::Signed, &mc())
            .unwrap();
        for c in &t.cells {
            v.check((0.04..=0.06).contains(&c.power), format!("N={n}, m={}: {:.4}", c.m, c.power));
        }
    }
    v
}

fn analytic_case(v: &mut Verdict, label: String, closed: extropy_core::AnalyticValue, quad: f64, oracle: f64) {
    let ok = closed.method == Method::ClosedForm && (closed.value - quad).abs() <= 1e-8 && (closed.value - oracle).abs() <= 1e-12;
    v.check(ok, format!("{label}: closed {:.12}, quadrature {quad:.12}, oracle {oracle:.12}", closed.value));
}

/// Closed forms agree with quadrature and with the textbook values.
pub fn criterion_6() -> Verdict {
    let mut v = Verdict::new(6, "analytic references, closed form vs quadrature to 1e-8");
    let u = DistributionSpec::STANDARD_UNIFORM;
    analytic_case(&mut v, "VJ uniform(0,1)".into(), varextropy(&u).unwrap(), varextropy_by_quadrature(&u).unwrap(), 0.0);
    for rate in [0.5, 1.0, 3.0] {
        let d = DistributionSpec::Exponential { rate };
        let oracle = rate * rate / 48.0;
        analytic_case(&mut v, format!("VJ exp({rate})"), varextropy(&d).unwrap(), varextropy_by_quadrature(&d).unwrap(), oracle);
    }
    for sigma in [0.5, 1.0, 2.0] {
        let d = DistributionSpec::Normal { mean: 1.0, variance: sigma * sigma };
        let s3 = 3f64.sqrt();
        let oracle = (2.0 - s3) / (16.0 * std::f64::consts::PI * sigma * sigma * s3);
        analytic_case(&mut v, format!("VJ normal(sd {sigma})"), varextropy(&d).unwrap(), varextropy_by_quadrature(&d).unwrap(), oracle);
    }
    let x = WeightFunction::Identity;
    for (a, b) in [(0.0, 1.0), (3.0, 7.0), (2.0, 10.0)] {
        let d = DistributionSpec::Uniform { a, b };
        analytic_case(
            &mut v,
            format!("VJ^x uniform({a},{b})"),
            weighted_varextropy(&d, x).unwrap(),
            weighted_varextropy_by_quadrature(&d, x).unwrap(),
            1.0 / 48.0,
        );
    }
    for rate in [0.5, 1.0, 4.0] {
        let d = DistributionSpec::Exponential { rate };
        analytic_case(
            &mut v,
            format!("VJ^x exp({rate})"),
            weighted_varextropy(&d, x).unwrap(),
            weighted_varextropy_by_quadrature(&d, x).unwrap(),
            5.0 / 1728.0,
        );
    }
    for (d, name, vjx) in [(DistributionSpec::TriangularUp, "up", 1.0 / 12.0), (DistributionSpec::TriangularDown, "down", 1.0 / 180.0)] {
        analytic_case(&mut v, format!("J triangular {name}"), extropy_of(&d).unwrap(), extropy_by_quadrature(&d).unwrap(), -2.0 / 3.0);
        analytic_case(&mut v, format!("VJ triangular {name}"), varextropy(&d).unwrap(), varextropy_by_quadrature(&d).unwrap(), 1.0 / 18.0);
        analytic_case(
            &mut v,
            format!("VJ^x triangular {name}"),
            weighted_varextropy(&d, x).unwrap(),
            weighted_varextropy_by_quadrature(&d, x).unwrap(),
            vjx,
        );
    }
    v
}

const AFFINE_ESTIMATORS: [EstimatorId; 7] = [
    EstimatorId::D1,
    EstimatorId::D2,
    EstimatorId::D3,
    EstimatorId::D4,
    EstimatorId::D5(Variant::Corrected),
    EstimatorId::D6(Variant::Corrected),
    EstimatorId::D6(Variant::AsPrinted),
];

/// Scaling laws on random samples and random affine maps.
pub fn criterion_7() -> Verdict {
    let mut v = Verdict::new(7, "affine scaling, 100 samples, 1e-10 relative");
    let laws = [NORMAL, DistributionSpec::Exponential { rate: 1.0 }, CHI1, DistributionSpec::STANDARD_UNIFORM];
    let mut worst = vec![0.0f64; AFFINE_ESTIMATORS.len() + 1];
    for i in 0..100u64 {
        let mut rng = replicate_rng(7, Purpose::Synthetic, i);
        let n = 10 + (uniform_open(&mut rng) * 91.0) as usize;
        let m = 1 + (uniform_open(&mut rng) * ((n - 1) / 2) as f64) as usize;
        let a = (uniform_open(&mut rng) * 4.0 - 2.0).exp2() * 2.5;
        let b = uniform_open(&mut rng) * 20.0 - 10.0;
        let x = sample_from(&laws[i as usize % laws.len()], n, &mut rng).unwrap();
        let y = x.affine(a, b).unwrap();
        let settings = EstimatorSettings { m: Some(m), h: None };
        for (k, &id) in AFFINE_ESTIMATORS.iter().enumerate() {
            let ex = estimate(&x, id, settings).unwrap().value;
            let ey = estimate(&y, id, settings).unwrap().value;
            let rel = (ey * a * a - ex).abs() / ex.abs().max(f64::MIN_POSITIVE);
            worst[k] = worst[k].max(rel);
        }
        let w = SpacingConfig::new(m).unwrap();
        let tx = symmetry_statistic(&x, w, RecordOrder::default()).unwrap().value;
        let ty = symmetry_statistic(&y, w, RecordOrder::default()).unwrap().value;
        let rel = (ty - a * tx).abs() / (a * tx).abs().max(f64::MIN_POSITIVE);
        let last = worst.len() - 1;
        worst[last] = worst[last].max(rel);
    }
    for (k, id) in AFFINE_ESTIMATORS.iter().enumerate() {
        v.check(worst[k] <= 1e-10, format!("{id}: worst relative error {:.2e} (law 1/a^2)", worst[k]));
    }
    let t = worst[worst.len() - 1];
    v.check(t <= 1e-10, format!("symmetry statistic: worst relative error {t:.2e} (law a)"));
    v
}

/// Exact zeros on palindromic samples and arithmetic progressions.
pub fn criterion_8() -> Verdict {
    let mut v = Verdict::new(8, "exact zeros");
    let mut worst: f64 = 0.0;
    for i in 0..50u64 {
        let mut rng = replicate_rng(8, Purpose::Synthetic, i);
        let half = 2 + (uniform_open(&mut rng) * 40.0) as usize;
        let centre = uniform_open(&mut rng) * 200.0 - 100.0;
        let mut values = Vec::with_capacity(2 * half + 1);
        for _ in 0..half {
            let d = -uniform_open(&mut rng).ln() * 3.0;
            values.push(centre - d);
            values.push(centre + d);
        }
        if i % 2 == 0 {
            values.push(centre);
        }
        let s = Sample::new(values).unwrap();
        let m = 1 + i as usize % ((s.len() - 1) / 2);
        let t = symmetry_statistic(&s, SpacingConfig::new(m).unwrap(), RecordOrder::default()).unwrap().value;
        worst = worst.max(t.abs());
    }
    v.check(worst < 1e-10, format!("50 palindromic samples: max |T| = {worst:.2e}"));
    let mut nonzero = 0;
    for i in 0..50u64 {
        let mut rng = replicate_rng(80, Purpose::Synthetic, i);
        let n = 3 + (uniform_open(&mut rng) * 200.0) as usize;
        let start = (uniform_open(&mut rng) * 2000.0).floor() - 1000.0;
        let step = (1.0 + (uniform_open(&mut rng) * 80.0).floor()) / 8.0;
        let s = Sample::new((0..n).map(|j| start + step * j as f64).collect()).unwrap();
        if d2(&s, SpacingConfig::new(1).unwrap()).unwrap().value != 0.0 {
            nonzero += 1;
        }
    }
    let hand = d2(&Sample::from_slice(&[1.0, 2.0, 3.0, 4.0]).unwrap(), SpacingConfig::new(1).unwrap()).unwrap().value;
    v.check(nonzero == 0 && hand == 0.0, format!("D2, m=1, 50 arithmetic progressions: {nonzero} nonzero; (1,2,3,4) -> {hand}"));
    v
}

fn mean_estimate<F>(exec: &Rayon, d: &DistributionSpec, n: usize, seed: u64, f: F) -> f64
where
    F: Fn(&Sample) -> extropy_core::Result<f64> + Sync + Send,
{
    let cfg = MonteCarloConfig::new(200, seed).unwrap();
    let v = replicate_statistics(exec, n, d, Purpose::Synthetic, &cfg, f).unwrap();
    v.iter().sum::<f64>() / v.len() as f64
}

/// Consistency of the spacing and kernel estimators at moderate n.
pub fn criterion_9(exec: &Rayon) -> Verdict {
    let mut v = Verdict::new(9, "consistency at desk scale");
    let u = DistributionSpec::STANDARD_UNIFORM;
    let w = |m| SpacingConfig::new(m).unwrap();
    let big = mean_estimate(exec, &u, 1000, 9, |s| Ok(d2(s, w(20))?.value));
    let small = mean_estimate(exec, &u, 100, 9, |s| Ok(d2(s, w(10))?.value));
    v.check(big < 0.01 && big < small, format!("D2 uniform: n=1000,m=20 mean {big:.5}; n=100,m=10 mean {small:.5} (want < 0.01 and decreasing)"));
    let e = DistributionSpec::Exponential { rate: 1.0 };
    let m = SpacingConfig::recommended(2000);
    let target = 1.0 / 48.0;
    let dd2 = mean_estimate(exec, &e, 2000, 90, |s| Ok(d2(s, m)?.value));
    v.check(
        (0.5 * target..=1.5 * target).contains(&dd2),
        format!("D2 exp(1), n=2000, m={}: mean {dd2:.5} = {:.3} x 1/48 (want 0.5 .. 1.5)", m.m, dd2 / target),
    );
    let dd6 = mean_estimate(exec, &e, 2000, 90, |s| Ok(d6(s, m, None, Variant::Corrected)?.value));
    v.check(
        (0.5 * target..=1.5 * target).contains(&dd6),
        format!("D6 trapezoid exp(1), n=2000, m={}: mean {dd6:.5} = {:.3} x 1/48 (want 0.5 .. 1.5)", m.m, dd6 / target),
    );
    v
}

fn bits(values: &[f64]) -> Vec<u64> {
    values.iter().map(|x| x.to_bits()).collect()
}

/// Identical results at 1 and 8 workers.
pub fn criterion_10() -> Verdict {
    let mut v = Verdict::new(10, "determinism across worker counts");
    let one = Rayon::new(Some(1)).unwrap();
    let eight = Rayon::new(Some(8)).unwrap();
    let cfg = mc();
    let order = RecordOrder::default();

    let cv = |e: &Rayon| critical_values(e, 50, &[2, 5, 10, 24], &[0.1, 0.05, 0.01], order, &NORMAL, CriticalBasis::Signed, &cfg).unwrap();
    let (a, b) = (cv(&one), cv(&eight));
    let same = a.rows.iter().zip(&b.rows).all(|(x, y)| bits(&x.values) == bits(&y.values));
    v.check(same && a == b, "critical value table, N=50".into());

    let pw = |e: &Rayon| power_table(e, 20, &[2, 5, 9], &[0.05], order, &NORMAL, &CHI1, CriticalBasis::Signed, &cfg).unwrap();
    let (a, b) = (pw(&one), pw(&eight));
    let same = a.cells.iter().zip(&b.cells).all(|(x, y)| x.power.to_bits() == y.power.to_bits());
    v.check(same && a == b, "power table, N=20 vs chi-square(1)".into());

    let ds6 = DATASETS[5].sample().unwrap();
    let st = |e: &Rayon| symmetry_test(e, &ds6, SpacingConfig::new(2).unwrap(), 0.05, SymmetryTestOptions::default(), &cfg).unwrap();
    let (a, b) = (st(&one), st(&eight));
    v.check(
        a == b && a.p_value.to_bits() == b.p_value.to_bits() && a.critical_value.to_bits() == b.critical_value.to_bits(),
        format!("symmetry test dataset-6: p = {}", a.p_value),
    );

    let ds5 = DATASETS[4].sample().unwrap();
    let ut = |e: &Rayon| {
        uniformity_test(e, &ds5, EstimatorId::D2, EstimatorSettings { m: Some(11), h: None }, 0.05, &cfg).unwrap()
    };
    let (a, b) = (ut(&one), ut(&eight));
    v.check(a == b, format!("uniformity test dataset-5: p = {}", a.p_value));

    let table = |e: &Rayon| tables::reproduce(e, TableId::Datasets, &cfg, CriticalBasis::Signed).unwrap().to_csv();
    v.check(table(&one) == table(&eight), "dataset table CSV".into());

    for cmd in [["symtest", "--data", "dataset-1"], ["uniftest", "--data", "dataset-5"]] {
        // The command echo differs by the --workers flag itself; everything else must match.
        let report = |w: &str| {
            let mut r = cli_json(&[cmd[0], cmd[1], cmd[2], "--reps", "10000", "--seed", "3", "--json", "--workers", w]);
            r.as_object_mut().unwrap().remove("command");
            r.to_string()
        };
        v.check(report("1") == report("8"), format!("`{} {} {}` JSON report", cmd[0], cmd[1], cmd[2]));
    }
    v
}

/// Every check, in order.
pub fn all() -> Vec<Verdict> {
    let exec = Rayon::new(None).expect("global pool");
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(&exec),
        criterion_4(&exec),
        criterion_5(&exec),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(&exec),
        criterion_10(),
    ]
}
