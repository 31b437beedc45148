use std::io::Write;
use std::process::{Command, Output};

use extropy_core::mc::{replicate_rng, sample_from, Purpose};
use extropy_core::DistributionSpec;
use serde_json::Value;

fn extropy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extropy"))
        .args(args)
        .env_remove("EXTROPY_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = extropy(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).expect("one JSON document")
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn estimate_uses_default_window() {
    let r = json(&["estimate", "--data", "dataset-1", "--estimator", "d1", "--json"]);
    assert_eq!(r["results"]["m"], 6);
    assert_eq!(r["results"]["n"], 20);
    assert!(r["results"]["value"].as_f64().unwrap() >= 0.0);
    assert_eq!(r["input"]["source"], "dataset-1");
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["provenance"]["seed"], 0);
}

#[test]
fn estimate_errors_map_to_data_exit_code() {
    let f = temp_file("3 3 3\n3 3\n");
    let o = extropy(&["estimate", "--file", f.path().to_str().unwrap(), "--estimator", "d4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate sample"), "{}", stderr(&o));

    let o = extropy(&["estimate", "--data", "dataset-1", "--estimator", "d2", "--m", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m=12 must be less than n/2"));

    let f = temp_file("1 2 3\n4 five 6\n");
    let o = extropy(&["estimate", "--file", f.path().to_str().unwrap(), "--estimator", "d1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = extropy(&["estimate", "--file", "/nonexistent/values.txt", "--estimator", "d1"]);
    assert_eq!(o.status.code(), Some(2));

    let f = temp_file("1, 2, 2, 2, 3, 4\n");
    let o = extropy(&["estimate", "--file", f.path().to_str().unwrap(), "--estimator", "d1", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("tied spacing"));
}

#[test]
fn usage_errors() {
    assert_eq!(extropy(&["estimate", "--estimator", "d1"]).status.code(), Some(1));
    assert_eq!(extropy(&["estimate", "--data", "dataset-9", "--estimator", "d1"]).status.code(), Some(1));
    assert_eq!(extropy(&["symtest", "--data", "dataset-1", "--alpha", "1.5"]).status.code(), Some(1));
    assert_eq!(extropy(&["symtest", "--data", "dataset-1", "--reps", "50"]).status.code(), Some(1));
    assert_eq!(extropy(&["estimate", "--data", "dataset-1", "--estimator", "d7"]).status.code(), Some(1));
    assert_eq!(extropy(&["reproduce", "--table", "3"]).status.code(), Some(1));
    let o = extropy(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("symtest"));
}

#[test]
fn symtest_datasets() {
    let o = extropy(&["symtest", "--data", "dataset-2", "--m", "20", "--reps", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("statistic       3.6678"), "{text}");
    assert!(text.contains("p-value         0.0000"));
    assert!(text.contains("decision        reject"));

    let r = json(&["symtest", "--data", "dataset-3", "--m", "3", "--alpha", "0.10", "--reps", "2000", "--json"]);
    assert_eq!(r["results"]["decision"], "do-not-reject");
    let r = json(&["symtest", "--data", "dataset-5", "--m", "11", "--reps", "2000", "--json"]);
    assert_eq!(r["results"]["decision"], "do-not-reject");
    assert_eq!(r["results"]["provenance"]["p_value_mode"], "upper");
    assert_eq!(r["settings"]["m"], 11);
}

#[test]
fn symtest_defaults_and_modes() {
    let r = json(&["symtest", "--data", "dataset-6", "--reps", "500", "--json"]);
    assert_eq!(r["settings"]["m"], 2);
    let upper = r["results"]["p_value"].as_f64().unwrap();
    let aliased = json(&["symtest", "--data", "dataset-6", "--reps", "500", "--pvalue-mode", "paper", "--json"]);
    assert_eq!(aliased["results"]["p_value"].as_f64().unwrap(), upper);
    let two = json(&["symtest", "--data", "dataset-6", "--reps", "500", "--pvalue-mode", "two-sided", "--json"]);
    assert_eq!(two["results"]["provenance"]["p_value_mode"], "two-sided");
    assert!(two["results"]["p_value"].as_f64().unwrap() >= upper);
    let abs = json(&["symtest", "--data", "dataset-6", "--reps", "500", "--critical-basis", "absolute", "--json"]);
    assert!(abs["results"]["critical_value"].as_f64().unwrap() >= r["results"]["critical_value"].as_f64().unwrap());
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_extropy"));
        c.args(["symtest", "--data", "dataset-1", "--reps", "300", "--json"]).args(extra);
        match env {
            Some(v) => c.env("EXTROPY_SEED", v),
            None => c.env_remove("EXTROPY_SEED"),
        };
        c.output().unwrap()
    };
    let o = run(Some("42"), &[]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["provenance"]["seed"], 42);
    assert_eq!(r["results"]["provenance"]["seed"], 42);
    let o = run(Some("42"), &["--seed", "7"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["provenance"]["seed"], 7);
    assert_eq!(run(Some("not-a-number"), &[]).status.code(), Some(1));
    let a = stdout(&run(Some("42"), &[]));
    let b = stdout(&run(None, &["--seed", "42"]));
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("command");
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn uniformity_test_cases() {
    let r = json(&["uniftest", "--data", "dataset-5", "--m", "11", "--reps", "2000", "--json"]);
    assert_eq!(r["results"]["decision"], "do-not-reject");
    assert_eq!(r["results"]["test"], "uniformity");

    let f = temp_file("0.1 0.4 1.5 0.7\n");
    let o = extropy(&["uniftest", "--file", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("support violation"));
    assert!(stderr(&o).contains("1.5"));

    let mut rng = replicate_rng(2024, Purpose::Synthetic, 0);
    let s = sample_from(&DistributionSpec::TriangularUp, 200, &mut rng).unwrap();
    let f = temp_file(&extropy::input::emit_values(s.values()));
    let r = json(&["uniftest", "--file", f.path().to_str().unwrap(), "--reps", "2000", "--json"]);
    assert_eq!(r["results"]["decision"], "reject");
}

#[test]
fn analytic_values() {
    let o = extropy(&["analytic", "--family", "exponential", "--lambda", "1", "--measure", "varextropy"]);
    assert_eq!(stdout(&o), "varextropy  0.0208333  (closed form)\n");
    let o = extropy(&["analytic", "--family", "uniform", "--a", "0", "--b", "1", "--measure", "extropy"]);
    assert_eq!(stdout(&o), "extropy  -0.5000000  (closed form)\n");
    let o = extropy(&[
        "analytic", "--family", "uniform", "--a", "3", "--b", "7", "--measure", "weighted-varextropy", "--weight", "x",
    ]);
    assert_eq!(stdout(&o), "weighted-varextropy  0.0208333  (closed form)\n");
    let r = json(&["analytic", "--family", "chi-square", "--dof", "3", "--measure", "varextropy", "--json"]);
    assert_eq!(r["results"]["method"], "quadrature");
    let o = extropy(&["analytic", "--family", "exponential", "--lambda", "-1", "--measure", "varextropy"]);
    assert_eq!(o.status.code(), Some(1));
    let o = extropy(&["analytic", "--family", "chi-square", "--dof", "1", "--measure", "varextropy"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reproduce_dataset_table() {
    let o = extropy(&["reproduce", "--table", "11", "--scale", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let rows: Vec<&str> = csv.lines().filter(|l| l.starts_with("dataset-")).collect();
    assert_eq!(rows.len(), 6);
    let stats: Vec<&str> = rows.iter().map(|r| r.split(',').nth(3).unwrap()).collect();
    assert_eq!(stats, ["0.1531", "3.6678", "0.1545", "6.2144", "0.0247", "0.5776"]);
    assert!(csv.contains("# seed: 0\n"));
}

#[test]
fn reproduce_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.csv");
    let o = extropy(&["reproduce", "--table", "1", "--scale", "1000", "--out", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["results"]["rows"], 30);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.contains("# replicates: 1000\n"));
    assert!(csv.lines().any(|l| l == "m,N=5,N=10,N=20,N=30,N=40,N=50,N=100"));
    let m40 = csv.lines().find(|l| l.starts_with("40,")).unwrap();
    assert_eq!(m40.matches(',').count(), 7);
    assert!(m40.starts_with("40,,,,,,,0."));
}

#[test]
fn reproduce_size_table() {
    let o = extropy(&["reproduce", "--table", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let sizes: Vec<f64> = csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('N'))
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(sizes.len(), 25);
    assert!(sizes.iter().all(|s| (0.04..=0.06).contains(s)), "{sizes:?}");
}
