use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_urnlab");

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn urnlab(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("URNLAB_SEED").output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn simulate_is_reproducible_and_matches_golden() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = urnlab(&[
            "simulate", "--model", "simon", "--n", "1000", "--p", "0.5", "--reps", "1", "--seed", "42", "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    for name in ["replicate_0000.csv", "summary.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    let csv = std::fs::read_to_string(a.path().join("replicate_0000.csv")).unwrap();
    assert_eq!(csv, golden("simulate_simon_seed42.csv"));
    let summary = std::fs::read_to_string(a.path().join("summary.csv")).unwrap();
    assert_eq!(summary, golden("simulate_simon_seed42_summary.csv"));

    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(a.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "simulate");
    assert_eq!(manifest["seed"], 42);
    assert_eq!(manifest["params"]["kind"], "simon");
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
}

#[test]
fn simulate_writes_one_file_per_replicate() {
    let dir = tempfile::tempdir().unwrap();
    let out = urnlab(&[
        "simulate", "--model", "mod1", "--beta", "0.5", "--p", "0.5", "--n", "100000", "--reps", "50", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csvs = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("replicate_"))
        .count();
    assert_eq!(csvs, 50);
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 51);
    let first = std::fs::read_to_string(dir.path().join("replicate_0000.csv")).unwrap();
    assert!(first.starts_with("n,R,R1,R2,R3,R4,R5,R6,R7,R8,R9,R10,Roverflow\n"));
}

#[test]
fn seed_falls_back_to_environment() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let base = ["simulate", "--model", "elementary", "--theta", "0.5", "--n", "500"];
    let out = Command::new(BIN)
        .args(base)
        .args(["--out", a.path().to_str().unwrap()])
        .env("URNLAB_SEED", "42")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = urnlab(&[&base[..], &["--seed", "42", "--out", b.path().to_str().unwrap()]].concat());
    assert!(out.status.success());
    assert_eq!(
        std::fs::read(a.path().join("replicate_0000.csv")).unwrap(),
        std::fs::read(b.path().join("replicate_0000.csv")).unwrap()
    );
}

#[test]
fn invalid_flag_combinations_name_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cases: [(&[&str], &str); 5] = [
        (&["--model", "elementary", "--p", "0.5", "--theta", "0.5"], "--p"),
        (&["--model", "simon", "--theta", "0.5", "--p", "0.5"], "--theta"),
        (&["--model", "mod1", "--p", "0.5"], "--beta"),
        (&["--model", "mod1", "--beta", "0.5", "--p", "0.5", "--mod2-always-retoss"], "--mod2-always-retoss"),
        (&["--model", "elementary", "--theta", "1.5"], "--theta"),
    ];
    for (flags, flag) in cases {
        let out = urnlab(&[&["simulate", "--n", "10", "--out", d][..], flags].concat());
        assert!(!out.status.success());
        let err = stderr(&out);
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
        assert!(err.contains(flag), "{err}");
    }
}

#[test]
fn theory_quantities() {
    let out = urnlab(&["theory", "--quantity", "yule-pmf", "--p", "0.5", "--i", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout.clone()).unwrap(), golden("theory_yule_pmf.json"));
    assert!((stdout_json(&out)["value"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);

    let v = stdout_json(&urnlab(&["theory", "--quantity", "janson", "--m", "2", "--p", "0.5"]));
    let eig: Vec<f64> = v["values"]["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((eig[0] - 1.0).abs() < 1e-12 && (eig[1] + 0.5).abs() < 1e-12, "{eig:?}");

    let v = stdout_json(&urnlab(&["theory", "--quantity", "karlin-var", "--theta", "0.5", "--n", "10000"]));
    assert!((v["value"].as_f64().unwrap() - 57.24).abs() < 0.01);

    let out = urnlab(&["theory", "--quantity", "poisson-moments", "--theta", "0.5", "--n", "10000", "--kmax", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("theory_poisson_moments.json"));

    let v = stdout_json(&urnlab(&["theory", "--quantity", "simon-limits", "--p", "0.5", "--kmax", "2"]));
    let f = &v["values"]["fractions"];
    assert!((f[0].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!((f[1].as_f64().unwrap() - 1.0 / 12.0).abs() < 1e-12);

    let v = stdout_json(&urnlab(&[
        "theory", "--quantity", "fclt-cov", "--theta", "0.5", "--i", "1", "--j", "1", "--tau", "1", "--t", "1",
    ]));
    assert!((v["value"].as_f64().unwrap() - 0.734_174_4).abs() < 1e-6);

    let v = stdout_json(&urnlab(&["theory", "--quantity", "karlin-cov", "--theta", "0.5", "--ri", "1", "--rj", "2"]));
    assert!((v["value"].as_f64().unwrap() + 0.05875).abs() < 1e-5);

    assert!(!urnlab(&["theory", "--quantity", "nonsense"]).status.success());
    let out = urnlab(&["theory", "--quantity", "karlin-cov", "--theta", "0.5", "--ri", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("--rj"));
}

#[test]
fn compare_simon_limits_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = urnlab(&[
        "compare", "--model", "simon", "--p", "0.5", "--n", "1000000", "--reps", "20", "--against", "simon-limits",
        "--seed", "3", "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let report = stdout_json(&out);
    assert_eq!(report["model"], "simon");
    assert_eq!(report["reps"], 20);
    assert_eq!(report["seed"], 3);
    assert!(report["rows"].as_array().unwrap().iter().all(|r| r["pass"] == true));
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("name,empirical,target,se,z,pass\n"));
    assert_eq!(csv.lines().count(), report["rows"].as_array().unwrap().len() + 1);
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn compare_divergence_has_large_z_row() {
    let out = urnlab(&[
        "compare", "--model", "mod1", "--beta", "0.5", "--p", "0.5", "--n", "100000", "--reps", "50", "--against",
        "divergence",
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    let z = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "mod1: theta_hat - theta_star")
        .unwrap()["z"]
        .as_f64()
        .unwrap();
    assert!(z.abs() > 3.0);
}

#[test]
fn compare_rejects_too_few_covariance_replicates() {
    let out = urnlab(&["compare", "--model", "elementary", "--theta", "0.5", "--n", "100", "--reps", "10", "--against", "covariance"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("500"));
    let out = urnlab(&["compare", "--model", "simon", "--p", "0.5", "--n", "100", "--against", "variance"]);
    assert!(stderr(&out).contains("--model"));
}

#[test]
fn compare_failing_row_exits_one() {
    // Three balls: R_3 takes three values, far from the Gaussian limit.
    let out = urnlab(&["compare", "--model", "elementary", "--theta", "0.5", "--n", "3", "--reps", "200", "--against", "variance"]);
    let report = stdout_json(&out);
    let any_fail = report["rows"].as_array().unwrap().iter().any(|r| r["pass"] == false);
    assert!(any_fail);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_fixture_matches_golden() {
    let out = Command::new(BIN).current_dir(data_dir()).args(["analyze", "fixture.txt"]).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("analyze_fixture.json"));
}

#[test]
fn analyze_reads_stdin_and_writes_outputs() {
    use std::io::Write;
    let dir = tempfile::tempdir().unwrap();
    let mut child = Command::new(BIN)
        .args(["analyze", "--out", dir.path().to_str().unwrap()])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all("Мой дядя самых честных правил".as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v[0]["n"], 5);
    assert_eq!(v[0]["r_n"], 5);
    assert_eq!(v[0]["theta_star"], 1.0);
    let csv = std::fs::read_to_string(dir.path().join("000_stdin.csv")).unwrap();
    assert!(csv.starts_with("n,R,R1,"));
    assert!(dir.path().join("000_stdin.json").exists());
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn analyze_missing_file_fails() {
    let out = urnlab(&["analyze", "/nonexistent/file.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/nonexistent/file.txt"));
}
