use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dirac-sphere"));
    c.env_remove("DIRAC_SPHERE_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_coeffs(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn basis_reports_scalar_harmonic_dimensions() {
    let out = run(&["basis", "--n", "2", "--m-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let h: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["space"] == "H")
        .map(|r| r["computed"].as_u64().unwrap())
        .collect();
    assert_eq!(h, [1, 3, 5]);
    assert_eq!(v["pass"], true);
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let cold = run(&["basis", "--n", "2", "--m-max", "2", "--cache-dir", cache]);
    assert_eq!(cold.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&cold.stderr).contains("cache hit"));
    assert_eq!(fs::read_dir(cache).unwrap().count(), 9);
    let warm = run(&["basis", "--n", "2", "--m-max", "2", "--cache-dir", cache]);
    assert_eq!(warm.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&warm.stderr).contains("cache hit"));
}

#[test]
fn environment_overrides_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let from_env = dir.path().join("env");
    let from_flag = dir.path().join("flag");
    let out = bin()
        .args(["basis", "--m-max", "0", "--cache-dir", from_flag.to_str().unwrap()])
        .env("DIRAC_SPHERE_CACHE", &from_env)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(from_env.join("n2_m0_P.json").exists());
    assert!(!from_flag.exists());
}

#[test]
fn corrupted_cache_is_an_integrity_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    assert_eq!(run(&["basis", "--m-max", "1", "--cache-dir", cache]).status.code(), Some(0));
    let victim = dir.path().join("n2_m1_P.json");
    let text = fs::read_to_string(&victim).unwrap().replacen("\"orthonormal\": true", "\"orthonormal\": false", 1);
    fs::write(&victim, text).unwrap();
    let out = run(&["verify", "--m-max", "1", "--cache-dir", cache]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n2_m1_P.json"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["basis", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--output", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn spectrum_matches_closed_form() {
    let out = run(&["spectrum", "--n", "2", "--m-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for (m, block) in v["blocks"].as_array().unwrap().iter().enumerate() {
        let expected = m as f64 + 1.0;
        for e in block["eigenvalues"].as_array().unwrap() {
            assert!((e.as_f64().unwrap().abs() - expected).abs() < 1e-8);
        }
    }
    let out = run(&["spectrum", "--n", "3", "--m-max", "1", "--output", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("m,expected,dimension,positive,negative,max_abs_error"));
    assert!(text.contains("\n0,1.5,") && text.contains("\n1,2.5,"));
}

#[test]
fn impossible_tolerance_is_a_controlled_failure() {
    let out = run(&["spectrum", "--n", "2", "--m-max", "3", "--tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["max_abs_error"].as_f64().unwrap() > 1e-15);
}

#[test]
fn weak_quadrature_is_refused() {
    let out = run(&["spectrum", "--m-max", "3", "--quad-degree", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 8"));
}

#[test]
fn verify_passes_for_two_seeds() {
    for seed in ["42", "43"] {
        let out = run(&["verify", "--n", "2", "--m-max", "3", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        let v = json(&out);
        assert_eq!(v["pass"], true);
        assert!(v["checks"].as_array().unwrap().len() >= 20);
    }
}

#[test]
fn verify_failure_still_writes_report() {
    let out = run(&["verify", "--m-max", "1", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn sobolev_examples() {
    let dir = tempfile::tempdir().unwrap();
    let single = write_coeffs(dir.path(), "one.json", r#"{"n":2,"family":"harmonic","entries":[{"m":1,"k":1,"value":1.0}]}"#);
    let v = json(&run(&["sobolev", &single, "--s", "1", "--t", "0"]));
    assert!((v["norm_s"].as_f64().unwrap() - 1.5).abs() < 1e-15);

    let several = write_coeffs(
        dir.path(),
        "several.json",
        r#"{"n":2,"family":"harmonic","entries":[{"m":0,"k":3,"value":3.0},{"m":2,"k":7,"value":-4.0}]}"#,
    );
    let v = json(&run(&["sobolev", &several, "--s", "0", "--t", "0"]));
    assert!((v["norm_s"].as_f64().unwrap() - 5.0).abs() < 1e-15);

    let v = json(&run(&["sobolev", &several, "--a", "2"]));
    assert_eq!(v["tail_norm_s"].as_f64().unwrap(), 0.0);
}

#[test]
fn coefficient_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_coeffs(dir.path(), "bad.json", r#"{"n":2,"family":"harmonic","entries":[{"m":1,"k":24,"value":1.0}]}"#);
    let out = run(&["sobolev", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m=1, k=24"));
    assert_eq!(run(&["sobolev", "/nonexistent/file.json"]).status.code(), Some(3));
    let garbage = write_coeffs(dir.path(), "garbage.json", "[1, 2");
    assert_eq!(run(&["sobolev", &garbage]).status.code(), Some(2));
    let ok = write_coeffs(dir.path(), "ok.json", r#"{"n":2,"family":"harmonic","entries":[]}"#);
    assert_eq!(run(&["sobolev", &ok, "--output", "csv"]).status.code(), Some(2));
}

#[test]
fn project_truncates_and_matches_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_coeffs(
        dir.path(),
        "c.json",
        r#"{"n":2,"family":"harmonic","entries":[{"m":0,"k":0,"value":1.0},{"m":2,"k":8,"value":0.5},{"m":3,"k":16,"value":-2.0}]}"#,
    );
    let out = run(&["project", &file, "--a", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["projected"]["entries"].as_array().unwrap().len(), 2);
    assert!((v["removed_l2"].as_f64().unwrap() - 2.0).abs() < 1e-15);
    assert!(v["kernel_max_diff"].as_f64().unwrap() < 1e-8);

    let mono = write_coeffs(
        dir.path(),
        "m.json",
        r#"{"n":2,"family":"monogenic","entries":[{"m":1,"k":0,"value":1.0},{"m":1,"k":16,"value":1.0}]}"#,
    );
    let v = json(&run(&["project", &mono, "--a", "1", "--d", "1"]));
    // omega P_1 has harmonic degree 2 and is removed; P_1 scales by (1+1)^2
    let lap = v["spinorial_laplacian"]["entries"].as_array().unwrap();
    assert_eq!(lap.len(), 1);
    assert_eq!(lap[0]["value"].as_f64().unwrap(), 4.0);
}

#[test]
fn kernel_and_cauchy_commands() {
    let out = run(&["kernel", "--m-max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["calibration"]["sign"].as_f64().unwrap(), 1.0);
    assert!(v["addition"]["measured"].as_f64().unwrap() < 1e-8);

    let out = run(&["cauchy"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let conv = v["convergence"].as_array().unwrap();
    let err = |d: u64| conv.iter().find(|p| p["quad_degree"] == d).unwrap()["error"].as_f64().unwrap();
    assert!(err(50) < err(20));
    assert!(err(40) < 1e-6);
    assert_eq!(run(&["kernel", "--n", "1"]).status.code(), Some(2));
}
