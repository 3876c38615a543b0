//! End-to-end checks of the binary: exit codes, reproducibility and
//! configuration handling.

use std::process::{Command, Output};

fn liouville(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liouville"))
        .args(args)
        .env_remove("LIOUVILLE_PRECISION")
        .output()
        .expect("binary runs")
}

#[test]
fn claims_pass_with_exit_zero() {
    let out = liouville(&["claims", "--n-max", "30", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["command"], "claims");
    assert_eq!(body["seed"], 2024);
    let entries = body["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 14); // ten claims + four reduction certificates
    assert!(entries.iter().all(|e| e["outcome"] == "certified"));
}

#[test]
fn thresholds_json_carries_enclosures() {
    let out = liouville(&["thresholds", "--n", "7", "--p", "9/5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let m1 = body["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "M1")
        .unwrap();
    let lo: f64 = m1["enclosure"]["lo"].as_str().unwrap().parse().unwrap();
    let hi: f64 = m1["enclosure"]["hi"].as_str().unwrap().parse().unwrap();
    assert!(lo > 2.6 && hi < 3.7 && hi - lo < 1e-6);
}

#[test]
fn identical_config_gives_byte_identical_reports() {
    let args = ["report", "--n-max", "20", "--trials", "10", "--seed", "7", "--format", "json"];
    let a = liouville(&args);
    let b = liouville(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = liouville(&["claims", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Usage") || err.contains("help"), "{err}");
}

#[test]
fn numeric_input_is_parsed_exactly() {
    // "9/5", "1.8" and "18e-1" all denote the same exact rational
    let frac = liouville(&["thresholds", "--n", "7", "--p", "9/5", "--format", "csv"]);
    let dec = liouville(&["thresholds", "--n", "7", "--p", "1.8", "--format", "csv"]);
    let exp = liouville(&["thresholds", "--n", "7", "--p", "18e-1", "--format", "csv"]);
    assert_eq!(frac.status.code(), Some(0));
    assert_eq!(frac.stdout, dec.stdout);
    assert_eq!(frac.stdout, exp.stdout);
    // non-numeric and hex-float syntax are usage errors
    for bad in ["0x1.8p1", "nan", "1.8.1", "1/0"] {
        let out = liouville(&["thresholds", "--n", "7", "--p", bad]);
        assert_eq!(out.status.code(), Some(64), "input {bad:?}");
    }
}

#[test]
fn config_file_fills_in_missing_flags_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("liouville-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "# batch defaults\nn = 9\np = 11/10\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = liouville(&["thresholds", "--config", cfg]);
    assert_eq!(from_file.status.code(), Some(0));
    let body: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    assert_eq!(body["config"]["n"], "9");

    // the explicit flag overrides the file
    let overridden = liouville(&["thresholds", "--config", cfg, "--n", "8"]);
    let body: serde_json::Value = serde_json::from_slice(&overridden.stdout).unwrap();
    assert_eq!(body["config"]["n"], "8");

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_reports_uniform_classification() {
    let out = liouville(&[
        "sweep", "--n", "5", "--p", "2", "-m", "1", "--heights", "4", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8_lossy(&out.stdout);
    assert!(csv.lines().count() >= 6); // header + 4 heights + uniformity row
    assert!(csv.contains("height-uniform,verified"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("liouville-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("claims.json");
    let to_file = liouville(&[
        "claims",
        "--n-max",
        "15",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    let on_disk = std::fs::read(&path).unwrap();
    let direct = liouville(&["claims", "--n-max", "15", "--format", "json"]);
    assert_eq!(on_disk, direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
