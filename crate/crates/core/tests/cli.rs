//! End-to-end runs of the `kerrlab` binary: exit codes, output shape,
//! determinism and config round trips.

use std::path::Path;
use std::process::{Command, Output};

use kerrlab::cli::{preset, RunConfig};

fn kerrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kerrlab")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn sweep_preset_columns() {
    let out = kerrlab(&["sweep", "--preset", "fig1a", "--tmax", "1", "--tsteps", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("t,S,Q,eta\n"));
    assert!(text.contains("alpha1=0.2 alpha2=0.2"));
    assert_eq!(data_rows(&text).len(), 5);

    let out = kerrlab(&["sweep", "--preset", "fig2b", "--tmax", "1", "--tsteps", "3"]);
    let text = stdout(&out);
    assert!(text.contains("delta=50 alpha1=2 alpha2=0"));
    assert!(text.contains("t,Q\n"));
}

#[test]
fn empty_time_range_gives_one_row() {
    let out = kerrlab(&["sweep", "--tmin", "1.5", "--tmax", "1.5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("1.5000000000000000e0,"));
}

#[test]
fn full_precision_round_trips() {
    let out = kerrlab(&["sweep", "--tmin", "0.1", "--tmax", "0.1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["columns"], serde_json::json!(["t", "S", "Q", "eta"]));
    let csv = stdout(&kerrlab(&["sweep", "--tmin", "0.1", "--tmax", "0.1"]));
    let row = data_rows(&csv)[0];
    for (cell, v) in row.split(',').zip(doc["rows"][0].as_array().unwrap()) {
        assert_eq!(cell.parse::<f64>().unwrap(), v.as_f64().unwrap());
    }
}

#[test]
fn phasevar_emits_variance_column() {
    let out = kerrlab(&["phasevar", "--preset", "fig7a", "--tmax", "0.5", "--tsteps", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("t,phase_variance\n"));
    let first: Vec<f64> = data_rows(&text)[0].split(',').map(|c| c.parse().unwrap()).collect();
    assert!(first[1] > 0.0 && first[1] < 1.0);
}

#[test]
fn wigner_two_by_two_grid() {
    let out = kerrlab(&["wigner", "--grid", "-1,1,-1,1,2,2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("# normalization="));
    assert_eq!(data_rows(&text).len(), 4);
}

#[test]
fn wigner_json_for_preset() {
    let out = kerrlab(&["wigner", "--preset", "fig4c", "--grid", "-3,3,-3,3,5,4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["t"], 6.36005);
    assert_eq!(doc["params"]["alpha1"], 2.0);
    assert_eq!(doc["values"].as_array().unwrap().len(), 20);
    assert!(doc["normalization"].is_number());
}

#[test]
fn quaddist_and_phasedist() {
    let out = kerrlab(&["quaddist", "--preset", "fig5a-solid", "--xrange=-1,1", "--nodes", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mid: Vec<f64> = data_rows(&text)[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(mid[0], 0.0);
    assert!((mid[1] - 2.0 / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-8);

    let out = kerrlab(&["phasedist", "--preset", "fig6", "--t", "2.94", "--nodes", "9"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("theta,P\n"));
    assert_eq!(data_rows(&text).len(), 9);
}

#[test]
fn single_node_is_a_usage_error() {
    for cmd in ["quaddist", "phasedist"] {
        let out = kerrlab(&[cmd, "--nodes", "1"]);
        assert_eq!(code(&out), 2, "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("nodes"));
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["sweep", "--bogus"],
        &["sweep", "--preset", "fig99"],
        &["sweep", "--format", "xml"],
        &["sweep", "--tmin", "2", "--tmax", "1"],
        &["sweep", "--tsteps", "1"],
        &["wigner", "--s", "1"],
        &["wigner", "--grid", "1,2,3"],
        &["sweep", "--set", "kappa=-1"],
        &["sweep", "--set", "gamma=3"],
        &["sweep", "--config", "/nonexistent/kerrlab.json"],
        &["validate", "--tol", "0"],
    ];
    for args in cases {
        assert_eq!(code(&kerrlab(args)), 2, "{args:?}");
    }
    assert_eq!(code(&kerrlab(&["--help"])), 0);
    assert_eq!(code(&kerrlab(&["--version"])), 0);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_kerrlab"))
        .args(["sweep", "--tmin", "0", "--tmax", "0"])
        .env("KERRLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_kerrlab"))
        .args(["sweep", "--tmin", "0", "--tmax", "0"])
        .env("KERRLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn dump_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let dumped = dir.path().join("cfg.json");
    let out = kerrlab(&[
        "wigner",
        "--preset",
        "fig3b",
        "--s",
        "-0.5",
        "--grid",
        "-2,2,-2,2,11,11",
        "--dump-config",
        "--out",
        dumped.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&dumped).unwrap();
    let cfg: RunConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(cfg.s, Some(-0.5));
    assert_eq!(cfg.grid.nx, 11);
    assert_eq!(cfg.params, preset("fig3b").unwrap().params);

    // feeding the dump back in reproduces it exactly
    let again = dir.path().join("again.json");
    let out = kerrlab(&["wigner", "--config", dumped.to_str().unwrap(), "--dump-config", "--out", again.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let back: RunConfig = serde_json::from_str(&std::fs::read_to_string(&again).unwrap()).unwrap();
    assert_eq!(back, RunConfig { out: Some(again.clone()), ..cfg });
}

#[test]
fn flags_beat_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"params": {"alpha1": 1.0}, "times": {"tmin": 0.0, "tmax": 1.0, "tsteps": 4}}"#).unwrap();
    let out = kerrlab(&["sweep", "--config", path.to_str().unwrap(), "--tsteps", "2", "--dump-config"]);
    let cfg: RunConfig = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cfg.params.alpha1, 1.0);
    assert_eq!(cfg.times.tsteps, 2);
    assert_eq!(cfg.times.tmax, 1.0);
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--out", &p]);
    assert_eq!(code(&kerrlab(&full)), 0);
    std::fs::read(&path).unwrap()
}

#[test]
fn identical_configs_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["sweep", "--preset", "fig2a", "--tmax", "2", "--tsteps", "40"],
        &["wigner", "--preset", "fig3a", "--grid", "-3,3,-3,3,15,15"],
        &["phasedist", "--preset", "fig6", "--nodes", "31", "--format", "json"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let a = run_to(dir.path(), &format!("a{i}"), args);
        let b = run_to(dir.path(), &format!("b{i}"), args);
        assert_eq!(a, b, "{args:?}");
        assert!(!a.is_empty());
    }
}

#[test]
fn validate_restricted_set_passes() {
    let out = kerrlab(&["validate", "--set", "alpha1=2 alpha2=0 delta=0", "--tmax", "3.14", "--tsteps", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    let sets = report["sets"].as_array().unwrap();
    assert_eq!(sets.len(), 1);
    assert!(sets[0]["set"].as_str().unwrap().contains("alpha1=2 alpha2=0 delta=0"));
    let entries = report["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["set"] == sets[0]["set"]));
}

#[test]
fn validate_with_impossible_tolerance_fails_but_reports() {
    let out = kerrlab(&["validate", "--set", "alpha1=2 alpha2=2 delta=0", "--tmax", "1", "--tsteps", "2", "--tol", "1e-20"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
    assert!(report["n_failed"].as_u64().unwrap() > 0);
}

#[test]
fn validate_default_suite_passes() {
    let out = kerrlab(&["validate"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["sets"].as_array().unwrap().len(), 4);
    assert_eq!(report["n_compared"], 3600);
}
