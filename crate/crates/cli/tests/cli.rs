//! End-to-end tests of the `uncrel` binary: exit codes, report contents,
//! and diagnostics.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uncrel"))
}

fn work_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("uncrel_cli_{}_{tag}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn eval_fig1_scenario_reports_expected_values() {
    let dir = work_dir("eval_fig1");
    let scenario = dir.join("scenario.json");
    let out = dir.join("report.json");
    fs::write(
        &scenario,
        r#"{
            "state": {"bloch": [0.0, 0.8660254038, 0.0]},
            "observables_a": ["sigma_x", "sigma_z"]
        }"#,
    )
    .unwrap();
    let output = run(&[
        "eval",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "{output:?}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let sum = &report["sum_bounds"];
    assert!((sum["lhs"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((sum["thm1"].as_f64().unwrap() - 1.071_796_8).abs() < 1e-6);
    assert!((sum["maccone"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((sum["lambda_max"].as_f64().unwrap() - 1.866_025_4).abs() < 1e-6);
    assert!(sum.get("chen_fei").is_none());
    assert_eq!(report["degenerate"].as_array().unwrap().len(), 0);
}

#[test]
fn eval_maximally_mixed_two_paulis_is_tight_not_degenerate() {
    let dir = work_dir("eval_mixed");
    let scenario = dir.join("scenario.json");
    let out = dir.join("report.json");
    fs::write(
        &scenario,
        r#"{
            "state": {"bloch": [0.0, 0.0, 0.0]},
            "observables_a": ["sigma_x", "sigma_y"]
        }"#,
    )
    .unwrap();
    let output = run(&[
        "eval",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    // M = I so the bound is tight: thm1 = lhs = 2.
    assert!((report["sum_bounds"]["thm1"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((report["sum_bounds"]["lambda_max"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn eval_trace_not_one_exits_2_with_diagnostic() {
    let dir = work_dir("eval_trace");
    let scenario = dir.join("scenario.json");
    let out = dir.join("report.json");
    fs::write(
        &scenario,
        r#"{
            "state": {"matrix": [
                [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]
            ]},
            "observables_a": [[[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                               [[0.0, 0.0], [2.0, 0.0], [0.0, 0.0]],
                               [[0.0, 0.0], [0.0, 0.0], [3.0, 0.0]]]]
        }"#,
    )
    .unwrap();
    let output = run(&[
        "eval",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("TraceNotOne"), "stderr: {stderr}");
    assert!(
        !out.exists(),
        "no report should be written on validation failure"
    );
}

#[test]
fn eval_degenerate_product_exits_3_but_writes_report() {
    let dir = work_dir("eval_degenerate");
    let scenario = dir.join("scenario.json");
    let out = dir.join("report.json");
    fs::write(
        &scenario,
        r#"{
            "state": {"bloch": [0.0, 0.0, 0.0]},
            "observables_a": ["sigma_x"],
            "observables_b": ["sigma_y"]
        }"#,
    )
    .unwrap();
    let output = run(&[
        "eval",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 3);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("AllCovariancesVanish"), "stderr: {stderr}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report["product_bounds"]["thm2"].is_null());
    assert!(report["product_bounds"]["cor2"].is_null());
    assert!((report["product_bounds"]["c22"].as_f64().unwrap()).abs() < 1e-12);
    let names: Vec<&str> = report["degenerate"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["bound"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"thm2"));
    assert!(names.contains(&"cor2"));
}

#[test]
fn eval_pati_scenario() {
    let dir = work_dir("eval_pati");
    let scenario = dir.join("scenario.json");
    let out = dir.join("report.json");
    // [σ1, σ2] = i·(2σ3); on the north pole the bound is tight at 1.
    fs::write(
        &scenario,
        r#"{
            "state": {"bloch": [0.0, 0.0, 1.0]},
            "observables_a": ["sigma_x"],
            "observables_b": ["sigma_y"],
            "pati_c": [[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-2.0, 0.0]]]
        }"#,
    )
    .unwrap();
    let output = run(&[
        "eval",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "{output:?}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!((report["pati"]["lhs"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((report["pati"]["rhs"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn eval_bad_json_exits_2_with_location() {
    let dir = work_dir("eval_badjson");
    let scenario = dir.join("scenario.json");
    fs::write(&scenario, "{ not json").unwrap();
    let output = run(&[
        "eval",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        dir.join("r.json").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line"), "stderr: {stderr}");
}

#[test]
fn figure_unknown_id_exits_2() {
    let dir = work_dir("figure_bad");
    let output = run(&[
        "figure",
        "--id",
        "fig9",
        "--out",
        dir.join("f.csv").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn figure_writes_expected_header() {
    let dir = work_dir("figure_fig2");
    let out = dir.join("fig2.csv");
    let output = run(&[
        "figure",
        "--id",
        "fig2",
        "--points",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta,lhs,thm1,chen_fei,cor3,pairwise_rur,lambda_max,sigma_max"
    );
    assert_eq!(lines.count(), 7);
}

#[test]
fn sweep_bloch_circle_roundtrip() {
    let dir = work_dir("sweep_circle");
    let spec = dir.join("spec.json");
    let out = dir.join("sweep.csv");
    fs::write(
        &spec,
        r#"{
            "family": {"bloch_circle": {
                "radius": 0.9,
                "plane": "yz",
                "observables_a": ["sigma_y", "sigma_z", "sigma_x"]
            }},
            "theta_start": 0.0,
            "theta_end": 6.283185307179586,
            "points": 13
        }"#,
    )
    .unwrap();
    let output = run(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "{output:?}");
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("theta,lhs,thm1,chen_fei,"));
    assert_eq!(csv.lines().count(), 14);
}

#[test]
fn sweep_parse_error_exits_2() {
    let dir = work_dir("sweep_bad");
    let spec = dir.join("spec.json");
    fs::write(
        &spec,
        r#"{"family": "fig7", "theta_start": 0, "theta_end": 1, "points": 3}"#,
    )
    .unwrap();
    let output = run(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        dir.join("s.csv").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn verify_zero_trials_exits_2() {
    let output = run(&["verify", "--trials", "0"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn verify_small_run_exits_0_and_prints_summary() {
    let output = run(&[
        "verify",
        "--trials",
        "20",
        "--seed",
        "7",
        "--dim-min",
        "2",
        "--dim-max",
        "3",
    ]);
    assert_eq!(exit_code(&output), 0, "{output:?}");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("checks run:"), "stdout: {stdout}");
    assert!(
        stdout.contains("worst margin per check:"),
        "stdout: {stdout}"
    );
}

#[test]
fn verify_bad_dims_exit_2() {
    let output = run(&[
        "verify",
        "--trials",
        "5",
        "--dim-min",
        "1",
        "--dim-max",
        "3",
    ]);
    assert_eq!(exit_code(&output), 2);
    let output = run(&[
        "verify",
        "--trials",
        "5",
        "--dim-min",
        "2",
        "--dim-max",
        "9",
    ]);
    assert_eq!(exit_code(&output), 2);
}
