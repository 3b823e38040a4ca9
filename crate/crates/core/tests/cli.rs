use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pspectrum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn energy(args: &[&str]) -> f64 {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    doc["rows"][0]["energy"].as_f64().unwrap()
}

#[test]
fn hydrogen_ground_state() {
    let e = energy(&["eigen", "--pot", "pow:-1", "-n", "1", "-l", "0"]);
    assert!((e + 0.25).abs() < 1e-9);
}

#[test]
fn log_ground_state() {
    let e = energy(&["eigen", "--pot", "log", "-n", "1", "-l", "0"]);
    assert!((e - 1.044332).abs() < 1e-6);
}

#[test]
fn combined_potential_matches_library() {
    let e = energy(&["eigen", "--pot", "pow:1 * 1 + pow:-1 * -1", "-n", "1", "-l", "0"]);
    let pot = pspectrum::RadialPotential::coulomb_linear(1.0, 1.0).unwrap();
    let qn = pspectrum::QuantumNumbers::new(1, 0).unwrap();
    let direct = pspectrum::solve_radial(&pot, qn, &Default::default()).unwrap().energy;
    assert!((e - direct).abs() < 1e-9);
}

#[test]
fn json_carries_schema_and_parameters() {
    let out = run(&["eigen", "--pot", "pow:2", "-n", "2", "-l", "1", "--tol", "1e-10"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["command"], "eigen");
    assert_eq!(doc["parameters"]["tolerance"], "0.0000000001");
    assert_eq!(doc["rows"][0]["energy"], 9.0);
}

#[test]
fn parse_errors_exit_with_usage_code() {
    assert_eq!(run(&["eigen", "--pot", "pow:x"]).status.code(), Some(2));
    assert_eq!(run(&["eigen", "--pot", "pow:-1", "-n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["eigen"]).status.code(), Some(2));
    assert_eq!(run(&["fig", "3"]).status.code(), Some(2));
    assert_eq!(run(&["fig", "1", "--qgrid", "-2:2:4"]).status.code(), Some(2));
    assert_eq!(run(&["eigen", "--pot", "pow:-1 * 1"]).status.code(), Some(2));
}

#[test]
fn unreachable_tolerance_exits_with_numerical_code() {
    let out = run(&["eigen", "--pot", "pow:-1", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("converge"));
}

#[test]
fn figure_csv_is_reproducible() {
    let args = ["fig", "2", "--qgrid", "-1:2:6"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("# schema_version: 1\n"));
    assert!(text.contains("# qgrid: -1:2:6\n"));
}

#[test]
fn table_writes_csv_and_text() {
    let dir = std::env::temp_dir().join(format!("pspectrum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("table1.csv");
    let out = run(&["table1", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(body.lines().filter(|l| !l.starts_with('#')).count(), 26);
    let text = std::fs::read_to_string(csv.with_extension("txt")).unwrap();
    assert!(text.contains("1  0   1.21867   1.37608"));
    std::fs::remove_dir_all(&dir).unwrap();
}
