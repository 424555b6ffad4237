//! End-to-end runs of the binary against the fixture corpus: byte-exact
//! golden outputs, exit-code contracts, and format round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logjet"))
        .current_dir(fixture_dir())
        .args(args)
        .output()
        .expect("the binary runs")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join("golden").join(name))
        .unwrap_or_else(|e| panic!("golden file {name}: {e}"))
}

fn check_golden(args: &[&str], name: &str) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden(name),
        "output drifted for {args:?}"
    );
}

#[test]
fn monoid_report_matches_golden() {
    check_golden(&["monoid", "toricQ.json", "--bound", "4"], "monoid_toricQ.txt");
}

#[test]
fn evsp_axes_has_nine_components() {
    let out = run(&["evsp", "axes.json", "--bound", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("components: 9"));
    assert_eq!(text, golden("evsp_axes.txt"));
}

#[test]
fn jets_toric_vertex_presentation_matches_golden() {
    let out = run(&["jets", "toricQ.json", "-m", "0", "--component", "2,2,2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("variables: 3"));
    assert!(text.contains("equations: 1"));
    assert_eq!(text, golden("jets_toricQ_m0.txt"));
}

#[test]
fn embdim_cusp_agrees_with_its_oracle() {
    let out = run(&["embdim", "cusp.json", "-m", "5", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("formula value: 9"));
    assert!(text.contains("oracle value: 9"));
    assert_eq!(text, golden("embdim_cusp_m5.txt"));
}

#[test]
fn module_report_matches_golden() {
    check_golden(&["module", "a1.json", "-m", "3"], "module_a1_m3.txt");
}

#[test]
fn relative_jacobian_matches_golden() {
    check_golden(
        &["jacobian", "node.json", "--relative"],
        "jacobian_node_relative.txt",
    );
}

#[test]
fn relative_embdim_matches_golden() {
    check_golden(
        &["embdim", "node.json", "-m", "3", "--relative"],
        "embdim_node_relative_m3.txt",
    );
}

#[test]
fn json_format_carries_the_same_payload() {
    let out = run(&["embdim", "cusp.json", "-m", "5", "--oracle", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, golden("embdim_cusp_m5.json"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["formula value"], 9);
    assert_eq!(v["oracle value"], 9);
    assert_eq!(v["oracle agrees"], true);
    assert_eq!(v["m"], 5);
    assert_eq!(v["invariant factors"], serde_json::json!([14, 3]));
}

#[test]
fn identical_runs_give_identical_bytes() {
    let first = run(&["embdim", "node.json", "-m", "3", "--relative"]);
    let second = run(&["embdim", "node.json", "-m", "3", "--relative"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn task_block_supplies_the_defaults() {
    let out = run(&["jets", "toricQ.json"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("m: 1"));
    assert!(text.contains("component: (2, 2, 2)"));
}

#[test]
fn unit_jets_come_from_r_zero() {
    let out = run(&["jets", "axes.json", "-m", "1", "-r", "0"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kind: unit jet"));
}

#[test]
fn evsp_needs_positive_r() {
    let out = run(&["evsp", "axes.json", "-r", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"field\": {\"char\": 0}").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_logjet"))
        .arg("monoid")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn unknown_keys_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.json");
    std::fs::write(&path, r#"{"field": {"char": 0}, "extra": 1}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_logjet"))
        .arg("monoid")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invisible_relations_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shallow.json");
    std::fs::write(
        &path,
        r#"{"field": {"char": 0}, "module": {"precision": 3, "generators": 2, "rows": [["t^4", "t^3"]], "mode": "arc"}}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_logjet"))
        .arg("module")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("insufficient precision"));
}

#[test]
fn oracle_with_relative_is_refused() {
    let out = run(&["embdim", "node.json", "-m", "3", "--relative", "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_jet_order_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("notask.json");
    std::fs::write(
        &path,
        r#"{"field": {"char": 0}, "scheme": {"variables": ["x"]}}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_logjet"))
        .arg("jets")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no jet order"));
}
