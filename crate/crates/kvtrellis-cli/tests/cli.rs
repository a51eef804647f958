//! End-to-end runs of the built binary against the bundled fixture files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../kvtrellis/fixtures")
        .join(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kvtrellis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn charmat_prints_the_hamming_matrix_verbatim() {
    let out = run(&["charmat", "--input", &fixture("hamming_8_4.json")]);
    assert!(out.status.success());
    let expected = include_str!("expected/hamming_8_4_charmat.txt");
    assert_eq!(stdout(&out), expected);
}

#[test]
fn charmat_prints_the_selfdual_span_list() {
    let out = run(&["charmat", "--input", &fixture("selfdual_4_2.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    let spans: Vec<&str> = text.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(spans, vec!["(3,0]", "(2,1]", "(1,2]", "(0,3]"]);
    // Lex-first generator for (0,3] is 1001.
    assert!(text.lines().last().unwrap().ends_with("1 0 0 1"));
}

#[test]
fn charmat_exits_2_without_full_support() {
    let dir = std::env::temp_dir().join("kvtrellis_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gap.json");
    std::fs::write(&path, r#"{"p":2,"n":3,"generators":[[1,0,1]]}"#).unwrap();
    let out = run(&["charmat", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_3() {
    let dir = std::env::temp_dir().join("kvtrellis_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["charmat", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bcjr_trellis_display_matches_the_frozen_output() {
    let out = run(&[
        "trellis",
        "--input",
        &fixture("binary_5_3.json"),
        "--kind",
        "bcjr",
        "--spans",
        "(1,3],(3,0],(2,1]",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), include_str!("expected/binary_5_3_bcjr.txt"));
}

#[test]
fn full_characteristic_bcjr_display_with_explicit_check() {
    let out = run(&[
        "trellis",
        "--input",
        &fixture("selfdual_4_2_charmatrix.json"),
        "--check",
        &fixture("selfdual_4_2.json"),
        "--kind",
        "bcjr",
        "--spans",
        "(3,0],(2,1],(1,2],(0,3]",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), include_str!("expected/selfdual_4_2_full_bcjr.txt"));
}

#[test]
fn product_trellis_reports_improperness() {
    let out = run(&[
        "trellis",
        "--input",
        &fixture("binary_3_2.json"),
        "--kind",
        "product",
        "--spans",
        "(1,2],(0,2]",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("biproper false"));
}

#[test]
fn dependent_kv_selection_fails() {
    let out = run(&[
        "trellis",
        "--input",
        &fixture("selfdual_4_2.json"),
        "--kind",
        "kv",
        "--selection",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("linearly dependent"));
}

#[test]
fn non_orthogonal_check_matrix_is_rejected() {
    let out = run(&[
        "dual",
        "--input",
        &fixture("binary_5_3.json"),
        "--check",
        &fixture("binary_5_3.json"),
        "--spans",
        "(1,3],(3,0],(2,1]",
        "--method",
        "bcjr",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not orthogonal"));
}

#[test]
fn dual_comparison_report_shows_the_section_gap() {
    let out = run(&[
        "dual",
        "--input",
        &fixture("binary_5_3.json"),
        "--spans",
        "(1,3],(3,0],(2,1]",
        "--method",
        "both",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cmp = &doc["comparison"];
    assert_eq!(cmp["subtrellis"], serde_json::json!(true));
    assert_eq!(cmp["equal"], serde_json::json!(false));
    assert_eq!(cmp["gaps"], serde_json::json!([0, 0, 0, 0, 1]));
}

#[test]
fn kv_dual_report_passes_on_the_selfdual_code() {
    let out = run(&[
        "kv-dual",
        "--input",
        &fixture("selfdual_4_2.json"),
        "--emit",
        "report",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], serde_json::json!(true));
    assert_eq!(doc["rank_equivalence"]["full_rank_selections"], serde_json::json!(4));
}

#[test]
fn verify_examples_suite_passes() {
    let out = run(&["verify", "--suite", "examples"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], serde_json::json!(true));
}

#[test]
fn verify_random_conjecture_is_deterministic() {
    let a = run(&["verify", "--suite", "kv-conjecture", "--seed", "3", "--count", "2"]);
    let b = run(&["verify", "--suite", "kv-conjecture", "--seed", "3", "--count", "2"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn budget_env_var_limits_enumeration() {
    let out = Command::new(env!("CARGO_BIN_EXE_kvtrellis"))
        .args(["charmat", "--input", &fixture("hamming_8_4.json")])
        .env("TRELLIS_BUDGET", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn export_round_trips_through_dot() {
    let dir = std::env::temp_dir().join("kvtrellis_cli_tests");
    std::fs::create_dir_all(&dir).unwrap();
    let trellis_path = dir.join("trellis.json");
    let out = run(&[
        "trellis",
        "--input",
        &fixture("binary_3_2.json"),
        "--kind",
        "product",
        "--spans",
        "(1,2],(0,2]",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    std::fs::write(&trellis_path, serde_json::to_string(&doc["trellis"]).unwrap()).unwrap();
    let dot = run(&["export", "--trellis", trellis_path.to_str().unwrap(), "--format", "dot"]);
    assert!(dot.status.success());
    let text = stdout(&dot);
    assert!(text.starts_with("digraph trellis"));
    assert!(text.contains("style=dashed"));
}
