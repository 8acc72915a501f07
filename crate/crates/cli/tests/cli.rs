//! End-to-end tests of the `mackey` binary: exit codes, frozen outputs,
//! and byte-level determinism across repeated runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mackey"))
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_str().expect("utf-8 path").to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn marks_on_c2_prints_the_fixed_point_table() {
    let out = run(&["marks", "--input", &fixture("c2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("H0   2   0"), "free row: {text}");
    assert!(text.contains("H1   1   1"), "fixed row: {text}");
    assert!(text.contains("determinant 2"), "determinant: {text}");
}

#[test]
fn marks_json_gives_the_matrix_and_determinant() {
    let out = run(&["marks", "--input", "\"c2\"", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(v["matrix"], serde_json::json!([[2, 0], [1, 1]]));
    assert_eq!(v["determinant"], "2");
    assert_eq!(v["classes"], serde_json::json!(["H0", "H1"]));
}

#[test]
fn marks_csv_is_a_plain_matrix() {
    let out = run(&["marks", "--input", "\"c2\"", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), ",H0,H1\nH0,2,0\nH1,1,1\n");
}

#[test]
fn burnside_ring_on_c2_squares_the_free_orbit() {
    let out = run(&["burnside-ring", "--input", "\"c2\""]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.contains("[G/H0]·[G/H0] = 2[G/H0]"),
        "doubling law: {text}"
    );
    assert!(text.contains("unit [G/H1]"), "unit: {text}");
}

#[test]
fn double_cosets_match_the_classical_counts_for_s3() {
    let out = run(&["double-cosets", "--input", &fixture("s3.json"), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        ",H0,H1,H2,H3\nH0,6,3,2,1\nH1,3,2,1,1\nH2,2,1,2,1\nH3,1,1,1,1\n"
    );
}

#[test]
fn basis_of_free_orbit_to_point_is_one_key() {
    let out = run(&["basis", "--input", &fixture("basis_c2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("(H0; 1, 1)"), "single key: {text}");
    assert!(text.contains("free of rank 1"), "rank line: {text}");
}

#[test]
fn composing_with_the_identity_span_returns_the_span_verbatim() {
    let out = run(&[
        "span-compose",
        "--input",
        &fixture("span_identity_then_collapse.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    // The composite must be the collapse span itself: identity left leg,
    // constant right leg.
    assert_eq!(v["span"]["left"]["images"], serde_json::json!([1, 2]));
    assert_eq!(v["span"]["right"]["images"], serde_json::json!([1, 1]));
    assert_eq!(v["span"]["right"]["target"]["n"], serde_json::json!(1));
    assert_eq!(v["class"], serde_json::json!([{"L": 0, "a": 1, "b": 1}]));
}

#[test]
fn mackey_validate_accepts_the_represented_functor() {
    let out = run(&[
        "mackey-validate",
        "--input",
        &fixture("mackey_burnside_pt_c2.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("valid"), "status: {text}");
    assert!(text.contains("H0: Z"), "level 0: {text}");
    assert!(text.contains("H1: Z^2"), "level 1: {text}");
}

#[test]
fn mackey_validate_rejects_a_broken_transfer_with_a_witness() {
    let out = run(&[
        "mackey-validate",
        "--input",
        &fixture("mackey_broken_c2.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(v["valid"], serde_json::json!(false));
    let failures = v["failures"].as_array().expect("failure list");
    assert!(!failures.is_empty());
    for f in failures {
        assert_eq!(f["axiom"], "functoriality");
        assert!(f["witness"]
            .as_str()
            .expect("witness string")
            .contains("composition failure"));
    }
}

#[test]
fn em_check_reports_the_round_trip_isomorphism() {
    let out = run(&[
        "em-check",
        "--input",
        &fixture("mackey_burnside_pt_c2.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout_of(&out).contains("π₀ round-trip isomorphism found"),
        "report line: {}",
        stdout_of(&out)
    );
}

#[test]
fn em_check_fails_on_invalid_tables() {
    let out = run(&["em-check", "--input", &fixture("mackey_broken_c2.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn susp_check_matches_the_represented_functor_on_a_point() {
    let out = run(&["susp-check", "--input", &fixture("gset_pt_c2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("matches the represented Burnside functor"));
    assert!(text.contains("H1: basis size 2, value Z^2"), "levels: {text}");
}

#[test]
fn coherence_runs_the_catalog_clean() {
    let out = run(&["coherence"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains(", 0 failed"), "tail: {text}");
    assert!(!text.contains("FAIL"), "no failures: {text}");
}

#[test]
fn malformed_json_exits_2() {
    let out = run(&["marks", "--input", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).expect("utf-8 stderr");
    assert!(err.starts_with("error:"), "stderr: {err}");
}

#[test]
fn group_cap_exits_2_and_names_the_cap() {
    let out = run(&["marks", "--input", "\"s4\"", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).expect("utf-8 stderr");
    assert!(err.contains("group_order"), "cap name: {err}");
}

#[test]
fn unknown_flags_are_rejected() {
    let out = run(&["marks", "--input", "\"c2\"", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_is_an_input_error() {
    let out = run(&["marks"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_deterministic_across_runs() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["marks", "--input", "\"s3\"", "--format", "text"],
        vec!["marks", "--input", "\"s3\"", "--format", "json"],
        vec!["marks", "--input", "\"s3\"", "--format", "csv"],
        vec!["burnside-ring", "--input", "\"s3\"", "--format", "json"],
        vec!["coherence", "--seed", "11"],
        vec!["double-cosets", "--input", "\"c2xc2\"", "--format", "csv"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code(), "exit code for {args:?}");
        assert_eq!(a.stdout, b.stdout, "stdout bytes for {args:?}");
    }
}
