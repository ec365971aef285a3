//! End-to-end tests of the command-line interface: exit codes, JSON output
//! stability, and each subcommand's happy path.

use std::process::{Command, Output};

use concordia::report::ReportDocument;

fn concordia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concordia"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn report_kstar_bounds() {
    let out = concordia(&["report", "Kstar"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("g_Z lower bound: 1"));
    assert!(text.contains("g_Z^c lower bound: 1 (p = 5"));
    assert!(text.contains("[575, 575]"));
    assert!(text.contains("topologically_slice = true"));
}

#[test]
fn report_triple_kstar_with_prime_flag() {
    let out = concordia(&["report", "Kstar # Kstar # Kstar", "--prime", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("g_Z^c lower bound: 3 (p = 5"));
}

#[test]
fn report_unknot_is_all_zero() {
    let out = concordia(&["report", "U"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("g_Z lower bound: 0"));
    assert!(text.contains("g_Z^c lower bound: 0"));
}

#[test]
fn json_output_round_trips_and_is_byte_stable() {
    let dir = std::env::temp_dir();
    let path_a = dir.join("concordia-cli-test-a.json");
    let path_b = dir.join("concordia-cli-test-b.json");
    let out = concordia(&["report", "Kstar", "--json", path_a.to_str().unwrap()]);
    assert!(out.status.success());
    let out2 = concordia(&["report", "Kstar", "--json", path_b.to_str().unwrap()]);
    assert!(out2.status.success());

    let bytes_a = std::fs::read(&path_a).unwrap();
    let bytes_b = std::fs::read(&path_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "JSON must be byte-stable across runs");
    assert_eq!(stdout(&out), stdout(&out2));

    let doc = ReportDocument::from_json(std::str::from_utf8(&bytes_a).unwrap()).unwrap();
    assert_eq!(doc.knot, "Kstar");
    assert_eq!(doc.gz_lower, 1);
    assert_eq!(doc.gzc.p, Some(5));
    assert_eq!(doc.gzc.bound, 1);
    assert_eq!(doc.dbar_table.len(), 24);
    assert!(doc.dbar_table.iter().all(|e| e.value.contains('/')));

    std::fs::remove_file(path_a).ok();
    std::fs::remove_file(path_b).ok();
}

#[test]
fn parse_errors_exit_1() {
    let out = concordia(&["report", "T(2,4)"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("semantic error at 1:5"), "stderr: {err}");

    let out = concordia(&["report", "T(2,3) # "]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
}

#[test]
fn hypothesis_failures_exit_2() {
    let out = concordia(&["report", "T(2,23)", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = concordia(&["report", "Kstar", "--prime", "23"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_limits_exit_3() {
    let out = concordia(&["oracle", "metabolizers", "--seed", "1", "--max-order", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn dbar_table_command() {
    let out = concordia(&["dbar", "Kstar", "--prime", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(5,0) -> 0/1"));
    assert!(text.contains("(10,0) -> 2/1"));
    assert!(text.contains("(0,5) -> 4/1"));
    assert!(text.contains("(0,10) -> 6/1"));

    let out = concordia(&["dbar", "U"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("empty"));

    let out = concordia(&["dbar", "Kstar", "--prime", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_suites_pass_and_reject_unknown_names() {
    for suite in ["lemma-key", "metabolizers", "selfconc"] {
        let out = concordia(&["oracle", suite, "--seed", "7"]);
        assert!(out.status.success(), "suite {suite} failed: {}", stdout(&out));
        assert!(stdout(&out).contains("all passed"));
    }
    let out = concordia(&["oracle", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_bound_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_concordia"))
        .args(["oracle", "metabolizers", "--seed", "1"])
        .env("CONCORDIA_ORACLE_BOUND", "2")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}
