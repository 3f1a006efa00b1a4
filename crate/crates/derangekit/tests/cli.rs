use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> (Output, tempfile::TempDir) {
    let cache = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_derangekit"))
        .args(args)
        .env("DERANGEKIT_CACHE", cache.path())
        .output()
        .unwrap();
    (out, cache)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn count_family() {
    let (out, _c) = run(&["count", "--family", "d11", "--m", "2", "--n", "4", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "12\n");
}

const TWO_CONSTRAINTS: &str = r#"{
  "m": 3, "n": 3, "class": "functions",
  "constraints": [
    {"x": [1], "y": [1], "relation": "containment"},
    {"x": [2, 3], "y": [1, 2], "relation": "containment"}
  ]
}"#;

#[test]
fn count_and_oracle_agree_on_a_system_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("system.json");
    fs::write(&path, TWO_CONSTRAINTS).unwrap();
    let path = path.to_str().unwrap();
    let (counted, _c) = run(&["count", "--system", path]);
    let (enumerated, _c) = run(&["oracle", "--system", path, "--workers", "3"]);
    // f(1) in {2,3}; (f(2), f(3)) not both in {1,2}: 2 * (9 - 4)
    assert_eq!(stdout(&counted), "10\n");
    assert_eq!(stdout(&counted), stdout(&enumerated));
}

#[test]
fn equality_system_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("system.json");
    fs::write(
        &path,
        r#"{"m": 3, "n": 2, "class": "functions", "constraints": [
            {"x": [1], "y": [1], "relation": "equality"},
            {"x": [2, 3], "y": [1, 2], "relation": "equality"}]}"#,
    )
    .unwrap();
    let (out, _c) = run(&["count", "--system", path.to_str().unwrap()]);
    // f(1) = 2 and {f(2), f(3)} a single value
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn oracle_on_unconstrained_system() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("free.json");
    fs::write(&path, r#"{"m": 2, "n": 3, "class": "functions", "constraints": []}"#).unwrap();
    let (out, _c) = run(&["oracle", "--system", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "9\n");
}

#[test]
fn invalid_system_file_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"m": 2, "n": 3, "class": "functions", "constraints": [
            {"x": [1, 2], "y": [1], "relation": "containment"},
            {"x": [2], "y": [1], "relation": "containment"}]}"#,
    )
    .unwrap();
    let (out, _c) = run(&["count", "--system", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("overlap"), "{}", stderr(&out));
}

#[test]
fn parameter_errors_exit_one() {
    let (out, _c) = run(&["count", "--family", "d12", "--m", "1", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("n must be at least 2"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn oracle_block_derangements() {
    let (out, _c) = run(&["oracle", "--family", "blockderange", "--n", "2", "--k", "2"]);
    assert_eq!(stdout(&out), "20\n");
}

#[test]
fn oracle_refuses_large_spaces() {
    let (out, _c) = run(&["oracle", "--family", "d11", "--m", "20", "--n", "10", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn count_matches_oracle_for_every_family() {
    for (family, m, n, k) in [
        ("d11", "4", "3", "2"),
        ("d12", "4", "3", "2"),
        ("d21", "4", "3", "2"),
        ("d22", "5", "3", "2"),
        ("s22", "5", "3", "2"),
        ("i1", "4", "5", "3"),
        ("blockderange", "0", "3", "2"),
    ] {
        let args = ["--family", family, "--m", m, "--n", n, "--k", k];
        let (counted, _c) = run(&[&["count"][..], &args].concat());
        let (enumerated, _c) = run(&[&["oracle"][..], &args].concat());
        assert_eq!(counted.status.code(), Some(0), "{family}: {}", stderr(&counted));
        assert_eq!(stdout(&counted), stdout(&enumerated), "{family}");
    }
}

#[test]
fn seq_prints_index_value_pairs() {
    let (out, _c) = run(&["seq", "--table", "1", "--row", "2", "--from", "1", "--count", "5"]);
    assert_eq!(stdout(&out), "1 0\n2 2\n3 6\n4 12\n5 20\n");
    let (out, _c) = run(&["seq", "--table", "5", "--row", "5", "--from", "1", "--count", "4"]);
    assert_eq!(stdout(&out), "1 0\n2 1\n3 4\n4 18\n");
}

#[test]
fn seq_with_explicit_binding() {
    let (out, _c) = run(&[
        "seq", "--family", "d11", "--m", "n", "--n", "2", "--k", "1", "--from", "1", "--count", "4",
    ]);
    assert_eq!(stdout(&out), "1 1\n2 2\n3 4\n4 8\n");
}

#[test]
fn seq_rejects_malformed_row() {
    let (out, _c) = run(&["seq", "--table", "2", "--row", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed A-number"));
}

#[test]
fn usage_errors_exit_two() {
    let (out, _c) = run(&["count", "--family", "nope", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let (out, _c) = run(&["count", "--family", "d11", "--n", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let (out, _c) = run(&["verify", "--tables", "9", "--offline"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_offline_table_two() {
    let (out, _c) = run(&["verify", "--tables", "2", "--offline"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().any(|l| l.starts_with("2\t9\tA0002444\tunverifiable")));
    assert!(stderr(&out).contains("12 entries"));
}

#[test]
fn verify_reports_false_claims() {
    let (out, _c) = run(&["verify", "--tables", "5", "--offline"]);
    assert_eq!(out.status.code(), Some(3));
    let mismatches: Vec<_> = stdout(&out)
        .lines()
        .filter(|l| l.split('\t').nth(3) == Some("mismatch"))
        .map(|l| l.split('\t').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(mismatches, ["26", "27"]);
}

#[test]
fn verify_note_two_is_unverifiable_offline() {
    let (out, _c) = run(&["verify", "--tables", "note2", "--offline"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.contains("unverifiable") && l.contains("searched k=2..6")));
}

#[test]
fn fetch_offline_reads_fixtures() {
    let (out, _c) = run(&["fetch", "A000079", "--offline"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("0 1\n1 2\n2 4\n"));
    let (out, _c) = run(&["fetch", "A999999", "--offline"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn catalog_is_json() {
    let (out, _c) = run(&["catalog"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 92);
}
