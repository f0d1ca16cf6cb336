use std::process::Command;

use gschur_cli::run_cli;

fn gschur(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gschur")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn cli(args: &[&str]) -> gschur_cli::CliOutput {
    run_cli(std::iter::once("gschur").chain(args.iter().copied()))
}

#[test]
fn counterexample_product_coefficients() {
    let (code, out, _) = gschur(&["mult", "--algebra", "mdiag:2", "-n", "2", "-d", "2", "--oracle", "(E12,E12|1,1|1,1)", "(E21,E21|1,1|1,1)"]);
    assert_eq!(code, 0);
    assert!(out.contains("4*(E11,E11|1,1|1,1)"), "{out}");
    let out = cli(&["mult", "--algebra", "mdiag:2", "-n", "2", "-d", "2", "--oracle", "(E12,E12|1,1|1,1)", "(E21,E21|1,1|1,2)"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("2*(E11,E11|1,1|1,2)"), "{}", out.stdout);
}

#[test]
fn vertex_idempotent_acts_as_identity_on_arrow() {
    let out = cli(&["mult", "--algebra", "ext-zigzag:1", "-n", "2", "-d", "1", "--oracle", "(e0|1|1)", "(a0_1|1|2)"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("(a0_1|1|2)"), "{}", out.stdout);
}

#[test]
fn malformed_input_exits_with_usage_code() {
    for args in [
        vec!["mult", "-n", "2", "(e0|3|1)", "(e0|1|1)"],
        vec!["mult", "(zz|1|1)", "(e0|1|1)"],
        vec!["mult", "(e0|1|1", "(e0|1|1)"],
        vec!["verify", "no-such-suite"],
        vec!["--algebra", "nonsense:3", "spec"],
        vec!["--algebra", "ext-zigzag:99", "spec"],
        vec!["reload", "/nonexistent/table.txt"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = gschur(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_all_passes_on_small_zigzag() {
    let (code, out, _) = gschur(&["verify", "--algebra", "ext-zigzag:1", "-n", "2", "-d", "2", "all"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks.iter().all(|c| c.get("wall_ms").is_none()));
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "--algebra", "ext-zigzag:1", "-n", "2", "-d", "1", "--seed", "3", "all"];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
    let timed = cli(&["verify", "--algebra", "ext-zigzag:1", "-n", "1", "-d", "1", "--timings", "presentation"]);
    assert!(timed.stdout.contains("wall_ms"));
}

#[test]
fn counterexample_dcp_is_expected_pass() {
    let out = cli(&["verify", "--algebra", "matrix:1,1", "-n", "2", "-d", "2", "dcp", "--format", "text"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("EXPECTED-PASS"), "{}", out.stdout);
    assert!(out.stdout.contains("sound false"), "{}", out.stdout);
}

#[test]
fn dcp_report_for_zigzag_truncation() {
    let out = cli(&["dcp", "--algebra", "ext-zigzag:1", "-n", "2", "-d", "2"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dcp"], true);
    assert_eq!(v["sound"], true);
    assert_eq!(v["divisors"].as_array().unwrap().len(), 0);
}

#[test]
fn gram_is_unimodular() {
    let out = cli(&["gram", "--algebra", "zigzag:1", "-n", "1", "-d", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("det = -1") || out.stdout.contains("det = 1"), "{}", out.stdout);
    let json = cli(&["gram", "--algebra", "zigzag:2", "-n", "2", "-d", "1", "--format", "json"]);
    assert_eq!(json.code, 0);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert!(v["determinant"] == "1" || v["determinant"] == "-1", "{}", v["determinant"]);
    assert_eq!(v["unimodular"], true);
    assert_eq!(v["symmetric"], true);
}

#[test]
fn dump_and_reload_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.txt");
    let p = path.to_str().unwrap();
    for basis in ["eta", "xi"] {
        let out = cli(&["dump", "--algebra", "ext-zigzag:1", "-n", "2", "-d", "2", "--basis", basis, "--out", p]);
        assert_eq!(out.code, 0);
        let back = cli(&["reload", "--algebra", "ext-zigzag:1", "-n", "2", "-d", "2", p]);
        assert_eq!(back.code, 0, "{}{}", back.stdout, back.stderr);
    }
    std::fs::write(&path, "table eta n=2 d=2 size=1\nbasis 0 e0|1|1\n0 0 7 1\n").unwrap();
    assert_eq!(cli(&["reload", "--algebra", "ext-zigzag:1", "-n", "2", "-d", "2", p]).code, 2);
}

#[test]
fn spec_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alg.json");
    let p = path.to_str().unwrap();
    let first = cli(&["spec", "--algebra", "ext-zigzag:2"]);
    assert_eq!(first.code, 0);
    std::fs::write(&path, &first.stdout).unwrap();
    let second = cli(&["spec", "--algebra", p]);
    assert_eq!(second.code, 0);
    assert_eq!(first.stdout, second.stdout);
    let via_file = cli(&["mult", "--algebra", p, "-n", "2", "-d", "1", "--oracle", "(a0_1|1|1)", "(a1_0|1|2)"]);
    let builtin = cli(&["mult", "--algebra", "ext-zigzag:2", "-n", "2", "-d", "1", "--oracle", "(a0_1|1|1)", "(a1_0|1|2)"]);
    assert_eq!(via_file.stdout, builtin.stdout);
    std::fs::write(&path, "{\"name\": \"broken\"").unwrap();
    assert_eq!(cli(&["spec", "--algebra", p]).code, 2);
}
