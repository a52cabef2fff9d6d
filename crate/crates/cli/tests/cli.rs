//! End-to-end tests of the binary: byte-exact output, exit codes, and
//! JSON determinism (regenerating from a report's embedded parameters
//! must reproduce it byte for byte).

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rwhitney"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn table_classical_second_kind_is_byte_exact() {
    let (code, stdout, _) = run(&[
        "table", "--kind", "w2", "--m", "1", "--r", "0", "--alpha", "arange", "--nmax", "4",
        "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1\n0,1\n0,1,1\n0,1,3,1\n0,1,7,6,1\n");
}

#[test]
fn table_pascal_reduction_is_byte_exact() {
    let (code, stdout, _) = run(&[
        "table", "--kind", "w2", "--m", "1", "--r", "1", "--alpha", "zero", "--nmax", "3",
        "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().last().unwrap(), "1,3,3,1");
}

#[test]
fn table_row_zero_only() {
    let (code, stdout, _) = run(&[
        "table", "--kind", "w1", "--m", "1", "--r", "0", "--alpha", "arange", "--nmax", "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1\n");
}

#[test]
fn table_rational_parameters() {
    let (code, stdout, _) = run(&[
        "table", "--kind", "w1", "--m", "2/3", "--r", "-1/2", "--alpha", "list:1/4,2", "--nmax",
        "2",
    ]);
    assert_eq!(code, 0);
    // w(1,0) = -(r + m a_0) = 1/2 - 1/6 = 1/3
    assert_eq!(stdout.lines().nth(1).unwrap(), "1/3,1");
}

#[test]
fn table_json_round_trips_from_embedded_parameters() {
    let first = run(&[
        "table", "--kind", "q1", "--q", "1/2", "--alpha", "arange", "--nmax", "4", "--format",
        "json",
    ]);
    assert_eq!(first.0, 0);
    let report = json(&first.1);
    // The report names the underlying kind and the full parameter spec;
    // feeding those back must reproduce the bytes.
    let kind = report["kind"].as_str().unwrap();
    let alpha = report["alpha_spec"].as_str().unwrap();
    let m = report["m"].as_str().unwrap();
    let r = report["r"].as_str().unwrap();
    let nmax = report["nmax"].as_u64().unwrap().to_string();
    assert_eq!(kind, "comtet_s1");
    assert_eq!(alpha, "qbracket:1/2:arange");
    let second = run(&[
        "table", "--kind", kind, "--m", m, "--r", r, "--alpha", alpha, "--nmax", &nmax,
        "--format", "json",
    ]);
    assert_eq!(second.0, 0);
    assert_eq!(first.1, second.1);
}

#[test]
fn table_usage_errors_exit_2() {
    let (code, _, stderr) = run(&["table", "--kind", "w3"]);
    assert_eq!(code, 2, "unknown kind");
    assert!(stderr.contains("unknown"), "stderr was: {stderr}");

    let (code, _, _) = run(&["table", "--kind", "p1"]);
    assert_eq!(code, 2, "p1 without --p");

    let (code, _, stderr) = run(&["table", "--kind", "w1", "--alpha", "const:x"]);
    assert_eq!(code, 2, "bad alpha spec");
    assert!(stderr.contains("offset 6"), "stderr was: {stderr}");

    let (code, _, _) = run(&["table", "--kind", "w1", "--m", "1/0"]);
    assert_eq!(code, 2, "bad rational");
}

#[test]
fn table_domain_errors_exit_3() {
    // [a]_q at q = 0 requires a >= 0.
    let (code, _, stderr) = run(&[
        "table", "--kind", "q1", "--q", "0", "--alpha", "list:-1,2,3", "--nmax", "2",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.starts_with("error:"), "stderr was: {stderr}");
}

#[test]
fn verify_single_relation_round_trips() {
    let first = run(&[
        "verify", "--relation", "Eq13", "--nmax", "5", "--trials", "4", "--seed", "11",
    ]);
    assert_eq!(first.0, 0);
    let report = json(&first.1);
    assert_eq!(report["verified"], serde_json::Value::Bool(true));
    let second = run(&[
        "verify",
        "--relation",
        report["relation"].as_str().unwrap(),
        "--nmax",
        &report["nmax"].as_u64().unwrap().to_string(),
        "--trials",
        &report["trials"].as_u64().unwrap().to_string(),
        "--seed",
        &report["seed"].as_u64().unwrap().to_string(),
    ]);
    assert_eq!(first.1, second.1);
}

#[test]
fn verify_all_reports_every_relation() {
    let (code, stdout, _) = run(&[
        "verify", "--relation", "all", "--nmax", "4", "--trials", "2", "--seed", "5",
    ]);
    assert_eq!(code, 0);
    let reports = json(&stdout);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 21);
    for report in reports {
        assert_eq!(report["verified"], serde_json::Value::Bool(true), "{report}");
    }
}

#[test]
fn verify_unknown_relation_exits_2() {
    let (code, _, stderr) = run(&["verify", "--relation", "NoSuchId"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown relation"), "stderr was: {stderr}");
}

#[test]
fn matrix_explicit_identity_passes() {
    let (code, stdout, _) = run(&[
        "matrix", "--identity", "eq25", "--m", "2", "--r", "1/3", "--alpha", "list:1,2,4",
        "--size", "4",
    ]);
    assert_eq!(code, 0);
    let report = json(&stdout);
    assert_eq!(report["verified"], serde_json::Value::Bool(true));
    assert_eq!(report["mode"], "explicit");
    assert_eq!(report["trials"].as_u64(), Some(1));
}

#[test]
fn matrix_fixture_campaign_passes() {
    let (code, stdout, _) = run(&["matrix", "--identity", "fixtures", "--seed", "9", "--trials", "100"]);
    assert_eq!(code, 0);
    let report = json(&stdout);
    assert_eq!(report["verified"], serde_json::Value::Bool(true));
    assert_eq!(report["size"].as_u64(), Some(4));
    assert_eq!(report["checks"].as_array().unwrap().len(), 100);
}

#[test]
fn matrix_sampled_round_trips() {
    let first = run(&[
        "matrix", "--identity", "eq24", "--size", "5", "--seed", "3", "--trials", "4",
    ]);
    assert_eq!(first.0, 0);
    let report = json(&first.1);
    assert_eq!(report["mode"], "sampled");
    let second = run(&[
        "matrix",
        "--identity",
        report["identity"].as_str().unwrap(),
        "--size",
        &report["size"].as_u64().unwrap().to_string(),
        "--seed",
        &report["seed"].as_u64().unwrap().to_string(),
        "--trials",
        &report["trials"].as_u64().unwrap().to_string(),
    ]);
    assert_eq!(first.1, second.1);
}

#[test]
fn matrix_zero_modulus_exits_3() {
    let (code, _, _) = run(&[
        "matrix", "--identity", "eq24", "--m", "0", "--alpha", "list:1,2,4", "--size", "4",
    ]);
    assert_eq!(code, 3);
    // The fixtures themselves are defined at m = 0.
    let (code, _, _) = run(&[
        "matrix", "--identity", "fixtures", "--m", "0", "--alpha", "list:1,2,4",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn matrix_usage_errors_exit_2() {
    let (code, _, _) = run(&["matrix", "--identity", "eq99"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["matrix", "--identity", "eq24", "--size", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn out_flag_mirrors_stdout() {
    let path = std::env::temp_dir().join(format!("rwhitney-out-{}.csv", std::process::id()));
    let path_text = path.to_str().unwrap();
    let (code, stdout, _) = run(&[
        "table", "--kind", "classical_w2", "--r", "2", "--nmax", "3", "--out", path_text,
    ]);
    assert_eq!(code, 0);
    let written = std::fs::read_to_string(&path).expect("file written");
    assert_eq!(stdout, written);
    std::fs::remove_file(&path).ok();
}

#[test]
fn help_exits_0() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("table"));
    assert!(stdout.contains("verify"));
    assert!(stdout.contains("matrix"));
}
