use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn amf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amf"))
        .args(args)
        .env_remove("AMT_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn ok(args: &[&str]) -> String {
    let out = amf(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let text = std::fs::read_to_string(path).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = amf(args);
    let value: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let schema = schema();
    if let Err(errors) = schema.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{args:?} violates the report schema: {msgs:?}");
    }
    value
}

#[test]
fn count_methods() {
    assert_eq!(ok(&["count", "--n", "4", "--method", "span"]), "168\n");
    assert_eq!(ok(&["count", "--n", "0", "--method", "oracle"]), "2\n");
    assert_eq!(ok(&["count", "--n", "3", "--method", "one-element"]), "20\n");
    let text = ok(&["count", "--n", "5", "--method", "split", "--n1", "2", "--cross-check"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("7581"));
    assert!(text.contains("PASS cross-check"), "{text}");
}

#[test]
fn list_interval() {
    assert_eq!(
        ok(&["list", "--lower", "{{}}", "--upper", "{{1,2}}"]),
        "{{}}\n{{1}}\n{{1},{2}}\n{{2}}\n{{1,2}}\ncount: 5\n"
    );
    assert_eq!(
        ok(&["list", "--lower", "{{1},{2}}", "--upper", "{{1,2}}", "--count-only"]),
        "2\n"
    );
    assert_eq!(
        ok(&["list", "--lower", "{{1,2}}", "--upper", "{{1}}"]),
        "count: 0\n"
    );
}

#[test]
fn list_concurrent_has_same_members() {
    let args = ["list", "--lower", "{{1},{2},{3},{4}}", "--upper", "{{1,2,3,4}}"];
    let seq = ok(&args);
    let mut par: Vec<String> = ok(&[&args[..], &["--jobs", "4"]].concat())
        .lines()
        .map(String::from)
        .collect();
    let mut seq: Vec<String> = seq.lines().map(String::from).collect();
    assert_eq!(seq.last().map(String::as_str), Some("count: 114"));
    seq.sort();
    par.sort();
    assert_eq!(seq, par);
}

#[test]
fn text_output_is_repeatable() {
    let runs = [
        vec!["list", "--lower", "{{}}", "--upper", "{{1,2,3}}"],
        vec!["count", "--n", "4", "--cross-check"],
        vec!["verify", "--check", "partition-orthogonal", "--n", "4", "--blocks", "1,2|3,4"],
    ];
    for args in &runs {
        let a = amf(args);
        let b = amf(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn verify_suites() {
    let text = ok(&["verify", "--check", "partition-orthogonal", "--n", "4", "--blocks", "1,2|3,4"]);
    assert!(text.starts_with("PASS partition-orthogonal"), "{text}");
    for check in ["rank", "distance", "recursions"] {
        let text = ok(&["verify", "--check", check, "--n", "3"]);
        assert!(text.starts_with(&format!("PASS {check}")), "{text}");
    }
    let text = ok(&["verify", "--check", "young", "--rows", "3", "--cols", "3"]);
    assert!(text.starts_with("PASS young"), "{text}");
    let text = ok(&["verify", "--check", "partition-general", "--n", "3", "--sigma", "{{1},{2,3}}"]);
    assert!(text.starts_with("PASS partition-general"), "{text}");
}

#[test]
fn json_reports_match_schema() {
    let r = report(&["count", "--n", "3", "--method", "split", "--n1", "1", "--cross-check", "--json"]);
    assert_eq!(r["result"]["count"], "20");
    assert_eq!(r["method"], "split");
    assert_eq!(r["verdicts"][0]["passed"], true);

    let r = report(&["list", "--lower", "{{}}", "--upper", "{{1,2}}", "--json"]);
    assert_eq!(r["result"]["count"], "5");
    assert_eq!(r["result"]["members"].as_array().unwrap().len(), 5);
    assert_eq!(r["result"]["members"][2], serde_json::json!([[1], [2]]));

    let r = report(&["verify", "--check", "rank", "--n", "3", "--json"]);
    assert_eq!(r["result"]["passed"], true);
    assert_eq!(r["command"]["name"], "verify");
}

#[test]
fn jobs_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_amf"))
        .args(["count", "--n", "3", "--json"])
        .env("AMT_JOBS", "3")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["jobs"], 3);

    let out = Command::new(env!("CARGO_BIN_EXE_amf"))
        .args(["count", "--n", "3"])
        .env("AMT_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &["count", "--n", "4", "--bogus"],
        &["count", "--n", "4", "--method", "split"],
        &["list", "--lower", "{{1}", "--upper", "{{1}}"],
        &["list", "--lower", "{{0}}", "--upper", "{{1,2}}"],
        &["verify", "--check", "nope", "--n", "3"],
        &["verify", "--check", "partition-orthogonal", "--n", "3", "--blocks", "1|1,2"],
    ];
    for args in cases {
        let out = amf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn failed_check_exits_one() {
    let out = amf(&["verify", "--check", "interval-decomposition", "--n", "3", "--sigma", "{{1,2},{1,3}}"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("FAIL interval-decomposition"), "{text}");
    assert!(text.contains("counterexample: "), "{text}");

    let r = report(&[
        "verify", "--check", "interval-decomposition", "--n", "3", "--sigma", "{{1,2},{1,3}}", "--json",
    ]);
    assert_eq!(r["result"]["passed"], false);
    assert!(r["verdicts"][0]["counterexample"].is_string());
}
