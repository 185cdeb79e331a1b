use std::process::Command;

use biquotient_cli::{run, OutputDocument, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn json(args: &[&str]) -> (i32, OutputDocument) {
    let mut argv = vec!["biquotient"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let out = run(argv);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.status, serde_json::from_str(&out.stdout).expect("valid JSON"))
}

fn table(args: &[&str]) -> biquotient_cli::Outcome {
    let mut argv = vec!["biquotient"];
    argv.extend_from_slice(args);
    run(argv)
}

#[test]
fn classify_so7_finds_ten() {
    let (status, doc) = json(&["classify", "--group", "so7", "--source", "su2xsu2"]);
    assert_eq!(status, EXIT_OK);
    assert_eq!(doc.command, "classify");
    assert!(doc.exact_arithmetic);
    assert_eq!(doc.results["counts"]["free_inhomogeneous"], 10);
    assert_eq!(doc.results["known_rows"].as_array().unwrap().len(), 10);
    assert_eq!(doc.results["pairs"].as_array().unwrap().len(), 10);
}

#[test]
fn audit_lists_every_pair_with_witnesses() {
    let (_, doc) = json(&["classify", "--group", "spin7", "--source", "su2", "--audit"]);
    let pairs = doc.results["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 21);
    for p in pairs {
        match p["verdict"].as_str().unwrap() {
            "free" => assert!(p.get("witness").is_none()),
            "not_free" => {
                assert_eq!(p["witness_verified"], true);
                assert!(p["witness"]["point"].is_array());
            }
            other => panic!("unexpected verdict {other}"),
        }
    }
}

#[test]
fn check_free_witness() {
    let (status, doc) = json(&["check-free", "--group", "spin7", "--left", "C", "--right", "D"]);
    assert_eq!(status, EXIT_OK);
    let r = &doc.results;
    assert_eq!(r["verdict"], "not_free");
    assert_eq!(r["witness"]["order"], "3");
    assert_eq!(r["witness"]["point"], serde_json::json!(["1/3"]));
    assert_eq!(r["witness"]["weyl"], "(-x2, -x1, -x4, -x3)");
    assert_eq!(doc.inputs["left"], "C");
}

#[test]
fn check_free_two_parameters() {
    let (_, doc) = json(&[
        "check-free", "--group", "su4", "--left", "phi10+phi01", "--right", "phi11",
    ]);
    assert_eq!(doc.results["witness"]["order"], "5");
    assert_eq!(doc.results["prune"]["restrictions"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_commands_pass() {
    for cmd in ["verify-spin7", "verify-weyl"] {
        let (status, doc) = json(&[cmd]);
        assert_eq!(status, EXIT_OK, "{cmd}");
        assert_eq!(doc.results["passed"], true);
    }
}

#[test]
fn enumerate_orthogonal_seven() {
    let (_, doc) = json(&["enumerate-reps", "--source", "su2", "--dim", "7"]);
    let labels: Vec<&str> = doc.results["representations"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|r| r.get("label").and_then(Value::as_str))
        .collect();
    assert_eq!(labels, ["A", "B", "C", "D", "E", "F"]);
    let (_, doc) = json(&["enumerate-reps", "--source", "su2xsu2", "--dim", "7", "--finite-kernel"]);
    assert_eq!(doc.results["count"], 4);
}

#[test]
fn document_round_trips() {
    let out = table(&["check-free", "--group", "so7", "--left", "D", "--right", "E", "--format", "json"]);
    let doc: OutputDocument = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc.to_json(), out.stdout);
    let again: OutputDocument = serde_json::from_str(&doc.to_json()).unwrap();
    assert_eq!(again, doc);
}

#[test]
fn json_is_deterministic() {
    let args = ["classify", "--group", "su4", "--audit", "--format", "json"];
    assert_eq!(table(&args).stdout, table(&args).stdout);
}

#[test]
fn rationals_are_strings() {
    fn check(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_u64(), "non-integer number {n}"),
            Value::Array(a) => a.iter().for_each(check),
            Value::Object(o) => o.values().for_each(check),
            _ => {}
        }
    }
    let (_, doc) = json(&["classify", "--group", "spin7", "--audit"]);
    check(&doc.results);
}

#[test]
fn malformed_descriptor_is_usage_error() {
    let out = table(&["check-free", "--group", "so7", "--left", "2phi0+psi1", "--right", "D"]);
    assert_eq!(out.status, EXIT_USAGE);
    assert!(out.stderr.contains("position 6"), "{}", out.stderr);
}

#[test]
fn unknown_group_is_usage_error() {
    let out = table(&["classify", "--group", "g2"]);
    assert_eq!(out.status, EXIT_USAGE);
    assert!(out.stderr.contains("unknown group"));
}

#[test]
fn parameter_mismatch_is_usage_error() {
    let out = table(&["check-free", "--group", "spin7", "--left", "A", "--right", "phi11+phi02"]);
    assert_eq!(out.status, EXIT_USAGE);
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("weyl.json");
    let out = table(&["verify-weyl", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.is_empty());
    let doc: OutputDocument = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.command, "verify-weyl");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_biquotient");
    let ok = Command::new(bin).args(["check-free", "--group", "spin7", "--left", "D", "--right", "E"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("effectively free"));
    let bad = Command::new(bin).args(["check-free", "--group", "spin9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
