use std::process::Command;

use macdonald_hc::cli::run_args;
use macdonald_hc::serial::{Document, SCHEMA};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Vec<String>) {
    let mut out = Vec::new();
    let mut full = vec!["macdonald-hc"];
    full.extend_from_slice(args);
    let code = run_args(full, &mut out);
    let text = String::from_utf8(out).unwrap();
    (code, text.lines().map(String::from).collect())
}

fn last(lines: &[String]) -> Value {
    serde_json::from_str(lines.last().expect("at least one document")).unwrap()
}

/// Every line is a versioned document that re-parses into an equal value.
fn assert_roundtrip(lines: &[String]) {
    for l in lines {
        let doc: Document = serde_json::from_str(l).unwrap();
        assert_eq!(serde_json::to_string(&doc).unwrap(), *l);
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["schema"], SCHEMA);
    }
}

#[test]
fn mdpoly_weight_zero_is_one() {
    let (code, lines) = run(&["mdpoly", "--weight", "0"]);
    assert_eq!(code, 0);
    assert_roundtrip(&lines);
    assert_eq!(last(&lines)["coeffs"], serde_json::json!([{"exp": [0], "num": "1", "den": "1"}]));
}

#[test]
fn verify_hecke_a2_passes() {
    let (code, lines) = run(&["verify", "hecke", "--rank", "2"]);
    assert_eq!(code, 0);
    assert_roundtrip(&lines);
    let v = last(&lines);
    let checks = v["checks"].as_array().unwrap();
    for kind in ["braid", "quadratic", "omega"] {
        assert!(checks.iter().any(|c| c["name"].as_str().unwrap().starts_with(kind)));
    }
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_baker_a1_support() {
    let (code, lines) = run(&["verify", "baker", "--k", "-1"]);
    assert_eq!(code, 0);
    assert_roundtrip(&lines);
    let v = last(&lines);
    assert_eq!(v["reports"]["support_set"], serde_json::json!([[0], [1]]));
    assert_eq!(v["reports"]["support_violations"], serde_json::json!([]));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["datum", "--case", "c", "--type", "C", "--rank", "2"], 0),
        (&["mdop", "--type", "B", "--rank", "2", "--pi", "quasi"], 0),
        (&["mdop", "--route", "hecke", "--rank", "2", "--pi", "2"], 0),
        (&["hcseries", "--height", "3"], 0),
        (&["hcseries", "--height", "4", "--k", "1/3", "--specialize", "2"], 0),
        (&["verify", "rankone", "--case", "b", "--rank", "2"], 0),
        (&["verify", "gamma", "--case", "c", "--type", "C"], 0),
        (&["verify", "triangular", "--height", "4"], 0),
        (&["verify", "hcseries", "--height", "3"], 0),
        (&["verify", "commute", "--rank", "2"], 0),
        (&["mdpoly", "--weight", "1,2"], 2),
        (&["mdpoly", "--weight", "-1"], 2),
        (&["mdpoly", "--weight", "x"], 2),
        (&["datum", "--type", "E", "--rank", "6"], 2),
        (&["datum", "--case", "z"], 2),
        (&["mdop", "--pi", "7"], 2),
        (&["verify", "baker"], 2),
        (&["verify", "baker", "--k", "1/2"], 2),
        (&["verify", "commute", "--case", "c", "--type", "C", "--rank", "2"], 2),
        (&["hcseries"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, want) in cases {
        let (code, lines) = run(args);
        assert_eq!(code, *want, "{args:?}");
        assert_roundtrip(&lines);
        if *want == 2 {
            let v = last(&lines);
            assert_eq!(v["command"], "error", "{args:?}");
            assert!(!v["code"].as_str().unwrap().is_empty());
        }
    }
}

#[test]
fn error_codes_are_machine_readable() {
    let (_, lines) = run(&["mdop", "--pi", "7"]);
    assert_eq!(last(&lines)["code"], "not_special_coweight");
    let (_, lines) = run(&["verify", "baker"]);
    assert_eq!(last(&lines)["code"], "precondition_violated");
    let (_, lines) = run(&["--rank"]);
    assert_eq!(last(&lines)["code"], "usage");
}

#[test]
fn output_is_deterministic() {
    for args in [&["mdop", "--rank", "2"][..], &["hcseries", "--height", "3", "--threads", "3"], &["verify", "rankone", "--type", "B", "--rank", "2"]] {
        assert_eq!(run(args), run(args));
    }
    let (_, one) = run(&["hcseries", "--height", "3", "--rank", "2"]);
    let (_, many) = run(&["hcseries", "--height", "3", "--rank", "2", "--threads", "4"]);
    assert_eq!(one, many);
}

#[test]
fn streaming_matches_layers() {
    let (code, full) = run(&["hcseries", "--height", "3", "--rank", "2"]);
    assert_eq!(code, 0);
    let (code, stream) = run(&["hcseries", "--height", "3", "--rank", "2", "--stream"]);
    assert_eq!(code, 0);
    assert_roundtrip(&stream);
    let layers = last(&full)["layers"].as_array().unwrap().clone();
    assert_eq!(stream.len(), layers.len());
    for (line, layer) in stream.iter().zip(&layers) {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["command"], "layer");
        assert_eq!(v["height"], layer["height"]);
        assert_eq!(v["coeffs"], layer["coeffs"]);
    }
}

#[test]
fn output_file_and_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("datum.json");
    let bin = env!("CARGO_BIN_EXE_macdonald-hc");
    let st = Command::new(bin).args(["datum", "--rank", "2", "--output"]).arg(&path).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(st.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_roundtrip(&text.lines().map(String::from).collect::<Vec<_>>());

    let st = Command::new(bin).args(["mdpoly", "--weight", "5,5"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(!st.stderr.is_empty());
    let doc: Value = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!(doc["command"], "error");
}
