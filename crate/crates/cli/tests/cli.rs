use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monoid-witt"))
        .args(args)
        .env_remove("WITT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schema", name].iter().collect();
    let text = std::fs::read_to_string(&path).expect("schema file");
    jsonschema::validator_for(&serde_json::from_str(&text).expect("schema is JSON")).expect("valid schema")
}

fn json_line(out: &str) -> Value {
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1, "one JSON line expected, got {out:?}");
    serde_json::from_str(lines[0]).expect("JSON output")
}

fn assert_valid(schema_name: &str, value: &Value) {
    let v = schema(schema_name);
    let errors: Vec<String> = v.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?} for {value}");
}

#[test]
fn alpha_of_three_at_level_three() {
    assert_eq!(ok(&["alpha", "--p", "2", "--n", "3", "3*[1]"]), "(1, 1, 0)\n");
}

#[test]
fn delta_of_two() {
    assert_eq!(ok(&["delta", "--p", "2", "2*[1]"]), "-1*[1]\n");
}

#[test]
fn oracle_agrees_with_alpha() {
    for input in ["3*[1] - [0]", "5*[1]", "-7*[0] + 2*[1]"] {
        for n in ["1", "2", "3", "4", "5"] {
            let a = ok(&["alpha", "--p", "5", "--n", n, input]);
            let o = ok(&["oracle", "--p", "5", "--n", n, input]);
            assert_eq!(a, o, "{input} at n = {n}");
        }
    }
}

#[test]
fn beta_inverts_alpha() {
    let w = ok(&["alpha", "--p", "5", "--e", "2", "--n", "3", "2*[[1,1]] - 3"]);
    let x = ok(&["beta", "--p", "5", "--e", "2", w.trim()]);
    let again = ok(&["alpha", "--p", "5", "--e", "2", "--n", "3", x.trim()]);
    assert_eq!(w, again);
}

#[test]
fn unsupported_level_exits_two_and_names_the_hypothesis() {
    let out = run(&["alpha", "--p", "3", "--n", "5", "[1] + [2]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("p >= n"), "{}", stderr(&out));
}

#[test]
fn oracle_covers_levels_beyond_the_formulas() {
    assert_eq!(ok(&["oracle", "--p", "3", "--n", "5", "3*[1]"]), ok(&["oracle", "--p", "3", "--n", "5", "3"]));
}

#[test]
fn parse_errors_exit_one_with_offset() {
    let out = run(&["delta", "--p", "2", "2*["]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("byte 3"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["alpha", "--p", "2"][..],
        &["frobnicate"],
        &["alpha", "--p", "4", "--n", "2", "[1]"],
        &["alpha", "--p", "2", "--n", "0", "[1]"],
        &["alpha", "--p", "2", "--e", "3", "--mod", "[1,1,1]", "--n", "2", "[1]"],
        &["check", "--mutate", "nonsense"],
        &["check", "--e", "2"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn algebra_flags() {
    let explicit = ok(&["alpha", "--p", "5", "--mod", "[2,1,1]", "--n", "2", "[[0,1]]"]);
    let bare = ok(&["alpha", "--p", "5", "--e", "2", "--mod", "2,1,1", "--n", "2", "[[0,1]]"]);
    assert_eq!(explicit, bare);
    let product = ["--p", "2", "--product", "e=1", "--product", "e=2", "--n", "2", "3*[(1; [0,1])]"];
    let a = ok(&[&["alpha"][..], &product].concat());
    let o = ok(&[&["oracle"][..], &product].concat());
    assert_eq!(a, o);
    assert!(a.starts_with("((1; [0,1]), "), "{a}");
}

#[test]
fn wittpoly_level_two() {
    let out = ok(&["wittpoly", "--p", "2", "--n", "2"]);
    assert!(out.lines().any(|l| l == "S 1: 1 x1 ; 1 y1 ; -1 x0 y0"), "{out}");
}

#[test]
fn wittpoly_level_one() {
    let out = ok(&["wittpoly", "--p", "2", "--n", "1"]);
    assert_eq!(out, "witt-poly v1 p=2 n=1\nS 0: 1 x0 ; 1 y0\nP 0: 1 x0 y0\n");
}

#[test]
fn wittpoly_outside_bounds_exits_two() {
    assert_eq!(run(&["wittpoly", "--p", "13", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn wittpoly_uses_the_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let first = ok(&["wittpoly", "--p", "3", "--n", "3", "--cache-dir", path]);
    assert!(dir.path().join("witt-poly-v1-p3-n3.txt").exists());
    let out = Command::new(env!("CARGO_BIN_EXE_monoid-witt"))
        .args(["wittpoly", "--p", "3", "--n", "3"])
        .env("WITT_CACHE_DIR", path)
        .output()
        .unwrap();
    assert_eq!(stdout(&out), first);
}

#[test]
fn check_passes_by_default() {
    let out = ok(&["check", "--samples", "20"]);
    assert!(out.starts_with("seed 0,"), "{out}");
    assert!(out.contains("0 failed"), "{out}");
}

#[test]
fn check_reports_requested_samples() {
    let v = json_line(&ok(&["check", "--seed", "42", "--samples", "10", "--json"]));
    assert_valid("check-report.schema.json", &v);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["passed"], true);
    for p in v["properties"].as_array().unwrap() {
        if p["exhaustive"] == 0 {
            assert_eq!(p["samples"], 10, "{p}");
        }
    }
}

#[test]
fn sign_flip_mutation_is_detected() {
    let out = run(&["check", "--mutate", "sign-flip-alpha3", "--samples", "10", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json_line(&stdout(&out));
    assert_valid("check-report.schema.json", &v);
    let sign = v["properties"].as_array().unwrap().iter().find(|p| p["name"] == "core.sign_necessity").unwrap();
    assert_eq!(sign["passed"], false);
    assert!(sign["counterexample"].as_str().unwrap().contains("over F_2"));
}

#[test]
fn check_can_target_one_algebra() {
    let out = ok(&["check", "--p", "3", "--e", "2", "--samples", "5", "--only", "core."]);
    assert!(out.contains("0 failed"), "{out}");
}

#[test]
fn json_outputs_match_the_schemas() {
    let v = json_line(&ok(&["alpha", "--p", "2", "--n", "3", "--json", "3*[1]"]));
    assert_valid("witt-vector.schema.json", &v);
    assert_eq!(v["components"], serde_json::json!(["1", "1", "0"]));
    let v = json_line(&ok(&["oracle", "--p", "3", "--e", "2", "--n", "4", "--json", "[[1,2]] - 9"]));
    assert_valid("witt-vector.schema.json", &v);
    let v = json_line(&ok(&["delta", "--p", "2", "--json", "2*[1]"]));
    assert_valid("element.schema.json", &v);
    assert_eq!(v["text"], "-1*[1]");
    let v = json_line(&ok(&["beta", "--p", "2", "--json", "(1, 0, 1)"]));
    assert_valid("element.schema.json", &v);
    let v = json_line(&ok(&["wittpoly", "--p", "2", "--n", "2", "--json"]));
    assert_valid("wittpoly.schema.json", &v);
    assert_eq!(v["sums"][1], "1 x1 ; 1 y1 ; -1 x0 y0");
}

#[test]
fn schemas_reject_malformed_documents() {
    let v = schema("witt-vector.schema.json");
    assert!(!v.is_valid(&serde_json::json!({"p": 2, "n": 0, "algebra": "p=2", "components": []})));
    let v = schema("element.schema.json");
    let bad = serde_json::json!({"p": 2, "algebra": "p=2,e=1", "text": "[1]", "terms": [{"coefficient": "01", "symbol": "1"}]});
    assert!(!v.is_valid(&bad));
}
