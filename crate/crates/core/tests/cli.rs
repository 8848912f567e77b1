mod common;

use std::process::Command;

use common::fixture_path;
use conetype::cli::{dispatch, Outcome};
use serde_json::Value;

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn run(args: &[&str]) -> Outcome {
    dispatch(std::iter::once("conetype").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error_code(out: &Outcome) -> String {
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn act_reproduces_the_worked_example() {
    let ex7 = fx("ex7.json");
    let sigma = fx("sigma.json");
    let out = run(&["act", "--automaton", &ex7, "--portrait", &sigma, "--word", "baacdc"]);
    assert_eq!(json(&out)["word"], "aaaccd");
    let out = run(&["act", "--automaton", &ex7, "--portrait", &sigma, "--word", "baacdc", "--trace"]);
    let v = json(&out);
    assert_eq!(v["trace"]["pushed"], "a2 b2 b1 b2 b2 b2");
    assert_eq!(v["trace"]["image"], "a1 b1 b1 b2 b1 b2");
    let out = run(&["act", "--automaton", &ex7, "--portrait", &sigma, "--word", "baacdc", "--plain"]);
    assert_eq!(out.stdout, "aaaccd\n");
}

#[test]
fn minimize_keeps_the_rose() {
    let v = json(&run(&["minimize", "--automaton", &fx("rose2.json")]));
    assert_eq!(v["quotient"]["states"].as_array().unwrap().len(), 1);
    assert_eq!(v["quotient"]["edges"].as_array().unwrap().len(), 2);
    assert_eq!(v["partition"], serde_json::json!([["eps"]]));
}

#[test]
fn orders_are_decimal_strings() {
    let v = json(&run(&["order", "--automaton", &fx("ex7min.json"), "--level", "1"]));
    assert_eq!(v["order"], "384");
    assert_eq!(v["minimized"], false);
    let v = json(&run(&["order", "--automaton", &fx("ex7.json"), "--level", "0"]));
    assert_eq!(v["order"], "24");
    assert_eq!(v["minimized"], true);
    let out = run(&["order", "--automaton", &fx("rose2.json"), "--level", "2", "--plain"]);
    assert_eq!(out.stdout, "128\n");
}

#[test]
fn strict_mode_refuses_non_minimal_input() {
    let out = run(&["order", "--automaton", &fx("ex7.json"), "--level", "0", "--strict"]);
    assert_eq!(error_code(&out), "NotMinimal");
    let out = run(&["is-finite", "--automaton", &fx("ex7min.json"), "--strict"]);
    assert_eq!(json(&out)["finite"], false);
}

#[test]
fn other_commands() {
    let ex7 = fx("ex7.json");
    assert_eq!(json(&run(&["validate", "--automaton", &ex7]))["valid"], true);
    assert_eq!(json(&run(&["is-minimal", "--automaton", &ex7]))["minimal"], false);
    let v = json(&run(&["classical-minimize", "--automaton", &ex7]));
    assert_eq!(v["states"], serde_json::json!(["W", "X", "Y+Z", "eps"]));
    let v = json(&run(&["generators", "--automaton", &fx("ex7min.json"), "--max-len", "1"]));
    assert_eq!(v["count"], 28);
    let v = json(&run(&["levels", "--automaton", &fx("rose2.json"), "--depth", "2"]));
    assert_eq!(v["levels"][2]["truncated_order"], "128");
    assert_eq!(v["levels"][2]["vertices"], "4");
    let v = json(&run(&["push", "--automaton", &ex7, "--word", "aaaccd"]));
    assert_eq!(v["word"], "a1 b1 b1 b2 b1 b2");
    let v = json(&run(&["lift", "--automaton", &ex7, "--word", "a2 b2 b1 b2 b2 b2"]));
    assert_eq!(v["word"], "baacdc");
    let v = json(&run(&["cone-eq", "--automaton", &ex7, "--states", "W,Z"]));
    assert_eq!(v["equivalent"], true);
    let v = json(&run(&["cone-eq", "--automaton", &ex7, "--states", "eps,Z", "--depth", "1"]));
    assert_eq!(v["equivalent"], false);
}

#[test]
fn verify_portrait_reports_offending_vertex() {
    let dir = std::env::temp_dir().join(format!("conetype-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"kind":"finite","entries":[{"vertex":"a","map":{"a":"b","c":"c"}}]}"#).unwrap();
    let v = json(&run(&["verify-portrait", "--automaton", &fx("ex7.json"), "--portrait", bad.to_str().unwrap()]));
    assert_eq!(v["valid"], false);
    assert_eq!(v["offending"], "a");
    let v = json(&run(&["verify-portrait", "--automaton", &fx("ex7min.json"), "--portrait", &fx("sigma.json")]));
    assert_eq!(v["valid"], true);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn error_codes() {
    assert_eq!(run(&["nonsense"]).code, 2);
    assert_eq!(run(&["order", "--automaton", &fx("ex7.json")]).code, 2);
    assert_eq!(run(&["order", "--automaton", &fx("ex7.json"), "--level", "x"]).code, 2);
    let out = run(&["push", "--automaton", &fx("ex7.json"), "--word", "ab"]);
    assert_eq!(error_code(&out), "WordNotAccepted");
    let out = run(&["validate", "--automaton", "/does/not/exist.json"]);
    assert_eq!(error_code(&out), "Io");
    let out = run(&["cone-eq", "--automaton", &fx("ex7.json"), "--states", "W"]);
    assert_eq!(error_code(&out), "Format");
}

#[test]
fn output_is_deterministic() {
    let ex7 = fx("ex7.json");
    let sigma = fx("sigma.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["minimize", "--automaton", &ex7],
        vec!["generators", "--automaton", &ex7, "--max-len", "2"],
        vec!["act", "--automaton", &ex7, "--portrait", &sigma, "--word", "baacdc", "--trace"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a, b);
    }
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_conetype");
    let out = Command::new(bin)
        .args(["order", "--automaton", &fx("ex7min.json"), "--level", "1", "--plain"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "384\n");
    let out = Command::new(bin).args(["order", "--automaton", &fx("ex7.json"), "--level", "0", "--strict"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
