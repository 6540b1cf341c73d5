use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liekernel")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn betti_and_grading() {
    assert_eq!(json(&["betti", "(0,21,2.31)"])["betti"], serde_json::json!([1, 1, 0, 0]));
    assert_eq!(json(&["grading", "--find", "(0^2,12)"])["weights"], serde_json::json!([1, 1, 2]));
}

#[test]
fn parameters_bind() {
    let v = json(&["table", "T3", "p5.lambda", "--param", "l=1"]);
    assert_eq!(v["admissible"], true);
    let v = json(&["table", "T2", "r3.lambda", "--param", "l=0"]);
    assert_eq!(v["admissible"], false);
    let v = json(&["check", "(0,21,l.31)", "--param", "l=-1/3"]);
    assert_eq!(v["23_trivial"], true);
}

#[test]
fn extension_is_trivial() {
    let v = json(&["extend", "(0^2,12)"]);
    assert_eq!(v["23_trivial"], true);
    assert_eq!(v["weights"], serde_json::json!([1, 1, 2]));
}

#[test]
fn kernel_lists_wedges() {
    let v = json(&["kernel", "(0,0,12)"]);
    assert_eq!(v["dim"], 2);
    assert!(v["basis"][0].as_str().unwrap().contains('∧'));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["betti", "(0,21,99)"]).status.code(), Some(2));
    assert_eq!(run(&["grading", "(0^2,12)", "--validate", "1,1,1"]).status.code(), Some(1));
    assert_eq!(run(&["verify-paper", "--section", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["check", "(0,21,l.31)"]).status.code(), Some(2));
}

#[test]
fn verify_one_section() {
    let out = run(&["--json", "verify-paper", "--section", "hkt"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "hkt");
    let dk = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "hkt.d_omega_k").unwrap();
    assert_eq!(dk["status"], "info-diff");
}

#[test]
fn missing_g2_data_skips() {
    let out = run(&["--json", "verify-paper", "--section", "nk", "--g2-data", "/nonexistent/g2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let g2 = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "nk.g2").unwrap();
    assert_eq!(g2["status"], "skip");
}
