//! End-to-end tests of the binary: exit codes, JSON payloads, determinism.

use std::process::{Command, Output};

fn vhlf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vhlf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_q3_passes() {
    let out = vhlf(&["verify", "--q", "3", "--tau", "2"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    let records = doc.as_array().unwrap();
    assert!(records.len() >= 11);
    assert!(records.iter().all(|r| r["ok"].as_bool().unwrap()));
}

#[test]
fn verify_rejects_bad_parameters() {
    let out = vhlf(&["verify", "--q", "3", "--tau", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = vhlf(&["verify", "--q", "4", "--tau", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = vhlf(&["verify", "--q", "6", "--tau", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_accepts_valid_overrides() {
    let out = vhlf(&["verify", "--q", "3", "--tau", "2", "--c", "2", "--delta", "4", "--zeta", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // a square c is rejected
    let out = vhlf(&["verify", "--q", "3", "--tau", "2", "--c", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // a non-generator delta is rejected
    let out = vhlf(&["verify", "--q", "3", "--tau", "2", "--delta", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_writes_the_complex() {
    let dir = std::env::temp_dir().join("vhlf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    let out = vhlf(&[
        "construct",
        "--q",
        "3",
        "--tau",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["vertices"], 1);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 8);
    assert_eq!(doc["squares"].as_array().unwrap().len(), 4);
    // the library parses its own export
    let cx = vhlf_core::square_complex::import_json(&text).unwrap();
    assert_eq!(cx.n_squares(), 4);
}

#[test]
fn mass_both_prints_the_count_twice() {
    let out = vhlf(&["mass", "--m", "1", "--n", "1", "--method", "both"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["formula"], "3");
    assert_eq!(doc["enumerate"], "3");
    assert_eq!(doc["weighted"], "3/4");
    assert_eq!(doc["agree"], true);
}

#[test]
fn mass_bound_exceeded_is_usage_error() {
    let out = vhlf(&["mass", "--m", "4", "--n", "4", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_flip_certificate() {
    let out = vhlf(&["classify", "--q", "5", "--tau1", "2", "--tau2", "4"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["commensurable"], true);
    assert_eq!(doc["certificate"]["flip"], true);
    assert_eq!(doc["isomorphism_verified"], true);
    let out = vhlf(&["classify", "--q", "5", "--tau1", "2", "--tau2", "3"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["commensurable"], false);
}

#[test]
fn balls_table_matches_expected() {
    let out = vhlf(&["balls", "--q", "3", "--tau", "2", "--k", "2", "--l", "1"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    for row in doc["spheres"].as_array().unwrap() {
        assert_eq!(row["count"], row["expected"], "row {row}");
    }
}

#[test]
fn invariants_fake_quadric() {
    let out = vhlf(&["invariants", "--q", "3", "--tau", "2"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["chi"], 1);
    assert_eq!(doc["c1_sq"], 8);
    assert_eq!(doc["c2"], 4);
    assert_eq!(doc["fake_quadric"], true);
    let out5 = vhlf(&["invariants", "--q", "5", "--tau", "2"]);
    let doc5 = stdout_json(&out5);
    assert_eq!(doc5["chi"], 4);
    assert_eq!(doc5["fake_quadric"], false);
}

#[test]
fn local_groups_prediction() {
    let out = vhlf(&["local-groups", "--q", "5", "--tau", "4"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["p_a"]["order"], 120);
    assert_eq!(doc["p_b"]["order"], 60);
    assert_eq!(doc["p_a"]["matches"], true);
    assert_eq!(doc["p_b"]["matches"], true);
}

#[test]
fn presentation_formats() {
    let out = vhlf(&["presentation", "--q", "3", "--tau", "2", "--group", "gamma", "--format", "json"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["generators"].as_array().unwrap().len(), 8);
    let out = vhlf(&["presentation", "--q", "3", "--tau", "2", "--group", "lambda-prime", "--format", "gap"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("F := FreeGroup("));
    assert!(text.contains("G := F / rels;;"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["verify", "--q", "3", "--tau", "2"],
        vec!["construct", "--q", "5", "--tau", "3"],
        vec!["presentation", "--q", "3", "--tau", "2", "--format", "plain"],
        vec!["balls", "--q", "3", "--tau", "2", "--k", "1", "--l", "1"],
    ] {
        let a = vhlf(&args);
        let b = vhlf(&args);
        assert_eq!(a.stdout, b.stdout, "stdout differs for {args:?}");
    }
}

#[test]
fn env_bound_raises_the_ball_limit() {
    // k + l = 8 exceeds the default bound for q = 3 but not VHLF_BOUND=8
    let out = vhlf(&["balls", "--q", "3", "--tau", "2", "--k", "5", "--l", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_vhlf"))
        .args(["balls", "--q", "3", "--tau", "2", "--k", "5", "--l", "3"])
        .env("VHLF_BOUND", "8")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let doc = stdout_json(&out);
    let rows = doc["spheres"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["count"] == r["expected"]));
}

#[test]
fn p_r_flags_select_the_extension_field() {
    let out = vhlf(&["invariants", "--p", "3", "--r", "2", "--tau", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["q"], 9);
    assert_eq!(doc["chi"], 16);
}
