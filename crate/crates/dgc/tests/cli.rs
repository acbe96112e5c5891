use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn dgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgc")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = dgc(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn count_conic() {
    let v = json(&["count", "--poly", "x0*x2 - x1^2", "--vars", "x0,x1,x2", "--bound", "2"]);
    assert_eq!(v["count"], 4);
    let v = json(&["count", "--poly", "y - x^2", "--vars", "x,y", "--bound", "4", "--affine"]);
    assert_eq!(v["count"], 5);
}

#[test]
fn auxpoly_certificate() {
    let v = json(&["auxpoly", "--poly", "x0*x2 - x1^2", "--vars", "x0,x1,x2", "--bound", "2"]);
    assert_eq!(v["points"], 4);
    assert_eq!(v["bezout_ok"], true);
    assert!(v["degree"].as_u64().unwrap() * 2 >= 4);
}

#[test]
fn badness_with_scan() {
    let v = json(&["badness", "--poly", "x^2 - y^2 - 17389", "--vars", "x,y", "--scan-limit", "20000"]);
    assert_eq!(v["bad_primes"], serde_json::json!([17389]));
    assert_eq!(v["scan_agrees"], true);
}

#[test]
fn witness_passes() {
    let out = dgc(&["witness", "--degree", "5", "--verify", "both"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn project_twisted_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cubic.curve");
    fs::write(&path, "# twisted cubic\nx1^2 - x0*x2\nx2^3 - 2*x1*x2*x3 + x0*x3^2\n").unwrap();
    let v = json(&["project", "--curve", path.to_str().unwrap(), "--bound", "2"]);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["multiplicity"], 2);
    assert_eq!(v["relation"]["holds"], true);
}

#[test]
fn padic_random_instances() {
    let v = json(&["padic-check", "--count", "5", "--seed", "3"]);
    let insts = v["instances"].as_array().unwrap();
    assert_eq!(insts.len(), 5);
    assert!(insts.iter().all(|i| i["pass"] == true));
}

#[test]
fn experiment_regression_mismatch_fails() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("small.conf");
    fs::write(&conf, "experiment = curve-bound\nseed = 1\ncount = 2\ndegrees = 2..3\ncoeff_bound = 3\nbounds = 1,2\n")
        .unwrap();
    let reg = dir.path().join("reg.txt");
    fs::write(&reg, "curve-bound.instances = 5.0\n").unwrap();
    let out = dgc(&["experiment", "--config", conf.to_str().unwrap(), "--regression", reg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = dgc(&[
        "experiment",
        "--config",
        conf.to_str().unwrap(),
        "--regression",
        reg.to_str().unwrap(),
        "--update-regression",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = dgc(&["experiment", "--config", conf.to_str().unwrap(), "--regression", reg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(dgc(&["count", "--poly", "x0 +* x1", "--bound", "1"]).status.code(), Some(2));
    assert_eq!(dgc(&["project", "--curve", "/nonexistent/file", "--bound", "1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    fs::write(&conf, "experiment = nonsense\n").unwrap();
    assert_eq!(dgc(&["experiment", "--config", conf.to_str().unwrap()]).status.code(), Some(2));
}
