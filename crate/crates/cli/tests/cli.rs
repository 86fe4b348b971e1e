use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hdpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = hdpart(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_tmp(name: &str, body: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn values(v: &Value) -> Vec<&str> {
    v["values"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn boxed_count() {
    assert_eq!(stdout_json(&["count", "boxed", "--dims", "2,2,2"])["count"], "20");
    let csv = hdpart(&["count", "boxed", "--dims", "2,2,2", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "count\n20\n");
}

#[test]
fn macmahon_and_volume_diverge_at_six() {
    let m = stdout_json(&["count", "macmahon", "--d", "3", "--upto", "6"]);
    assert_eq!(values(&m), ["1", "1", "4", "10", "26", "59", "141"]);
    let p = stdout_json(&["count", "volume", "--d", "3", "--upto", "6"]);
    assert_eq!(values(&p), ["1", "1", "4", "10", "26", "59", "140"]);
    let c = stdout_json(&["count", "chvol", "--d", "3", "--upto", "6"]);
    assert_eq!(values(&c), values(&m));
}

#[test]
fn bijection_both_ways() {
    let a = write_tmp("fig_matrix.json", r#"{"entries": [[1, 0, 2], [0, 3, 0]]}"#);
    let pi = stdout_json(&["bij", "forward", "--input", &a]);
    assert_eq!(pi["entries"], serde_json::json!([[4, 3, 2], [3, 3, 0]]));
    let p = write_tmp("fig_partition.json", &pi.to_string());
    let back = stdout_json(&["bij", "inverse", "--input", &p]);
    assert_eq!(back["entries"], serde_json::json!([[1, 0, 2], [0, 3, 0]]));
}

#[test]
fn corner_statistics() {
    let p = write_tmp("fig_stats.json", r#"{"entries": [[4, 3, 2], [3, 3]]}"#);
    let s = stdout_json(&["stats", "--input", &p]);
    assert_eq!(s["stats"]["cor"], 6);
    assert_eq!(s["stats"]["cr"], 3);
    assert_eq!(s["stats"]["ch_volume"], 16);
}

#[test]
fn exact_shape_series_csv() {
    let rho = write_tmp("unit_rho.json", r#"{"entries": [1]}"#);
    let out = hdpart(&["series", "shaped", "--rho", &rho, "--trunc", "6", "--exact"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let expected: String = std::iter::once("t_deg,q_deg,coeff\n".to_string())
        .chain((1..=6).map(|k| format!("{k},{k},1\n")))
        .collect();
    assert_eq!(text, expected);
}

#[test]
fn grothendieck_pretty() {
    let rho = write_tmp("rho_a.json", r#"{"rank": 2, "entries": [[2, 1]]}"#);
    let out = hdpart(&["groth", "poly", "--rho", &rho, "--box", "3,2,2,2", "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(x1^2 + x1*x2 + x1*x3 + x2^2 + x2*x3 + x3^2)*y1^2*z1*z2"), "{text}");
    let json = stdout_json(&["groth", "poly", "--rho", &rho, "--box", "3,2,2,2"]);
    assert_eq!(json["alphabets"], serde_json::json!([3, 2, 2]));
}

#[test]
fn exit_codes() {
    assert_eq!(hdpart(&["count", "boxed", "--dims", "2,x"]).status.code(), Some(2));
    assert_eq!(hdpart(&["bij", "forward", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(hdpart(&["lpp", "cdf", "--dims", "1", "--n", "1", "--q", "3/2"]).status.code(), Some(2));
    assert_eq!(hdpart(&["groth", "boxed", "--box", "5,5,5"]).status.code(), Some(3));
    let limited = hdpart(&["count", "boxed", "--dims", "3,3,3,3", "--limit", "1000"]);
    assert_eq!(limited.status.code(), Some(3));
}

#[test]
fn exact_cdf_is_a_fraction() {
    let c = stdout_json(&["lpp", "cdf", "--dims", "1,1", "--n", "2", "--q", "1/2"]);
    assert_eq!(c["cdf"], "7/8");
}

#[test]
fn simulation_output_is_reproducible() {
    let args = ["lpp", "simulate", "--dims", "2,2", "--q", "1/4", "--samples", "3000", "--seed", "9"];
    let one = hdpart(&[&args[..], &["--threads", "1"]].concat());
    let many = hdpart(&[&args[..], &["--threads", "3"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn verify_suite_passes() {
    let r = stdout_json(&["verify", "--suite", "equidist", "--n1", "2", "--n2", "3", "--trunc", "6"]);
    assert_eq!(r["pass"], true);
    assert_eq!(r["suites"][0]["suite"], "equidist");
}
