use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const I2: &str = r#"{"n":2,"data":[[1,0],[0,1]]}"#;
const E12: &str = r#"{"n":2,"data":[[0,1],[0,0]]}"#;

fn tracegeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracegeo"))
        .args(args)
        .env_remove("TRACEGEO_TOL")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn matrix_file(name: &str, body: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn rows(doc: &Value) -> Vec<Vec<f64>> {
    serde_json::from_value(doc["data"].clone()).unwrap()
}

#[test]
fn metric_from_files() {
    let i2 = matrix_file("I2.json", I2);
    let e12 = matrix_file("E12.json", E12);
    let out = tracegeo(&["metric", "--at", &i2, "--x", &i2, "--y", &i2]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["value"], 2.0);
    let out = tracegeo(&["metric", "--at", &i2, "--x", &e12, "--y", &e12]);
    assert_eq!(stdout_json(&out)["value"], 0.0);
}

#[test]
fn malformed_json_is_a_parse_error() {
    let out = tracegeo(&["metric", "--at", "{\"n\":2,", "--x", I2, "--y", I2]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "parse");
    assert!(out.stdout.is_empty());
}

#[test]
fn singular_base_point() {
    let zero = r#"{"n":2,"data":[[0,0],[0,0]]}"#;
    let out = tracegeo(&["metric", "--at", zero, "--x", I2, "--y", I2]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "singular");
}

#[test]
fn matrix_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tracegeo"))
        .args(["signature", "--at", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(r#"{"n":3,"data":[[2,0,0],[0,1,0],[1,0,1]]}"#.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let v = stdout_json(&out);
    assert_eq!(
        (v["positive"].as_u64(), v["negative"].as_u64()),
        (Some(6), Some(3))
    );
}

#[test]
fn classify_exit_codes() {
    let out = tracegeo(&[
        "classify",
        "--k0",
        I2,
        "--k1",
        r#"{"n":2,"data":[[1,0],[0,2]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "unique");
    assert_eq!(v["profile"]["clusters"].as_array().unwrap().len(), 2);
    assert!(v["witness"]["c"].is_object());

    let out = tracegeo(&[
        "classify",
        "--k0",
        I2,
        "--k1",
        r#"{"n":2,"data":[[-1,0],[0,2]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "no-arc");
    assert!(v.get("witness").is_none());

    let out = tracegeo(&[
        "classify",
        "--k0",
        I2,
        "--k1",
        r#"{"n":2,"data":[[-1,0],[0,-1]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "continuum");
    assert!(v["witness"]["k"].is_object());

    let out = tracegeo(&[
        "classify",
        "--k0",
        I2,
        "--k1",
        r#"{"n":2,"data":[[0,-1],[1,0]]}"#,
    ]);
    assert_eq!(stdout_json(&out)["verdict"], "countable");
}

#[test]
fn geodesic_samples() {
    let zero = r#"{"n":2,"data":[[0,0],[0,0]]}"#;
    let out = tracegeo(&["geodesic", "--k", I2, "--c", zero, "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let samples = v.as_array().unwrap();
    assert_eq!(samples.len(), 3);
    for s in samples {
        assert_eq!(rows(s), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    let c = r#"{"n":2,"data":[[1,0],[0,-1]]}"#;
    let out = tracegeo(&[
        "geodesic",
        "--k",
        I2,
        "--c",
        c,
        "--t-from",
        "1",
        "--samples",
        "1",
    ]);
    let v = stdout_json(&out);
    let p = rows(&v[0]);
    assert!((p[0][0] - std::f64::consts::E).abs() < 1e-14);
    assert!((p[1][1] - (-1f64).exp()).abs() < 1e-15);
    assert!((v[0]["det"].as_f64().unwrap() - 1.0).abs() < 1e-15);

    let traceless = r#"{"n":2,"data":[[0.3,1.2],[-0.7,-0.3]]}"#;
    let out = tracegeo(&[
        "geodesic",
        "--k",
        I2,
        "--c",
        traceless,
        "--t-from",
        "-2",
        "--t-to",
        "2",
        "--samples",
        "9",
    ]);
    for s in stdout_json(&out).as_array().unwrap() {
        assert!((s["det"].as_f64().unwrap() - 1.0).abs() <= 1e-8);
    }
}

#[test]
fn geodesic_from_velocity() {
    let k = r#"{"n":2,"data":[[4,0],[0,1]]}"#;
    let s = format!(r#"{{"n":2,"data":[[{},0],[0,0]]}}"#, 4.0 * 4f64.ln());
    let out = tracegeo(&[
        "geodesic",
        "--k",
        k,
        "--velocity",
        &s,
        "--t-from",
        "1",
        "--samples",
        "1",
    ]);
    let p = rows(&stdout_json(&out)[0]);
    assert!((p[0][0] - 16.0).abs() < 1e-12);
}

#[test]
fn arcs() {
    let out = tracegeo(&[
        "arc",
        "--k0",
        I2,
        "--k1",
        r#"{"n":2,"data":[[1,0],[0,4]]}"#,
        "--samples",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mid = rows(&stdout_json(&out)["samples"][1]);
    assert!((mid[1][1] - 2.0).abs() < 1e-14);

    let out = tracegeo(&["arc", "--k0", I2, "--k1", I2]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "not-unique");

    let minus = r#"{"n":2,"data":[[-1,0],[0,-1]]}"#;
    let out = tracegeo(&["broken-arc", "--k1", I2, "--k2", minus]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        rows(&stdout_json(&out)["joint"]),
        vec![vec![1.0, 0.0], vec![0.0, 1.0]]
    );

    let flip = r#"{"n":2,"data":[[-1,0],[0,1]]}"#;
    let out = tracegeo(&["broken-arc", "--k1", I2, "--k2", flip]);
    assert_eq!(stderr_json(&out)["error"], "different-components");
}

#[test]
fn curvature_values() {
    let k = r#"{"n":3,"data":[[0.4,-0.9,0.2],[0.7,0.1,-0.5],[0.3,0.6,0.8]]}"#;
    let out = tracegeo(&["curvature", "--at", k, "--kind", "scalar"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((stdout_json(&out)["value"].as_f64().unwrap() + 12.0).abs() < 1e-10);

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let s12 = format!(r#"{{"n":2,"data":[[0,{h}],[{h},0]]}}"#);
    let a12 = format!(r#"{{"n":2,"data":[[0,{h}],[-{h},0]]}}"#);
    let out = tracegeo(&[
        "curvature",
        "--at",
        I2,
        "--kind",
        "sectional",
        "--x",
        &s12,
        "--y",
        &a12,
    ]);
    assert!((stdout_json(&out)["value"].as_f64().unwrap() + 0.5).abs() < 1e-14);

    let out = tracegeo(&[
        "curvature",
        "--at",
        I2,
        "--kind",
        "sectional",
        "--x",
        I2,
        "--y",
        I2,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "linearly-dependent");

    let out = tracegeo(&[
        "curvature",
        "--at",
        I2,
        "--kind",
        "riemann04",
        "--x",
        I2,
        "--y",
        E12,
    ]);
    assert_eq!(stderr_json(&out)["error"], "invalid-argument");

    let e21 = r#"{"n":2,"data":[[0,0],[1,0]]}"#;
    let out = tracegeo(&[
        "curvature",
        "--at",
        I2,
        "--kind",
        "ricci",
        "--x",
        E12,
        "--y",
        e21,
    ]);
    assert!((stdout_json(&out)["value"].as_f64().unwrap() + 1.0).abs() < 1e-14);
}

#[test]
fn verify_examples() {
    let out = tracegeo(&[
        "verify",
        "--suite",
        "curvature",
        "--n",
        "2",
        "--seed",
        "42",
        "--cases",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["cases"], 50);

    let out = tracegeo(&["verify", "--suite", "product", "--n", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["failures"].as_array().unwrap().len(), 0);

    let out = tracegeo(&[
        "verify", "--suite", "all", "--n", "2", "--seed", "1", "--cases", "5",
    ]);
    let names: Vec<String> = serde_json::from_value(stdout_json(&out)["suites"].clone()).unwrap();
    assert_eq!(
        names,
        ["metric", "geodesic", "curvature", "foliation", "product"]
    );
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify", "--suite", "all", "--n", "3", "--seed", "11", "--cases", "4",
    ];
    assert_eq!(tracegeo(&args).stdout, tracegeo(&args).stdout);
}

#[test]
fn verify_reports_failures() {
    let out = tracegeo(&[
        "verify",
        "--suite",
        "metric",
        "--n",
        "2",
        "--cases",
        "3",
        "--tol-assert",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    let failures = v["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert!(failures[0]["inputs"][0]["label"].is_string());
    assert_eq!(v["tolerances"]["assert"], 0.0);
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tracegeo"))
        .args(["verify", "--suite", "product", "--n", "2", "--cases", "1"])
        .env("TRACEGEO_TOL", "0.001")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["tolerances"]["assert"], 0.001);
}

#[test]
fn verify_rejects_orders_out_of_range() {
    let out = tracegeo(&["verify", "--suite", "metric", "--n", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "invalid-argument");
}

#[test]
fn usage_errors_are_json() {
    let out = tracegeo(&["metric", "--at", I2]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "usage");
}
