//! Runs the built binary and checks exit codes, output files and formats.

use std::process::{Command, Output};

fn schlicht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schlicht"))
        .args(args)
        .env_remove("SCHLICHT_TRUNC")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn extremal_json_carries_header_and_sharp_a3() {
    let o = schlicht(&[
        "extremal", "--line", "beta", "--beta", "0.5", "--k", "2", "--seed", "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["result"]["a3"][0].as_f64().unwrap() - 0.375).abs() < 1e-10);
    let h = &v["header"];
    assert_eq!(h["tool"], "schlicht");
    assert_eq!(h["seed"], 7);
    assert_eq!(h["trunc"], 96);
    assert!(h["version"].is_string());
    assert!(h["timestamp"].is_u64());
}

#[test]
fn no_timestamp_drops_the_field() {
    let o = schlicht(&["audit-schwarz", "--trials", "50", "--no-timestamp"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["header"].get("timestamp").is_none());
}

#[test]
fn neglog_is_a_generator() {
    let o = schlicht(&["membership", "--class", "generator", "--function", "neglog"]);
    assert_eq!(o.status.code(), Some(0));
    let o = schlicht(&["membership", "--class", "generator", "--function", "koebe"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let o = schlicht(&[
        "membership",
        "--function",
        "id",
        "--alpha",
        "1",
        "--beta",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("alpha+beta must be < 2"), "{err}");
    assert_eq!(
        schlicht(&["extremal", "--line", "gamma"]).status.code(),
        Some(2)
    );
    assert_eq!(
        schlicht(&["sweep", "--line", "beta", "--beta", "abc"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(schlicht(&[]).status.code(), Some(2));
}

#[test]
fn alpha_line_past_one_is_reported_as_violation() {
    let o = schlicht(&[
        "audit-filtration",
        "--line",
        "alpha",
        "--alpha",
        "1",
        "--to",
        "1.5",
        "--trials",
        "20",
        "--probe",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("# status: violation"));
}

#[test]
fn env_var_sets_truncation() {
    let o = Command::new(env!("CARGO_BIN_EXE_schlicht"))
        .args(["extremal", "--line", "alpha", "--alpha", "1", "--k", "1"])
        .env("SCHLICHT_TRUNC", "24")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["header"]["trunc"], 24);
    // f = z·p carries one coefficient more than the solved quotient
    assert_eq!(v["result"]["f"]["n"], 25);
}

#[test]
fn sweep_csv_to_file() {
    let dir = std::env::temp_dir().join(format!("schlicht-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let o = schlicht(&[
        "sweep",
        "--line",
        "alpha",
        "--alpha",
        "1",
        "--lambda-grid",
        "default",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let table: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(table[0], "lambda_re,lambda_im,bound,attained,ratio");
    assert_eq!(table.len(), 124);
    for line in &table[1..] {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let expect = ((1.0 - f[0]).hypot(f[1])).max(1.0);
        assert!((f[2] - expect).abs() < 1e-12);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_series_input() {
    let dir = std::env::temp_dir().join(format!("schlicht-series-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.json");
    // z + z²/4
    std::fs::write(&path, r#"{"n":3,"coeffs":[[0,0],[1,0],[0.25,0],[0,0]]}"#).unwrap();
    let o = schlicht(&[
        "membership",
        "--class",
        "convex",
        "--function",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    std::fs::write(&path, r#"{"n":2,"coeffs":[[0,0],[2,0],[0,0]]}"#).unwrap();
    let o = schlicht(&["membership", "--function", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
