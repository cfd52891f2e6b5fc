//! End-to-end checks of the command-line binary: exit codes, error JSON on
//! stderr, report emission, CSV export, and suite determinism.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gronwall"))
}

fn spec_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

#[test]
fn classic_spec_exits_zero_with_report() {
    let f = spec_file(
        r#"{"kind":"classic","grid":{"a":0.0,"b":1.0,"n":101},"data":{"a":1.0,"b":1.0}}"#,
    );
    let out = bin().arg("--spec").arg(f.path()).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let last = report["results"]["bound"].as_array().unwrap()[100].as_f64().unwrap();
    assert!((last - std::f64::consts::E).abs() < 1e-12);
    assert!(report["oracle_comparisons"][0]["pass"].as_bool().unwrap());
}

#[test]
fn admissibility_failure_exits_two_with_json_diagnostic() {
    let f = spec_file(
        r#"{"kind":"matrix","grid":{"a":0.0,"b":1.0,"n":2},
            "data":{"k":[[1.0,0.0],[0.0,1.0]],"a":[1.0,1.0],"b":1.0}}"#,
    );
    let out = bin().arg("--spec").arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    // single-line JSON naming the violated hypothesis
    assert_eq!(stderr.trim().lines().count(), 1);
    let err: serde_json::Value = serde_json::from_str(stderr.trim()).unwrap();
    assert!(err["error"].as_str().unwrap().contains("rho_K < 1"));
    assert_eq!(err["exit_code"], 2);
}

#[test]
fn schema_error_exits_one() {
    let f = spec_file(r#"{"kind":"classic","grid":{"a":0.0,"b":1.0,"n":11},"data":{"a":1.0}}"#);
    let out = bin().arg("--spec").arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stderr).unwrap().trim()).unwrap();
    assert_eq!(err["exit_code"], 1);
}

#[test]
fn missing_file_exits_one() {
    let out = bin().arg("--spec").arg("/nonexistent/spec.json").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_suite_exits_one() {
    let out = bin().args(["--suite", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn suite_runs_are_deterministic() {
    let run = || {
        let out = bin().args(["--suite", "all", "--seed", "1"]).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn csv_export_and_out_file() {
    let f = spec_file(
        r#"{"kind":"discrete","grid":{"a":0.0,"b":1.0,"n":3},
            "data":{"a":[1.0,1.0,1.0],"b":[1.0,1.0]}}"#,
    );
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = bin()
        .arg("--spec")
        .arg(f.path())
        .arg("--out")
        .arg(&out_path)
        .arg("--csv")
        .arg("--quiet")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let bound: Vec<f64> = report["results"]["bound"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(bound, vec![1.0, 2.0, 4.0]);
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4); // header + three rows
    assert!(csv.lines().nth(3).unwrap().ends_with(",4"));
}

#[test]
fn report_floats_round_trip_exactly() {
    let f = spec_file(
        r#"{"kind":"resolvent","grid":{"a":0.0,"b":1.0,"n":2},
            "data":{"k":[[0.0,0.7],[0.3,0.0]],"a":[1.0,2.0],"s":3.0,"route":"neumann"}}"#,
    );
    let out = bin().arg("--spec").arg(f.path()).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report, back);
}
