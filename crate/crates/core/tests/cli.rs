use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_momentbound"))
}

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr))
    })
}

#[test]
fn bound_birth_death() {
    let m = model("bd.model");
    let out = run(&["bound", m.to_str().unwrap(), "--mu", "2", "--objective", "E[X1]"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let runs = v["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 2);
    for r in runs {
        for side in ["lower", "upper"] {
            let x = r[side]["value"].as_f64().unwrap();
            assert!((x - 10.0).abs() < 1e-4, "{side}: {x}");
        }
    }
    assert_eq!(v["ok"], true);
    assert!(v["solver"]["species_scale"].is_array());
}

#[test]
fn bound_writes_export_and_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let export = dir.path().join("p.json");
    let m = model("dimer.model");
    let out = run(&[
        "bound",
        m.to_str().unwrap(),
        "--mu",
        "3",
        "--objective",
        "E[X2]",
        "--mode",
        "decomposed",
        "--scale",
        "1",
        "--out",
        report.to_str().unwrap(),
        "--export",
        export.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["runs"][0]["mode"], "decomposed");
    let p: Value = serde_json::from_str(&std::fs::read_to_string(export).unwrap()).unwrap();
    assert_eq!(p["schema"], momentbound::sdp::SCHEMA);
}

#[test]
fn decompose_dimer() {
    let m = model("dimer.model");
    let out = run(&["decompose", m.to_str().unwrap(), "--mu", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let r3 = v["reactions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["label"] == "R3")
        .unwrap();
    assert_eq!(r3["phi_bar"], serde_json::json!(["1", "X2", "X2^2"]));
    assert_eq!(v["original"]["max_block_dim"], 6);
}

#[test]
fn bench_rows_and_confidence_flag() {
    let m = model("bd.model");
    let out = run(&[
        "bench",
        m.to_str().unwrap(),
        "--mu-list",
        "1..2",
        "--objective",
        "E[X1]",
        "--repeats",
        "1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, momentbound::report::BENCH_HEADER.to_vec());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    // 2 orders x 2 modes x 2 senses
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[5].ends_with("|low_confidence")));
}

#[test]
fn simulate_json_and_csv() {
    let m = model("bd.model");
    let args = [
        "simulate",
        m.to_str().unwrap(),
        "--t-end",
        "500",
        "--moments",
        "X1,X1^2",
        "--seed",
        "7",
        "--init",
        "X1=10",
    ];
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["moment_names"], serde_json::json!(["X1", "X1^2"]));
    let mean = v["estimate"]["moments"][0]["mean"].as_f64().unwrap();
    assert!((mean - 10.0).abs() < 2.0);

    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = run(&csv_args);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("moment,mean,se\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.model");
    std::fs::write(&bad, "species A;\nreaction r: 0 -> B @ mass(1);\n").unwrap();
    let out = run(&["decompose", bad.to_str().unwrap(), "--mu", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let out = run(&["decompose", "/nonexistent/x.model", "--mu", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["bound"]);
    assert_eq!(out.status.code(), Some(1));

    let m = model("bd.model");
    let out = run(&["bound", m.to_str().unwrap(), "--mu", "2", "--objective", "E[X1]", "--scale", "zero"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
