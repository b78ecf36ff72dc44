//! End-to-end CLI behavior: schema rejection with field-addressed
//! messages, exit codes, emitted file round-trips, and CSV output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_ambicode")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const AND_GATE: &str = r#"{
  "referents": ["00", "01", "10", "11"],
  "signals": ["0", "1"],
  "map": [0, 0, 0, 1]
}"#;

const BALANCED4: &str = r#"{
  "referents": ["m1", "m2", "m3", "m4"],
  "signals": ["s1", "s2"],
  "map": [0, 0, 1, 1]
}"#;

const AND_MACHINE: &str = r#"{
  "states": ["q0"],
  "input_alphabet": ["00", "01", "10", "11"],
  "output_alphabet": ["0", "1"],
  "initial_state": "q0",
  "transitions": [
    {"state": "q0", "read": "00", "next": "q0", "write": "0"},
    {"state": "q0", "read": "01", "next": "q0", "write": "0"},
    {"state": "q0", "read": "10", "next": "q0", "write": "0"},
    {"state": "q0", "read": "11", "next": "q0", "write": "1"}
  ]
}"#;

#[test]
fn malformed_files_exit_one_and_name_the_field() {
    // (description, subcommand kind, file body, substring the message must carry)
    let cases: Vec<(&str, &str, String, &str)> = vec![
        (
            "negative prior entry",
            "code",
            r#"{"referents":["a","b"],"signals":["x"],"prior":[-0.5,1.5],"map":[0,0]}"#.into(),
            "\"prior\"",
        ),
        (
            "prior does not sum to one",
            "code",
            r#"{"referents":["a","b"],"signals":["x"],"prior":[0.4,0.4],"map":[0,0]}"#.into(),
            "\"prior\"",
        ),
        (
            "prior length mismatch",
            "code",
            r#"{"referents":["a","b"],"signals":["x"],"prior":[1.0],"map":[0,0]}"#.into(),
            "\"prior\"",
        ),
        (
            "map shorter than referents",
            "code",
            r#"{"referents":["a","b"],"signals":["x"],"map":[0]}"#.into(),
            "\"map\"",
        ),
        (
            "map entry out of range",
            "code",
            r#"{"referents":["a","b"],"signals":["x"],"map":[0,5]}"#.into(),
            "\"map\"",
        ),
        (
            "duplicate referent label",
            "code",
            r#"{"referents":["a","a"],"signals":["x"],"map":[0,0]}"#.into(),
            "\"referents\"",
        ),
        (
            "duplicate signal label",
            "code",
            r#"{"referents":["a","b"],"signals":["x","x"],"map":[0,0]}"#.into(),
            "\"signals\"",
        ),
        (
            "empty referent list",
            "code",
            r#"{"referents":[],"signals":["x"],"map":[]}"#.into(),
            "\"referents\"",
        ),
        (
            "empty signal list",
            "code",
            r#"{"referents":["a"],"signals":[],"map":[0]}"#.into(),
            "\"signals\"",
        ),
        (
            "missing map field",
            "code",
            r#"{"referents":["a"],"signals":["x"]}"#.into(),
            "map",
        ),
        (
            "unknown field",
            "code",
            r#"{"referents":["a"],"signalz":["x"],"map":[0]}"#.into(),
            "signalz",
        ),
        (
            "syntactically broken file",
            "code",
            "{".into(),
            "line 1",
        ),
        (
            "non-numeric map entry",
            "code",
            r#"{"referents":["a"],"signals":["x"],"map":["zero"]}"#.into(),
            "map",
        ),
        (
            "channel row not stochastic",
            "channel",
            r#"{"matrix":[[0.5,0.4],[0.5,0.5]]}"#.into(),
            "\"matrix\"",
        ),
        (
            "channel negative entry",
            "channel",
            r#"{"matrix":[[1.2,-0.2],[0.5,0.5]]}"#.into(),
            "\"matrix\"",
        ),
        (
            "channel ragged rows",
            "channel",
            r#"{"matrix":[[1.0],[0.5,0.5]]}"#.into(),
            "\"matrix\"",
        ),
        (
            "channel outputs length mismatch",
            "channel",
            r#"{"matrix":[[0.5,0.5],[0.5,0.5]],"outputs":["only"]}"#.into(),
            "\"outputs\"",
        ),
        (
            "machine duplicate transition",
            "machine",
            r#"{"states":["q0"],"input_alphabet":["a"],"output_alphabet":["x"],
"initial_state":"q0","transitions":[
{"state":"q0","read":"a","next":"q0","write":"x"},
{"state":"q0","read":"a","next":"q0","write":"x"}]}"#
                .into(),
            "\"transitions\"",
        ),
        (
            "machine missing transition",
            "machine",
            r#"{"states":["q0"],"input_alphabet":["a","b"],"output_alphabet":["x"],
"initial_state":"q0","transitions":[
{"state":"q0","read":"a","next":"q0","write":"x"}]}"#
                .into(),
            "\"transitions\"",
        ),
        (
            "machine unknown initial state",
            "machine",
            r#"{"states":["q0"],"input_alphabet":["a"],"output_alphabet":["x"],
"initial_state":"q9","transitions":[
{"state":"q0","read":"a","next":"q0","write":"x"}]}"#
                .into(),
            "\"initial_state\"",
        ),
        (
            "machine overlapping alphabets",
            "machine",
            r#"{"states":["q0"],"input_alphabet":["a"],"output_alphabet":["a"],
"initial_state":"q0","transitions":[
{"state":"q0","read":"a","next":"q0","write":"a"}]}"#
                .into(),
            "\"alphabets\"",
        ),
    ];
    assert_eq!(cases.len(), 21);

    let dir = tempfile::tempdir().unwrap();
    for (description, kind, body, expected) in cases {
        let path = write(dir.path(), "bad.json", &body);
        let file = path.to_str().unwrap();
        let output = match kind {
            "code" => run_in(dir.path(), &["analyze", "--code", file]),
            "channel" => {
                write(dir.path(), "ok_code.json", BALANCED4);
                run_in(
                    dir.path(),
                    &["analyze", "--code", "ok_code.json", "--channel", file],
                )
            }
            "machine" => run_in(dir.path(), &["machine", "check", "--machine", file]),
            other => panic!("unknown kind {other}"),
        };
        let stderr = String::from_utf8_lossy(&output.stderr);
        assert_eq!(
            output.status.code(),
            Some(1),
            "{description}: expected exit 1, got {:?}\nstderr: {stderr}",
            output.status.code()
        );
        assert!(
            stderr.contains(expected),
            "{description}: message {stderr:?} does not name {expected:?}"
        );
    }
}

#[test]
fn unknown_flags_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(dir.path(), &["analyze", "--nonsense"]);
    assert_eq!(output.status.code(), Some(1));
    let output = run_in(dir.path(), &["frobnicate"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn missing_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(dir.path(), &["analyze", "--code", "nowhere.json"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("nowhere.json"));
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(dir.path(), &["--help"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&output.stdout).contains("synthesize"));
}

#[test]
fn infeasible_requests_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(
        dir.path(),
        &["synthesize", "--n", "30", "--m", "2", "--method", "exhaustive"],
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("anneal"));

    // State-dependent signals make the projection undefined.
    let machine = write(
        dir.path(),
        "state_dependent.json",
        r#"{"states":["q0","q1"],"input_alphabet":["a"],"output_alphabet":["x","y"],
"initial_state":"q0","transitions":[
{"state":"q0","read":"a","next":"q1","write":"x"},
{"state":"q1","read":"a","next":"q0","write":"y"}]}"#,
    );
    let output = run_in(
        dir.path(),
        &["machine", "project", "--machine", machine.to_str().unwrap()],
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("projection undefined"));
}

#[test]
fn synthesized_codes_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(
        dir.path(),
        &[
            "synthesize",
            "--n",
            "4",
            "--m",
            "4",
            "--method",
            "exhaustive",
            "--tol",
            "1e-9",
            "--out",
            "found",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let codes = doc["codes"].as_array().unwrap();
    assert_eq!(codes.len(), 36);

    for entry in codes {
        let index = entry["index"].as_u64().unwrap();
        let residual = entry["residual_bits"]["exact"].as_f64().unwrap();
        let file = dir.path().join("found").join(format!("code_{index:03}.json"));
        let analyze = run_in(
            dir.path(),
            &["analyze", "--code", file.to_str().unwrap()],
        );
        assert_eq!(analyze.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&analyze.stdout).unwrap();
        let recomputed = report["info"]["symmetry_residual"]["exact"].as_f64().unwrap();
        assert!(
            (recomputed.abs() - residual).abs() <= 1e-12,
            "code_{index:03}: residual drifted from {residual} to {recomputed}"
        );
    }
}

#[test]
fn projected_machines_feed_back_into_analyze() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "machine.json", AND_MACHINE);
    let project = run_in(
        dir.path(),
        &["machine", "project", "--machine", "machine.json"],
    );
    assert_eq!(project.status.code(), Some(0));
    write(
        dir.path(),
        "projected.json",
        &String::from_utf8(project.stdout).unwrap(),
    );
    let analyze = run_in(dir.path(), &["analyze", "--code", "projected.json"]);
    assert_eq!(analyze.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&analyze.stdout).unwrap();
    assert_eq!(report["info"]["reversible"], serde_json::Value::Bool(false));
}

#[test]
fn machine_run_reports_the_trace() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "machine.json", AND_MACHINE);
    let output = run_in(
        dir.path(),
        &[
            "machine",
            "run",
            "--machine",
            "machine.json",
            "--input",
            "11,00,01",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["output"], serde_json::json!(["1", "0", "0"]));
    assert_eq!(doc["steps"].as_array().unwrap().len(), 3);

    let unknown = run_in(
        dir.path(),
        &[
            "machine",
            "run",
            "--machine",
            "machine.json",
            "--input",
            "11,zz",
        ],
    );
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn csv_reports_are_flat_tables() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "and_gate.json", AND_GATE);

    let analyze = run_in(
        dir.path(),
        &["analyze", "--code", "and_gate.json", "--csv"],
    );
    assert_eq!(analyze.status.code(), Some(0));
    let text = String::from_utf8(analyze.stdout).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("h_omega,h_s,"));
    assert!(lines[1].contains("ambiguous"));

    let synth = run_in(
        dir.path(),
        &[
            "synthesize",
            "--n",
            "4",
            "--m",
            "4",
            "--method",
            "exhaustive",
            "--csv",
        ],
    );
    let text = String::from_utf8(synth.stdout).unwrap();
    // Header plus one row per found code.
    assert_eq!(text.trim_end().lines().count(), 37);
}
