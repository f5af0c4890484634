//! End-to-end checks of the command-line surface: exit codes, output
//! determinism, and the round-trip property for emitted fans.

use std::path::PathBuf;
use std::process::Output;

use serde_json::Value;

fn workdir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_file(name: &str, contents: &str) -> PathBuf {
    let path = workdir().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn toric(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

#[test]
fn invalid_input_exits_2() {
    let path = write_file("broken.json", "{ not json");
    let out = toric(&["hilbert", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let out = toric(&["hilbert", "--input", "/nonexistent/cone.json"]);
    assert_eq!(out.status.code(), Some(2));

    // A cone containing a line is invalid input.
    let path = write_file("line.json", r#"{"rank": 2, "rays": [[1,0],[-1,0]]}"#);
    let out = toric(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let path = write_file(
        "c1123.json",
        r#"{"rank": 4, "rays": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[1,1,2,3]]}"#,
    );
    let out = toric(&[
        "search",
        "hbr",
        "--input",
        path.to_str().unwrap(),
        "--budget-nodes",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let report = stdout_json(&out);
    assert_eq!(report["complete"], Value::Bool(false));
}

#[test]
fn output_is_byte_identical_without_timing() {
    let path = write_file(
        "c113.json",
        r#"{"rank": 3, "rays": [[1,0,0],[0,1,0],[1,1,3]]}"#,
    );
    let run = || {
        toric(&[
            "search",
            "hbr",
            "--input",
            path.to_str().unwrap(),
            "--no-timing",
        ])
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    // With timing on, the report carries an elapsed_ms field.
    let timed = toric(&["search", "hbr", "--input", path.to_str().unwrap()]);
    let report = stdout_json(&timed);
    assert!(report.get("elapsed_ms").is_some());
}

#[test]
fn emitted_fans_round_trip() {
    let cone_path = write_file(
        "c125.json",
        r#"{"rank": 3, "rays": [[1,0,0],[0,1,0],[1,2,5]]}"#,
    );
    let out = toric(&["resolve", "--input", cone_path.to_str().unwrap(), "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let fan = &report["result"]["fan"];
    let fan_path = write_file("resolved.json", &fan.to_string());

    let check = toric(&[
        "check-subdivision",
        "--input",
        fan_path.to_str().unwrap(),
        "--cone",
        cone_path.to_str().unwrap(),
        "--no-timing",
    ]);
    assert_eq!(check.status.code(), Some(0));
    let verdict = stdout_json(&check);
    assert_eq!(verdict["result"]["valid_fan"], Value::Bool(true));
    assert_eq!(verdict["result"]["subdivision"], Value::Bool(true));
}

#[test]
fn check_commands_report_flags() {
    let square = write_file(
        "square.json",
        r#"{"rank": 3, "rays": [[0,0,1],[1,0,1],[0,1,1],[1,1,1]]}"#,
    );
    let triangulation = write_file(
        "square_triangulated.json",
        r#"{"rank": 3, "rays": [[0,0,1],[1,0,1],[0,1,1],[1,1,1]], "maximal_cones": [[0,1,2],[1,2,3]]}"#,
    );
    let out = toric(&[
        "check-moderate",
        "--input",
        triangulation.to_str().unwrap(),
        "--cone",
        square.to_str().unwrap(),
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["moderate"], Value::Bool(true));

    let out = toric(&[
        "check-crepant",
        "--input",
        triangulation.to_str().unwrap(),
        "--cone",
        square.to_str().unwrap(),
        "--no-timing",
    ]);
    assert_eq!(stdout_json(&out)["result"]["crepant"], Value::Bool(true));
}

#[test]
fn text_format_and_output_file() {
    let path = write_file(
        "c112.json",
        r#"{"rank": 3, "rays": [[1,0,0],[0,1,0],[1,1,2]]}"#,
    );
    let report_path = workdir().join("report.txt");
    let out = toric(&[
        "classify",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "text",
        "--no-timing",
        "--output",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&report_path).unwrap();
    assert!(text.starts_with("command: classify"));
    assert!(text.contains("\"terminal\": true"));
}

#[test]
fn minimal_models_command() {
    let square = write_file(
        "square2.json",
        r#"{"rank": 3, "rays": [[0,0,1],[1,0,1],[0,1,1],[1,1,1]]}"#,
    );
    let out = toric(&["minimal-models", "--input", square.to_str().unwrap(), "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["count"], Value::from(2));

    let out = toric(&["canonical-model", "--input", square.to_str().unwrap(), "--no-timing"]);
    let report = stdout_json(&out);
    assert_eq!(report["result"]["trivial"], Value::Bool(true));
}

#[test]
fn hilbert_command_reports_basis_and_exceptional() {
    let path = write_file(
        "a1r3_cone.json",
        r#"{"rank": 4, "rays": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[1,1,2,3]]}"#,
    );
    let out = toric(&["hilbert", "--input", path.to_str().unwrap(), "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["basis"].as_array().unwrap().len(), 6);
    assert_eq!(report["result"]["exceptional"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_commands() {
    let out = toric(&["verify", "thm33", "--a", "1,1,3", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["obstructed"], Value::Bool(true));
    assert_eq!(report["result"]["value"], Value::from("-1"));

    let out = toric(&["verify", "lemma-det", "--a", "3", "--r", "7", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["all_hold"], Value::Bool(true));
    assert_eq!(report["result"]["pairs_checked"], Value::from(36));

    let out = toric(&["verify", "forced-chain", "--a", "3", "--r", "7", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["b"], Value::from(5));
    assert_eq!(report["result"]["clash_ray"], serde_json::json!([2, 4, 5, 7]));

    // Family constraint violations are invalid input.
    let out = toric(&["verify", "forced-chain", "--a", "1", "--r", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = toric(&["verify", "thm33", "--a", "2,2,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_a1r3_command() {
    let out = toric(&["reproduce", "a1r3", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["complete"], Value::Bool(true));
    assert_eq!(report["result"]["expected_fan_found"], Value::Bool(true));
    assert_eq!(report["result"]["basis"].as_array().unwrap().len(), 6);
    assert_eq!(report["result"]["resolutions"], Value::from(1));
}
