//! Exit-code contract and report shapes of the command-line surface.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_desargues"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_desargues"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not valid JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

const GOLDEN_BOOLEAN: &str =
    r#"{"ground":["1","2","3"],"A":[["1"],["2"],["3"]],"Aprime":[["1","3"],["2","3"],[]]}"#;

#[test]
fn boolean_check_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("config.json"), GOLDEN_BOOLEAN).unwrap();
    let output = run_in(dir.path(), &["boolean-check", "config.json"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["C3"], serde_json::json!(["3"]));
    assert_eq!(report["frakB3"], serde_json::json!(["1", "2"]));
    assert_eq!(report["implication_ok"], true);
}

#[test]
fn boolean_check_rejects_malformed_and_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.json"), "{not json").unwrap();
    let output = run_in(dir.path(), &["boolean-check", "broken.json"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stdout_json(&output)["error"].is_string());

    // distinctness violation
    let dup = r#"{"ground":["1","2"],"A":[["1"],["1"],["2"]],"Aprime":[[],["1"],["2"]]}"#;
    std::fs::write(dir.path().join("dup.json"), dup).unwrap();
    let output = run_in(dir.path(), &["boolean-check", "dup.json"]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&["boolean-check", "/nonexistent/path.json"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn boolean_scan_counterexample_feeds_back_into_check() {
    let output = run(&["boolean-scan", "2"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["violations"], 0);
    let ce = &report["converse_counterexample"];
    assert!(ce.is_object());

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("ce.json"),
        serde_json::to_string(ce).unwrap(),
    )
    .unwrap();
    let output = run_in(dir.path(), &["boolean-check", "ce.json"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["antecedent"], false);
    assert_eq!(report["consequent"], true);
}

#[test]
fn boolean_scan_bounds_and_parallel() {
    let output = run(&["boolean-scan", "5"]);
    assert_eq!(output.status.code(), Some(2));

    let serial = run(&["boolean-scan", "3"]);
    let parallel = run(&["boolean-scan", "3", "--parallel", "4"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(parallel.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn desargues_check_generated_and_invalid_files() {
    let dir = tempfile::tempdir().unwrap();

    let output = run_in(
        dir.path(),
        &[
            "generate", "--kind", "desarguesian", "--seed", "11", "--dim", "5", "--out",
            "cfg.json",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let output = run_in(dir.path(), &["desargues-check", "cfg.json"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["concurrent"], true);
    assert_eq!(report["equivalence_ok"], true);
    assert!(report["center"].is_array());

    let output = run_in(
        dir.path(),
        &[
            "generate", "--kind", "generic", "--seed", "11", "--dim", "4", "--out",
            "gen.json",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let output = run_in(dir.path(), &["desargues-check", "gen.json"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_json(&output)["equivalence_ok"], true);

    // non-coplanar triangles are rejected as input errors
    let non_coplanar = serde_json::json!({
        "d": 4,
        "triangle": [
            [{"re":"1"},{"re":"0"},{"re":"0"},{"re":"0"}],
            [{"re":"0"},{"re":"1"},{"re":"0"},{"re":"0"}],
            [{"re":"0"},{"re":"0"},{"re":"1"},{"re":"0"}]
        ],
        "triangle_prime": [
            [{"re":"1"},{"re":"0"},{"re":"0"},{"re":"0"}],
            [{"re":"0"},{"re":"1"},{"re":"0"},{"re":"0"}],
            [{"re":"0"},{"re":"0"},{"re":"0"},{"re":"1"}]
        ]
    });
    std::fs::write(
        dir.path().join("planes.json"),
        serde_json::to_string(&non_coplanar).unwrap(),
    )
    .unwrap();
    let output = run_in(dir.path(), &["desargues-check", "planes.json"]);
    assert_eq!(output.status.code(), Some(2));

    // a degenerate configuration (shared vertex) is also an input error
    let degenerate = serde_json::json!({
        "d": 3,
        "triangle": [
            [{"re":"1"},{"re":"0"},{"re":"0"}],
            [{"re":"0"},{"re":"1"},{"re":"0"}],
            [{"re":"0"},{"re":"0"},{"re":"1"}]
        ],
        "triangle_prime": [
            [{"re":"1"},{"re":"0"},{"re":"0"}],
            [{"re":"0"},{"re":"1"},{"re":"1"}],
            [{"re":"0"},{"re":"1"},{"re":"-1"}]
        ]
    });
    std::fs::write(
        dir.path().join("degenerate.json"),
        serde_json::to_string(&degenerate).unwrap(),
    )
    .unwrap();
    let output = run_in(dir.path(), &["desargues-check", "degenerate.json"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn generate_rejects_small_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(
        dir.path(),
        &[
            "generate", "--kind", "generic", "--seed", "0", "--dim", "2", "--out", "x.json",
        ],
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(!dir.path().join("x.json").exists());
}

fn write_worked_example(dir: &Path) {
    let file = desargues_core::DesarguesConfigFile::from_config(&desargues_core::worked_example::config());
    std::fs::write(
        dir.join("example.json"),
        serde_json::to_string_pretty(&file).unwrap(),
    )
    .unwrap();
    let state = desargues_core::measure::StateFile {
        d: 5,
        amplitudes: vec![
            [0.2294, 0.0],
            [0.4588, 0.0],
            [0.2294, 0.0],
            [0.6882, 0.0],
            [0.4588, 0.0],
        ],
    };
    std::fs::write(
        dir.join("state.json"),
        serde_json::to_string(&state).unwrap(),
    )
    .unwrap();
}

#[test]
fn experiment_reproduces_reference_numbers() {
    let dir = tempfile::tempdir().unwrap();
    write_worked_example(dir.path());
    let output = run_in(dir.path(), &["experiment", "example.json", "state.json"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["exp1"][0]["probability"], 0.6737);
    assert_eq!(report["exp2"][0]["probability"], 0.4549);
    assert_eq!(report["exp1"][1]["probability"], 1.0);
    assert_eq!(report["exp2"][1]["probability"], 1.0);
    assert_eq!(report["unchanged1"], true);
    assert_eq!(report["unchanged2"], true);
}

#[test]
fn experiment_zero_probability_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    write_worked_example(dir.path());
    // e1 is orthogonal to every subspace of the example, whose vectors all
    // have first coordinate zero
    let state = r#"{"d":5,"amplitudes":[[1,0],[0,0],[0,0],[0,0],[0,0]]}"#;
    std::fs::write(dir.path().join("orthogonal.json"), state).unwrap();
    let output = run_in(dir.path(), &["experiment", "example.json", "orthogonal.json"]);
    assert_eq!(output.status.code(), Some(1));
    let diagnostics = String::from_utf8_lossy(&output.stderr);
    assert!(diagnostics.contains("stage 1"), "stderr: {diagnostics}");
}

#[test]
fn experiment_dimension_mismatch_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    write_worked_example(dir.path());
    let state = r#"{"d":3,"amplitudes":[[1,0],[0,0],[0,0]]}"#;
    std::fs::write(dir.path().join("short.json"), state).unwrap();
    let output = run_in(dir.path(), &["experiment", "example.json", "short.json"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn paper_example_passes_and_prints_table() {
    let output = run(&["paper-example"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    assert_eq!(report["all_pass"], true);
    let table = String::from_utf8_lossy(&output.stderr);
    assert!(table.lines().filter(|l| l.starts_with("PASS")).count() >= 15);
    assert!(!table.contains("FAIL"));
}

#[test]
fn tolerances_flag_prints_the_table() {
    let output = run(&["--tolerances"]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout_json(&output);
    let entries = report["tolerances"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["name"] == "projector_table"));
}

#[test]
fn pretty_output_is_indented_json() {
    let output = run(&["--output", "pretty", "boolean-scan", "2"]);
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.starts_with("{\n"));
    stdout_json(&output);
}

#[test]
fn missing_subcommand_is_an_input_error() {
    let output = run(&[]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stdout_json(&output)["error"].is_string());
}

#[test]
fn identical_invocations_print_identical_reports() {
    let a = run(&["paper-example"]);
    let b = run(&["paper-example"]);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    write_worked_example(dir.path());
    let a = run_in(dir.path(), &["experiment", "example.json", "state.json"]);
    let b = run_in(dir.path(), &["experiment", "example.json", "state.json"]);
    assert_eq!(a.stdout, b.stdout);
}
