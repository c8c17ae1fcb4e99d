//! End-to-end tests of the `exgrad` binary: subcommand behavior, output
//! shapes, and the exit-code contract (0 ok, 1 usage/input, 2 budget
//! exhausted, 3 inner failure, 4 check failure).

use exgrad::equilibrium::Bifunction;
use exgrad::harness::ExperimentDocument;
use exgrad::operators::{FixedPointMap, MonotoneOperator};
use exgrad::schedule::{Schedule, Sequence};
use exgrad::sets::FeasibleSet;
use exgrad::space::SpaceDescriptor;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn exgrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exgrad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn preset_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../presets")
        .join(format!("{name}.json"))
}

fn preset_arg(name: &str) -> String {
    preset_path(name).display().to_string()
}

/// The shipped benchmark file with one field rewritten in-place.
fn mutated_preset(dir: &tempfile::TempDir, from: &str, to: &str) -> String {
    let text = std::fs::read_to_string(preset_path("paper-35")).unwrap();
    assert!(text.contains(from), "expected {from:?} in the preset file");
    let path = dir.path().join("mutated.json");
    std::fs::write(&path, text.replace(from, to)).unwrap();
    path.display().to_string()
}

#[test]
fn reproduce_prints_benchmark_rows_and_footnote() {
    let output = exgrad(&["reproduce", "--preset", "paper-35"]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    let table = stdout(&output);
    assert!(table.contains("# preset: paper-35"));
    assert!(table.contains("2.6250000000000000e0"), "table: {table}");
    assert!(table.contains("1.3125000000000000e0"), "table: {table}");
    assert!(table.contains("79/144"), "missing coefficient note: {table}");
}

#[test]
fn reproduce_rejects_unknown_preset() {
    let output = exgrad(&["reproduce", "--preset", "nope"]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("known presets"));
}

#[test]
fn solve_converges_on_the_benchmark() {
    let output = exgrad(&["solve", "--problem", &preset_arg("paper-35")]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    let summary = stdout(&output);
    assert!(summary.contains("status: converged"), "summary: {summary}");
    assert!(summary.contains("rate: geometric ratio 0.5"), "summary: {summary}");
}

#[test]
fn solve_exhausting_the_budget_exits_2() {
    let output = exgrad(&[
        "solve",
        "--problem",
        &preset_arg("paper-35"),
        "--max-iters",
        "10",
    ]);
    assert_eq!(code(&output), 2, "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("status: max_iters"));
}

#[test]
fn solve_trace_round_trips_into_rate() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let trace_arg = trace.display().to_string();
    let output = exgrad(&[
        "solve",
        "--problem",
        &preset_arg("paper-35"),
        "--out",
        &trace_arg,
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    let header = std::fs::read_to_string(&trace).unwrap();
    assert!(header.starts_with("k,x,u,y,z,step_norm,phi_gap,resolvent_violation\n"));

    let output = exgrad(&["rate", "--trace", &trace_arg]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("geometric ratio 0.5"), "{}", stdout(&output));
}

#[test]
fn solve_from_the_solution_stops_immediately() {
    let output = exgrad(&[
        "solve",
        "--problem",
        &preset_arg("paper-35"),
        "--x1",
        "0",
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("iterations: 1"));
}

#[test]
fn solve_rejects_unparsable_x1() {
    let output = exgrad(&[
        "solve",
        "--problem",
        &preset_arg("paper-35"),
        "--x1",
        "abc",
    ]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("--x1"));
}

#[test]
fn solve_rejects_infeasible_x1() {
    let output = exgrad(&[
        "solve",
        "--problem",
        &preset_arg("paper-35"),
        "--x1",
        "5",
    ]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("x1"), "stderr: {}", stderr(&output));
}

#[test]
fn solve_reports_missing_file() {
    let output = exgrad(&["solve", "--problem", "/nonexistent/problem.json"]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("cannot read"));
}

#[test]
fn solve_reports_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let output = exgrad(&["solve", "--problem", &path.display().to_string()]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("cannot parse"));
}

#[test]
fn solve_names_the_violated_schedule_condition() {
    let dir = tempfile::tempdir().unwrap();
    let path = mutated_preset(&dir, "\"tau\": 0.25", "\"tau\": 0.6");
    let output = exgrad(&["solve", "--problem", &path]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("(iv)"), "stderr: {}", stderr(&output));
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    let output = exgrad(&[]);
    assert_eq!(code(&output), 1);
}

#[test]
fn help_exits_cleanly() {
    let output = exgrad(&["--help"]);
    assert_eq!(code(&output), 0);
    assert!(stdout(&output).contains("solve"));
}

#[test]
fn check_passes_on_the_benchmark() {
    let output = exgrad(&["check", "--problem", &preset_arg("paper-35")]);
    assert_eq!(code(&output), 0, "stdout: {}", stdout(&output));
    let report = stdout(&output);
    assert!(report.contains("(A1)"));
    assert!(report.contains("(iv)"));
    assert!(!report.contains("FAIL"), "report: {report}");
}

#[test]
fn check_seed_env_is_honored() {
    let output = Command::new(env!("CARGO_BIN_EXE_exgrad"))
        .args(["check", "--problem", &preset_arg("paper-35")])
        .env("EXGRAD_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(code(&output), 0, "stdout: {}", stdout(&output));

    let output = Command::new(env!("CARGO_BIN_EXE_exgrad"))
        .args(["check", "--problem", &preset_arg("paper-35")])
        .env("EXGRAD_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("EXGRAD_SEED"));
}

#[test]
fn check_failure_exits_4_naming_the_condition() {
    let dir = tempfile::tempdir().unwrap();
    let path = mutated_preset(&dir, "\"tau\": 0.25", "\"tau\": 0.6");
    let output = exgrad(&["check", "--problem", &path]);
    assert_eq!(code(&output), 4, "stdout: {}", stdout(&output));
    let report = stdout(&output);
    assert!(report.contains("FAIL"), "report: {report}");
    assert!(report.contains("(iv)"), "report: {report}");
}

#[test]
fn rate_needs_enough_positive_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("short.csv");
    let trace_arg = trace.display().to_string();
    let output = exgrad(&[
        "solve",
        "--problem",
        &preset_arg("paper-35"),
        "--x1",
        "0",
        "--out",
        &trace_arg,
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));

    let output = exgrad(&["rate", "--trace", &trace_arg]);
    assert_eq!(code(&output), 1);
    assert!(
        stderr(&output).contains("positive residuals"),
        "stderr: {}",
        stderr(&output)
    );
}

#[test]
fn inner_solver_failure_exits_3() {
    // A resolvent query the damped fixed-point iteration cannot settle:
    // a stiff operator with an optimistic declared alpha.
    let document = ExperimentDocument {
        space: SpaceDescriptor::euclidean(2).unwrap(),
        set: FeasibleSet::bounded_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap(),
        bifunction: Bifunction::Zero,
        operator: MonotoneOperator::Linear {
            matrix: vec![vec![100.0, 0.0], vec![0.0, 100.0]],
            alpha: Some(1.0),
        },
        map_t: FixedPointMap::Identity,
        map_s: FixedPointMap::Identity,
        schedule: Schedule {
            alpha: Sequence::affine_reciprocal(1.0 / 3.0, 1.0 / 4.0),
            beta: Sequence::affine_reciprocal(1.0 / 2.0, -1.0 / 6.0),
            gamma: Sequence::affine_reciprocal(1.0 / 6.0, -1.0 / 12.0),
            r: 1.0,
            tau: 0.25,
            a_floor: None,
        },
        x1: vec![0.5, 0.5],
        reference_solution: None,
    };
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stiff.json");
    std::fs::write(&path, serde_json::to_string_pretty(&document).unwrap()).unwrap();

    let output = exgrad(&["solve", "--problem", &path.display().to_string()]);
    assert_eq!(code(&output), 3, "stderr: {}", stderr(&output));
    assert!(
        stderr(&output).contains("inner step failed"),
        "stderr: {}",
        stderr(&output)
    );
    assert!(stdout(&output).contains("status: inner_failure"));
}
