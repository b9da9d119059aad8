use std::process::{Command, Output};

use frobenius::verify::admissible_curves;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobenius"))
        .args(args)
        .env_remove("FROBENIUS_PRECISION")
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

#[test]
fn sampled_runs_are_byte_identical() {
    let args = ["verify", "trace", "--p-range", "37..61", "--sample", "6", "--seed", "9"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = run(&["verify", "trace", "--p-range", "37..61", "--sample", "6", "--seed", "10"]);
    assert_ne!(a.stdout, other.stdout);
    let lines = json_lines(&a);
    let summary = lines.last().unwrap();
    assert_eq!(summary["seed"], 9);
    assert_eq!(summary["records"], 6 * 7);
}

#[test]
fn p5_reports_exactly_the_admissible_curves() {
    let out = run(&["verify", "trace", "--p-range", "5..5", "--exhaustive"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    let (summary, records) = lines.split_last().unwrap();
    let subjects: Vec<String> = records.iter().map(|r| r["subject"].as_str().unwrap().to_string()).collect();
    let expected: Vec<String> = admissible_curves(5)
        .into_iter()
        .map(|(a, b)| format!("y^2 = x^3 + {a}x + {b}"))
        .collect();
    assert_eq!(subjects, expected);
    assert!(records.iter().all(|r| r["match"] == true));
    assert_eq!(summary["status"], "pass");
}

#[test]
fn empty_range_passes() {
    let out = run(&["verify", "trace", "--p-range", "90..96"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["records"], 0);
    assert_eq!(lines[0]["status"], "pass");
}

#[test]
fn csv_output() {
    let out = run(&["verify", "p3", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("task,prime,subject,lhs"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "trace", "--p-range", "5-7"]).status.code(), Some(2));
    assert_eq!(run(&["ap", "--p", "8", "--curve", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["ap", "--p", "5", "--curve", "0,1", "--method", "g"]).status.code(), Some(2));
}

#[test]
fn module_subcommands() {
    let text = |args: &[&str]| String::from_utf8(run(args).stdout).unwrap();
    assert_eq!(text(&["ap", "--p", "5", "--curve", "1,1", "--method", "gauss"]).trim(), "-3");
    assert_eq!(text(&["ap", "--p", "5", "--curve", "1,1", "--method", "legendre"]).trim(), "-3");
    assert_eq!(text(&["ap", "--p", "7", "--curve", "1,2,1,2,3", "--method", "g"]), text(&["ap", "--p", "7", "--curve", "1,2,1,2,3"]));
    assert_eq!(text(&["modform", "coeff", "--n", "2"]).trim(), "1");
    // Γ_5(3) = (−1)³·1·2 = −2
    assert_eq!(text(&["gamma", "--p", "5", "--prec", "1", "--x", "3"]).trim(), "3");
    let g = text(&["g-eval", "--p", "5", "--upper", "1/4,3/4", "--lower", "1/3,2/3", "--t", "2"]);
    assert!(g.contains("valuation -1"));
    assert!(text(&["invariants", "--p", "5", "--curve", "1,1"]).contains("discriminant"));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_frobenius"))
        .args(["verify", "p3"])
        .env("FROBENIUS_PRECISION", "4")
        .output()
        .unwrap();
    let lines = json_lines(&out);
    assert_eq!(lines.last().unwrap()["precision"], 4);
}
