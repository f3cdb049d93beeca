//! End-to-end tests of the `annuli` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_annuli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn eigen_examples_from_the_interface() {
    // problem I, m=1, minimum over modes at R ~ 10: argmin |n| = 1
    let text = stdout(&[
        "eigen",
        "--problem",
        "I",
        "--m",
        "1",
        "--n",
        "min",
        "--a",
        "1",
        "--b",
        "22026.46",
    ]);
    assert!(text.contains("argmin |n| = 1"), "{text}");

    // problem II, d=4, n=0 at R=10: exact mu0 = 4 + 4 pi^2/100
    let text = stdout(&[
        "eigen",
        "--problem",
        "II",
        "--d",
        "4",
        "--n",
        "0",
        "--R",
        "10",
    ]);
    assert!(text.contains("4.394784"), "{text}");

    // problem I, d=5, n=0 at R=200: ~ 25/16
    let text = stdout(&[
        "eigen",
        "--problem",
        "I",
        "--d",
        "5",
        "--n",
        "0",
        "--R",
        "200",
    ]);
    assert!(text.contains("1.564"), "{text}");
}

#[test]
fn json_deterministic_modulo_timestamp() {
    let args = [
        "verify",
        "--name",
        "corollary-A",
        "--m",
        "1",
        "--R",
        "9",
        "--trials",
        "25",
        "--seed",
        "7",
        "--json",
    ];
    let strip = |s: String| -> String {
        s.lines()
            .filter(|l| !l.contains("\"timestamp\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(stdout(&args));
    let b = strip(stdout(&args));
    assert_eq!(a, b);
    assert!(a.contains("\"schema\": 1"));
    assert!(a.contains("\"violations\": 0"));
}

#[test]
fn hypothesis_violation_exits_2_without_force() {
    // R = 2 is below the proven bracket for problem I, m = 1, n = 0
    let out = run(&[
        "eigen",
        "--problem",
        "I",
        "--m",
        "1",
        "--n",
        "0",
        "--R",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let forced = run(&[
        "eigen",
        "--problem",
        "I",
        "--m",
        "1",
        "--n",
        "0",
        "--R",
        "2",
        "--force",
    ]);
    assert!(forced.status.success());
    assert!(String::from_utf8_lossy(&forced.stdout).contains("proven     = false"));
}

#[test]
fn sweep_emits_csv_rows() {
    let text = stdout(&[
        "sweep",
        "--problem",
        "I",
        "--m",
        "1",
        "--n",
        "1",
        "--axis",
        "R",
        "--from",
        "5",
        "--to",
        "7",
        "--step",
        "1",
        "--threads",
        "2",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("axis_value,problem"));
    assert_eq!(lines.len(), 1 + 3);
    // rows sorted by the sweep axis
    assert!(lines[1].starts_with("5.") && lines[3].starts_with("7."));
}

#[test]
fn oracle_gap_small_on_exact_case() {
    let text = stdout(&[
        "oracle",
        "--problem",
        "II",
        "--d",
        "4",
        "--n",
        "0",
        "--R",
        "10",
        "--grid",
        "1000",
        "--csv",
    ]);
    let row = text.lines().nth(1).unwrap();
    let gap: f64 = row.split(',').next_back().unwrap().parse().unwrap();
    assert!(gap < 1e-3, "gap {gap}");
}

#[test]
fn biharmonic_coefficient_file() {
    let mut tmp = std::env::temp_dir();
    tmp.push(format!("annuli-coeffs-{}.txt", std::process::id()));
    std::fs::write(&tmp, "alpha 1.0\nbeta 0.0\na 1 0.5 0.0\nb -1 0.25 -0.5\n").unwrap();
    let text = stdout(&[
        "biharmonic",
        "--coeffs",
        tmp.to_str().unwrap(),
        "--R",
        "10",
        "--beta",
        "0.75",
        "--gamma",
        "0.75",
    ]);
    std::fs::remove_file(&tmp).ok();
    assert!(text.contains("interpolation:"), "{text}");
    assert!(text.contains("hypothesis_ok = true"));

    // stdin variant
    let mut child = Command::new(env!("CARGO_BIN_EXE_annuli"))
        .args(["biharmonic", "--coeffs", "-", "--R", "10"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"alpha 0.0\nbeta 1.0\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
}

#[test]
fn bad_input_is_a_plain_error() {
    let out = run(&[
        "eigen",
        "--problem",
        "I",
        "--m",
        "0.5",
        "--n",
        "0",
        "--R",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("require m >= 1"));
}
