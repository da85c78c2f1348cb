use std::fs;
use std::process::{Command, Output};

use qutrit_eur::experiment::{parse_csv, CSV_HEADER};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qutrit-eur"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn sweep_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let res = cli(&[
        "sweep",
        "--theta",
        "0.5",
        "--lambda",
        "0.01",
        "--k",
        "0.8",
        "--t-max",
        "50",
        "--steps",
        "101",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );

    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    let provenance = lines.next().unwrap();
    assert!(provenance.starts_with("# qutrit-eur "));
    assert!(provenance.contains("theta=0.5") && provenance.contains("steps=101"));
    assert_eq!(lines.next().unwrap(), CSV_HEADER);

    let records = parse_csv(text.as_bytes()).unwrap();
    assert_eq!(records.len(), 101);
    assert_eq!(records.last().unwrap().t_gamma, 50.0);

    let summary = fs::read_to_string(dir.path().join("run.csv.summary.txt")).unwrap();
    assert!(summary.contains("u_l_max"));
    assert!(summary.contains("period_estimate"));
}

#[test]
fn figure_preset_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.csv");
    let res = cli(&["figure", "fig3d", "--out", out.to_str().unwrap()]);
    assert!(res.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text
        .lines()
        .next()
        .unwrap()
        .contains("preset=fig3d lambda_reading=inferred"));
    assert_eq!(parse_csv(text.as_bytes()).unwrap().len(), 4800);
}

#[test]
fn unknown_preset_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let res = cli(&["figure", "fig9z", "--out", out.to_str().unwrap()]);
    assert!(!res.status.success());
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("fig9z") && err.contains("fig2a"), "{err}");
    assert!(!out.exists());
}

#[test]
fn invalid_parameters_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let res = cli(&[
        "sweep",
        "--theta",
        "0",
        "--lambda",
        "1",
        "--k",
        "1.5",
        "--t-max",
        "10",
        "--steps",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("k"));
}

#[test]
fn check_command_passes() {
    let res = cli(&["check", "--seed", "11"]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stdout)
    );
    let stdout = String::from_utf8_lossy(&res.stdout);
    assert!(stdout.lines().all(|l| l.starts_with("[PASS]")), "{stdout}");
}
