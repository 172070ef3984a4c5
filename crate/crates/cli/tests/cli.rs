use std::process::Command;

use qramanujan_cli::{Report, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qramanujan"))
}

fn run_json(args: &[&str]) -> (i32, Report, String) {
    let out = bin()
        .args(args)
        .args(["--format", "json"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    (out.status.code().unwrap(), report, text)
}

#[test]
fn modsun_sweep_passes() {
    let (code, report, _) =
        run_json(&["verify-congruence", "--which", "modsun", "--odd-n", "1..99"]);
    assert_eq!(code, 0);
    assert_eq!(report.cases.len(), 50);
    assert_eq!(report.totals.pass, 50);
}

#[test]
fn wz_grid_passes() {
    let (code, report, _) = run_json(&["verify-wz", "--pair", "J2", "--max-n", "20"]);
    assert_eq!(code, 0);
    assert_eq!(report.cases.len(), (0..=20).map(|n| n + 2).sum::<usize>());
}

#[test]
fn eval_reports_tight_bound() {
    let (code, report, _) = run_json(&["eval", "--identity", "a1", "--q", "1/2", "--digits", "50"]);
    assert_eq!(code, 0);
    let case = &report.cases[0];
    assert_eq!(case.status, Status::Pass);
    let bound: f64 = case.bound.as_deref().unwrap().parse().unwrap();
    assert!(bound <= 1e-50);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let args = ["verify-identity", "whipple", "--n", "1..15"];
    let (_, report, text) = run_json(&args);
    let mut again = serde_json::to_string_pretty(&report).unwrap();
    again.push('\n');
    assert_eq!(again, text);
    let (_, second, _) = run_json(&args);
    let strip = |mut r: Report| {
        r.elapsed_ms = 0;
        r
    };
    assert_eq!(strip(report), strip(second));
}

#[test]
fn totals_match_cases() {
    let (code, report, _) = run_json(&["verify-congruence", "--which", "L2", "--odd-n", "13..15"]);
    // 15 is not a prime power and is skipped, which is not a pass.
    assert_eq!(code, 1);
    assert_eq!(report.totals.pass, 1);
    assert_eq!(report.totals.skipped, 1);
    let count = |s| report.cases.iter().filter(|c| c.status == s).count() as u64;
    assert_eq!(count(Status::Pass), report.totals.pass);
    assert_eq!(count(Status::Skipped), report.totals.skipped);
}

#[test]
fn forced_modular_path_on_composite_is_ill_posed() {
    let (code, report, _) = run_json(&[
        "verify-congruence",
        "--which",
        "J2",
        "--odd-n",
        "15..15",
        "--path",
        "modular",
    ]);
    assert_eq!(code, 1);
    assert_eq!(report.cases[0].status, Status::IllPosed);
}

#[test]
fn usage_errors_exit_two() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["verify-sun", "--primes", "9..x"]), 2);
    assert_eq!(code(&["eval", "--identity", "a1", "--q", "3/2"]), 2);
    assert_eq!(code(&["limit", "--target", "pi1", "--j", "1..4"]), 2);
    assert_eq!(
        code(&[
            "verify-sun",
            "--primes",
            "5..7",
            "--out",
            "/nonexistent-dir/report.json"
        ]),
        2
    );
}

#[test]
fn writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sun.txt");
    let status = bin()
        .args(["verify-sun", "--primes", "5..13", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("SUN p=5"));
    assert!(text.contains("difference=-125/32 valuation=3"));
    assert!(text.contains("pass=4"));
}

#[test]
fn limit_scan_reports_points() {
    let (code, report, _) =
        run_json(&["limit", "--target", "pi2", "--j", "4..8", "--digits", "20"]);
    assert_eq!(code, 0);
    assert_eq!(report.cases.len(), 6);
    assert!(report
        .cases
        .last()
        .unwrap()
        .label
        .contains("strictly decreasing"));
}

#[test]
fn classical_series() {
    let (code, report, _) = run_json(&["eval", "--identity", "pi2"]);
    assert_eq!(code, 0);
    assert_eq!(report.cases[0].label, "PI2 digits=40");
}
