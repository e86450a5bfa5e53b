//! End-to-end tests of the command-line surface: payload shapes, exit
//! codes, determinism, and the experiment runner.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stardecomp"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &Path, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn k5_edges() -> String {
    let mut s = String::new();
    for u in 0..5 {
        for v in u + 1..5 {
            s.push_str(&format!("{u} {v}\n"));
        }
    }
    s
}

fn c9_edges() -> String {
    let mut s = String::new();
    for v in 0..9usize {
        s.push_str(&format!("{v} {}\n{v} {}\n", (v + 1) % 9, (v + 2) % 9));
    }
    s
}

#[test]
fn moments_payload_carries_exact_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["moments", "--n", "3", "--j", "2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["E_Y"]["exact"], "256/77");
    assert_eq!(v["E_Y2"]["exact"], "5888/385");
    assert_eq!(v["E_YXj"]["exact"], "3456/385");
    assert_eq!(v["ratio2"]["exact"], "1771/1280");
    let limit = v["ratio2"]["limit"].as_f64().unwrap();
    assert!((limit - 1.224744871391589).abs() < 1e-12);
}

#[test]
fn decompose_k5_exits_one_with_divisibility_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k5.edges", &k5_edges());
    let out = run_in(dir.path(), &["decompose", "--graph", "k5.edges"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["decomposable"], false);
    assert!(v["reason"].as_str().unwrap().contains("divisible"));
}

#[test]
fn decompose_circulant_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c9.edges", &c9_edges());
    let out = run_in(dir.path(), &["decompose", "--graph", "c9.edges"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["decomposable"], true);
    assert_eq!(v["verified"], true);
    assert_eq!(v["decomposition"].as_array().unwrap().len(), 6);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_required_argument_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["decompose"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_in(dir.path(), &["sample", "--n", "5", "--d", "4", "--count", "3", "--seed", "11"]);
    let b = run_in(dir.path(), &["sample", "--n", "5", "--d", "4", "--count", "3", "--seed", "11"]);
    let c = run_in(dir.path(), &["sample", "--n", "5", "--d", "4", "--count", "3", "--seed", "12"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["cycles", "--n", "120", "--reps", "200", "--jmax", "2", "--seed", "5"];
    let one = bin().current_dir(dir.path()).args(args).args(["--threads", "1"]).output().unwrap();
    let four = bin().current_dir(dir.path()).args(args).args(["--threads", "4"]).output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn cycles_csv_has_the_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["cycles", "--n", "60", "--reps", "120", "--jmax", "2", "--format", "csv"],
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,lambda_theory,mean,stderr,dispersion"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn exhaustive_count_confirms_all_identities() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["count", "--exhaustive", "--n", "3", "--jmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["all_match"], true);
    assert_eq!(v["fast_brute_mismatches"], 0);
    assert_eq!(v["pairings"], 10395);
}

#[test]
fn gallery_verdicts_all_match() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["gallery"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["all_match_expected"], true);
    assert_eq!(v["graphs"].as_array().unwrap().len(), 4);
}

#[test]
fn out_flag_writes_the_payload_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["moments", "--n", "3", "--out", "m.json"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("m.json")).unwrap()).unwrap();
    assert_eq!(v["E_Y"]["exact"], "256/77");
}

#[test]
fn experiment_appends_jsonl_records() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "suite.conf",
        "# two quick runs\nmoments-small = moments --n 3\ngallery-check = gallery\n",
    );
    let out = run_in(dir.path(), &["experiment", "--config", "suite.conf", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let log = std::fs::read_to_string(dir.path().join("results.jsonl")).unwrap();
    let records: Vec<serde_json::Value> = log
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["label"], "moments-small");
    assert_eq!(records[0]["status"], "ok");
    assert_eq!(records[0]["results"]["E_Y"]["exact"], "256/77");
    assert_eq!(records[0]["seed"], 3);
    assert_eq!(records[1]["command"], "gallery");

    // idempotent re-run appends
    let again = run_in(dir.path(), &["experiment", "--config", "suite.conf"]);
    assert_eq!(again.status.code(), Some(0));
    let log2 = std::fs::read_to_string(dir.path().join("results.jsonl")).unwrap();
    assert_eq!(log2.lines().count(), 4);
}

#[test]
fn experiment_empty_config_is_a_no_op() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "empty.conf", "# nothing here\n\n");
    let out = run_in(dir.path(), &["experiment", "--config", "empty.conf"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!dir.path().join("results.jsonl").exists() || {
        std::fs::read_to_string(dir.path().join("results.jsonl")).unwrap().is_empty()
    });
}

#[test]
fn experiment_malformed_config_lists_the_line() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.conf", "ok-line = gallery\nbroken line without equals\n");
    let out = run_in(dir.path(), &["experiment", "--config", "bad.conf"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
    // nothing ran
    assert!(!dir.path().join("results.jsonl").exists());
}

#[test]
fn experiment_records_domain_failures() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k5.edges", &k5_edges());
    write(dir.path(), "fail.conf", "k5-run = decompose --graph k5.edges\n");
    let out = run_in(dir.path(), &["experiment", "--config", "fail.conf"]);
    assert_eq!(out.status.code(), Some(1));
    let log = std::fs::read_to_string(dir.path().join("results.jsonl")).unwrap();
    let record: serde_json::Value = serde_json::from_str(log.lines().next().unwrap()).unwrap();
    assert_eq!(record["status"], "fail");
}

#[test]
fn trend_subcommand_reports_fractions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["decompose", "--random-n", "9", "--samples", "20", "--seed", "4"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["samples"], 20);
    let f = v["fraction"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&f));
}

#[test]
fn verify_conditioning_reports_three_conditions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "verify-conditioning",
            "--J", "50",
            "--n", "30",
            "--mc-n", "300",
            "--reps", "200",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["condition1"]["ok"], true);
    assert!(v["condition2"]["max_rel_gap"].as_f64().unwrap() < 0.5);
    assert_eq!(v["condition3"]["all_deltas_above_minus_one"], true);
    let exp_err = v["condition3"]["exp_abs_error"].as_f64().unwrap();
    assert!(exp_err < 1e-14);
}

#[test]
fn count_crosscheck_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["count", "--crosscheck", "25", "--n", "6", "--seed", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["mismatches"], 0);
}
