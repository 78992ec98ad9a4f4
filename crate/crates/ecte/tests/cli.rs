//! End-to-end checks of the `ecte` binary: output content, determinism and
//! exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ecte"))
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn explore_two_fork() {
    let out = run(&["explore", &fixture("two_fork.ecte")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("route 1: length 18"));
    assert!(text.contains("route 2: length 16"));
    assert!(text.contains("cost: 34"));
}

#[test]
fn adversarial_max_and_fixed_cap() {
    let out = run(&["adversarial", &fixture("two_fork.ecte"), "--max"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("worst-case cost: 48 at first budget 14"));

    let out = run(&["adversarial", &fixture("two_fork.ecte"), "--bprime", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("length 14"));
    assert!(text.contains("length 18"));
    assert!(text.contains("length 16"));
}

#[test]
fn optimal_cost_and_routes() {
    let out = run(&["optimal", &fixture("heavy_path.ecte")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("optimal cost: 34"));

    let out = run(&[
        "optimal",
        &fixture("heavy_path.ecte"),
        "--objective",
        "routes",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("optimal route count: 2"));
}

#[test]
fn certify_and_verify_succeed_on_fixtures() {
    for cmd in ["certify", "verify"] {
        let out = run(&[cmd, &fixture("heavy_path_ties.ecte")]);
        assert!(out.status.success(), "{cmd} failed");
        assert!(stdout(&out).contains("all checks passed"));
    }
}

#[test]
fn gen_output_parses_back() {
    let out = run(&[
        "gen",
        "--family",
        "star",
        "--arms",
        "3",
        "--arm-length",
        "5",
        "--budget",
        "10",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("ECTE1 10"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn simulate_reports_recharges() {
    let out = run(&["simulate", &fixture("two_fork.ecte")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("recharges: 1"));
    assert!(text.contains("violations 0"));
}

#[test]
fn ratio_emits_csv_with_header() {
    let out = run(&["ratio", "--count", "3", "--seed", "5", "--nodes", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("digest,n,leaves,B,"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["ratio", "--count", "4", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let args = ["certify", &fixture("heavy_path.ecte")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_errors_exit_2() {
    let dir = std::env::temp_dir().join("ecte-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ecte");
    std::fs::write(&bad, "ECTE1 10\nr a 0\n").unwrap();
    let out = run(&["explore", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.join("missing.ecte");
    let out = run(&["explore", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["adversarial", &fixture("two_fork.ecte")]);
    assert_eq!(out.status.code(), Some(2)); // neither --bprime nor --max

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rearrange_auto_epsilon() {
    let out = run(&["rearrange", &fixture("heavy_path_ties.ecte")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("epsilon (auto): 1/162"));
    assert!(text.contains("feasibility-preserved"));
    assert!(text.contains("result tree:"));
}
