//! End-to-end tests driving the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

fn subseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Every structured line is a record kind followed by key=value tokens;
/// parsing and re-serializing must reproduce the line exactly.
fn assert_round_trips(stdout: &str) {
    for line in stdout.lines() {
        let mut tokens = line.split_whitespace();
        let kind = tokens.next().expect("record kind");
        assert!(!kind.contains('='), "kind {kind:?} looks like a field");
        let mut rebuilt = kind.to_string();
        for token in tokens {
            let (key, value) = token
                .split_once('=')
                .unwrap_or_else(|| panic!("token {token:?} in {line:?} is not key=value"));
            rebuilt.push(' ');
            rebuilt.push_str(key);
            rebuilt.push('=');
            rebuilt.push_str(value);
        }
        assert_eq!(rebuilt, line);
    }
}

#[test]
fn check_worked_examples() {
    let out = subseq(&["check", "010", "00"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "1");

    let out = subseq(&["check", "120021", "211", "--m", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "0");

    let out = subseq(&["check", "0101", ""]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "1");

    let out = subseq(&["check", "0110", "11", "--contiguous"]);
    assert_eq!(stdout_of(&out).trim(), "1");
    let out = subseq(&["check", "1010", "11", "--contiguous"]);
    assert_eq!(stdout_of(&out).trim(), "0");
}

#[test]
fn check_rejects_malformed_input() {
    let out = subseq(&["check", "01a", "0"]);
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("01a"));

    // symbol above the declared alphabet
    let out = subseq(&["check", "012", "0", "--m", "1"]);
    assert!(!out.status.success());
}

#[test]
fn check_structured_round_trips() {
    let out = subseq(&[
        "--format",
        "structured",
        "check",
        "120021",
        "211",
        "--m",
        "2",
    ]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert_round_trips(&stdout);
    assert!(stdout.contains("check"));
    assert!(stdout.contains("verdict=0"));
}

#[test]
fn protocol_single_run_trivial() {
    let out = subseq(&["protocol", "trivial", "010", "00", "natural"]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert_round_trips(&stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("msg ")).count(), 3);
    let summary = stdout.lines().last().unwrap();
    assert!(summary.contains("output=1"));
    assert!(summary.contains("cost=3"));
}

#[test]
fn protocol_rejects_unsupported_partition() {
    let out = subseq(&["protocol", "trivial", "010", "00", "ABABA"]);
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("partition"));
}

#[test]
fn protocol_iterative_arbitrary_partition() {
    let out = subseq(&["protocol", "iterative", "101010", "111", "ABABABABA"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).lines().last().unwrap().contains("output=1"));
}

#[test]
fn protocol_rejects_contiguous_iterative() {
    let out = subseq(&[
        "protocol",
        "iterative",
        "0110",
        "11",
        "natural",
        "--contiguous",
    ]);
    assert!(!out.status.success());
}

#[test]
fn protocol_sweep_structured() {
    let out = subseq(&[
        "--format",
        "structured",
        "protocol",
        "iterative",
        "--sweep",
        "--n",
        "4",
        "--k",
        "2",
        "--partitions",
        "all",
    ]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert_round_trips(&stdout);
    assert!(stdout.contains("mismatches=0"));
    assert!(stdout.contains("partitions=64"));
}

#[test]
fn protocol_sweep_is_deterministic_across_workers() {
    let run = |workers: &str| {
        let out = subseq(&[
            "--workers",
            workers,
            "protocol",
            "iterative",
            "--sweep",
            "--n",
            "4",
            "--k",
            "2",
            "--partitions",
            "random:16",
            "--seed",
            "9",
        ]);
        assert!(out.status.success());
        stdout_of(&out)
    };
    assert_eq!(run("1"), run("2"));
}

#[test]
fn reduce_constructions() {
    let out = subseq(&["reduce", "ind", "101", "2"]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert!(stdout.contains("x' = 011001"));
    assert!(stdout.contains("y' = 0011"));

    let out = subseq(&["reduce", "disj", "1000", "0100"]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert!(stdout.contains("x' = 100010000000"));
    assert!(stdout.contains("y' = 1010"));

    // mismatched weights are rejected
    let out = subseq(&["reduce", "disj", "1000", "0110"]);
    assert!(!out.status.success());
}

#[test]
fn verify_reduction_reports() {
    let out = subseq(&["verify-reduction", "ind", "--k", "8"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("2048/2048"));

    let out = subseq(&[
        "--format",
        "structured",
        "verify-reduction",
        "disj",
        "--n",
        "6",
        "--k",
        "2",
    ]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert_round_trips(&stdout);
    assert!(stdout.contains("cases=225"));
    assert!(stdout.contains("mismatches=0"));
}

#[test]
fn matrix_rank_dump_and_bounds() {
    let out = subseq(&["matrix", "--n", "3", "--k", "2", "--rank"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "rank = 4");

    let out = subseq(&["matrix", "--n", "3", "--k", "2"]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert_eq!(stdout.lines().next().unwrap(), "3 2 1 8 4");
    assert_eq!(stdout.lines().count(), 9);

    let out = subseq(&[
        "--format",
        "structured",
        "matrix",
        "--n",
        "10",
        "--k",
        "3",
        "--bounds",
        "--triangular",
    ]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert_round_trips(&stdout);
    assert!(stdout.contains("logrank_lb=3"));
    assert!(stdout.contains("trivial_ub=4"));
    assert!(stdout.contains("binomial=120"));
    assert!(stdout.contains("triangular"));
}

#[test]
fn matrix_budget_and_alphabet_guards() {
    let out = subseq(&["matrix", "--n", "20", "--k", "10"]);
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("budget"));

    // a non-binary alphabet must fit the text length
    let out = subseq(&["matrix", "--n", "2", "--k", "1", "--m", "3"]);
    assert!(!out.status.success());
}

#[test]
fn vcdim_search_and_construct() {
    let out = subseq(&["vcdim", "search", "--k", "2", "--n", "3"]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert!(stdout.contains("max shattered size = 2 (proved maximal)"));
    assert!(stdout.contains("001"));
    assert!(stdout.contains("011"));

    let out = subseq(&[
        "--format",
        "structured",
        "vcdim",
        "search",
        "--k",
        "2",
        "--n",
        "3",
    ]);
    let stdout = stdout_of(&out);
    assert_round_trips(&stdout);
    assert!(stdout.contains("max=2 exhaustive=1"));

    let out = subseq(&["vcdim", "construct", "--k", "5"]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert!(stdout.contains("10100101"));
    assert!(stdout.contains("10011001"));
    assert!(stdout.contains("shattering verified: yes"));
}

#[test]
fn vcdim_verify_witness_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    std::fs::File::create(&good)
        .unwrap()
        .write_all(b"11000101\n01110010\n10011010\n10110011\n")
        .unwrap();
    let out = subseq(&[
        "vcdim",
        "verify",
        "--k",
        "5",
        "--set",
        good.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("shattered"));

    let bad = dir.path().join("bad.txt");
    std::fs::File::create(&bad)
        .unwrap()
        .write_all(b"000\n001\n")
        .unwrap();
    let out = subseq(&[
        "vcdim",
        "verify",
        "--k",
        "2",
        "--set",
        bad.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(stdout_of(&out).contains("not shattered"));
}

#[test]
fn every_subcommand_round_trips_in_structured_mode() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.txt");
    std::fs::File::create(&witness)
        .unwrap()
        .write_all(b"001\n011\n")
        .unwrap();
    let witness = witness.to_str().unwrap();

    let invocations: Vec<Vec<&str>> = vec![
        vec!["check", "010", "00"],
        vec!["protocol", "trivial", "010", "00", "natural"],
        vec!["protocol", "trivial", "--sweep", "--n", "3", "--k", "2"],
        vec!["reduce", "ind", "101", "2"],
        vec!["reduce", "disj", "10", "01"],
        vec!["verify-reduction", "ind", "--k", "4"],
        vec!["verify-reduction", "disj", "--n", "4", "--k", "1"],
        vec![
            "matrix",
            "--n",
            "3",
            "--k",
            "2",
            "--rank",
            "--triangular",
            "--bounds",
        ],
        vec!["vcdim", "search", "--k", "2", "--n", "3"],
        vec!["vcdim", "construct", "--k", "5"],
        vec!["vcdim", "verify", "--k", "2", "--set", witness],
    ];
    for invocation in invocations {
        let mut args = vec!["--format", "structured"];
        args.extend(&invocation);
        let out = subseq(&args);
        assert!(out.status.success(), "failed: {invocation:?}");
        let stdout = stdout_of(&out);
        assert!(!stdout.trim().is_empty(), "no output: {invocation:?}");
        assert_round_trips(&stdout);
    }
}

#[test]
fn search_writes_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.txt");
    let out = subseq(&[
        "vcdim",
        "search",
        "--k",
        "2",
        "--n",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, "001\n011\n");

    // the written file verifies
    let out = subseq(&[
        "vcdim",
        "verify",
        "--k",
        "2",
        "--set",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
}
