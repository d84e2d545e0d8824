//! End-to-end checks of the `cover` binary: subcommand wiring, file
//! formats, exit codes and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cover() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cover"))
}

fn run(args: &[&str]) -> Output {
    cover().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON object")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("cover-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn gen_run_pipeline_scores_the_pentagon() {
    let file = tmp("pentagon.txt");
    let out = run(&["gen", "--kind", "pentagon", "-o", file.to_str().unwrap()]);
    assert!(out.status.success());

    let report = tmp("pentagon.json");
    let out = run(&[
        "run",
        "--algo",
        "centered",
        "--input",
        file.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["balls_opened"], 5);
    assert_eq!(json["opt"], 1);
    assert_eq!(json["ratio"]["value"], 5.0);
    assert_eq!(json["norm"], "L2");

    // the written report matches stdout
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written, json);
}

#[test]
fn identical_invocations_write_identical_reports() {
    let file = tmp("random.txt");
    let render = || {
        let out = run(&[
            "gen", "--kind", "random", "--n", "8", "--dim", "2", "--seed", "11",
            "-o", file.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let out = run(&["run", "--algo", "grid", "--input", file.to_str().unwrap()]);
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(render(), render());
}

#[test]
fn duel_reports_the_forced_counts() {
    let json = stdout_json(&run(&["duel", "--algo", "centered", "--adversary", "planar4"]));
    assert_eq!(json["balls_opened"], 4);
    assert_eq!(json["opt"], 1);

    let json = stdout_json(&run(&[
        "duel", "--algo", "centered", "--adversary", "simplex", "--dim", "5",
    ]));
    assert_eq!(json["balls_opened"], 6);

    let json = stdout_json(&run(&[
        "duel", "--algo", "lattice-square", "--adversary", "lat-square",
    ]));
    assert_eq!(json["balls_opened"], 3);
}

#[test]
fn opt_subcommand_is_exact_and_caps_size() {
    let file = tmp("three.txt");
    std::fs::write(&file, "dim 2\n0 0\n0.5 0.5\n9 9\n").unwrap();
    let json = stdout_json(&run(&["opt", "--input", file.to_str().unwrap()]));
    assert_eq!(json["count"], 2);
    assert_eq!(json["method"], "exact");

    let big = tmp("big.txt");
    let mut text = String::from("dim 2\n");
    for i in 0..30 {
        text.push_str(&format!("{} 0\n", 3 * i));
    }
    std::fs::write(&big, text).unwrap();
    let out = run(&["opt", "--input", big.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("greedy"));

    let json = stdout_json(&run(&["opt", "--input", big.to_str().unwrap(), "--greedy"]));
    assert_eq!(json["count"], 30);
    assert_eq!(json["method"], "greedy-upper-bound");
}

#[test]
fn bounds_subcommand_reports_the_table() {
    let json = stdout_json(&run(&["bounds", "--dim", "2"]));
    assert_eq!(json["newton_known"], 6);
    assert_eq!(json["centered_ratio_bound"], 5.0);
    let rankin = json["rankin_upper"].as_f64().unwrap();
    assert!(rankin > 7.0 && rankin < 7.6);
    assert_eq!(json["charikar_max_t"], 3);
}

#[test]
fn verify_partition_subcommand() {
    for lattice in ["square", "hex"] {
        let json = stdout_json(&run(&[
            "verify-partition", "--lattice", lattice, "--radius", "6",
        ]));
        assert_eq!(json["max_groups_per_unit_disk"], 3, "{lattice}");
    }
}

#[test]
fn svg_output_is_written_for_planar_matches() {
    let svg = tmp("duel.svg");
    let out = run(&[
        "duel", "--algo", "centered", "--adversary", "planar4",
        "--svg", svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&svg).unwrap();
    assert!(content.starts_with("<svg"));
    assert!(content.contains("<circle"));
}

#[test]
fn argument_and_io_errors_exit_one() {
    let out = run(&["run", "--algo", "nope", "--input", "/nonexistent"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["duel", "--algo", "centered", "--adversary", "nope"]);
    assert_eq!(out.status.code(), Some(1));

    let bad = tmp("bad.txt");
    std::fs::write(&bad, "dim 2\n1 2 3\n").unwrap();
    let out = run(&["run", "--algo", "centered", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2"));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    // lattice algorithms are planar only
    let out = run(&["duel", "--algo", "lattice-hex", "--adversary", "simplex", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("duel"));
}
