//! End-to-end tests of the binary: golden outputs, exit codes and error
//! paths.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramagram"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn table_r_csv_golden() {
    let out = run(&["table", "R", "--n", "4", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4,0,6\n4,1,18\n4,2,25\n4,3,15\n");
}

#[test]
fn table_t_csv_golden() {
    let out = run(&["table", "T", "--n", "4", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4,0,24\n4,1,46\n4,2,40\n4,3,15\n");
}

#[test]
fn table_q_single_row() {
    let out = run(&["table", "Q", "--n", "1", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1,0,1\n");
}

#[test]
fn table_psi_csv_golden() {
    let out = run(&["table", "psi", "--r-max", "2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "0,1,1\n1,1,-1;1\n1,2,1\n2,1,2;-3;1\n2,2,-5;3\n2,3,3\n"
    );
}

#[test]
fn table_cross_checks_pass() {
    for args in [
        vec!["table", "psi", "--r-max", "6", "--format", "csv", "--cross-check"],
        vec!["table", "Q", "--n", "6", "--format", "csv", "--cross-check"],
        vec!["table", "R", "--n", "5", "--format", "csv", "--cross-check"],
        vec!["table", "T", "--n", "5", "--format", "csv", "--cross-check"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn table_json_carries_schema() {
    let out = run(&["table", "Q", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn table_rejects_bad_input() {
    assert!(!run(&["table", "psi", "--format", "wat"]).status.success());
    assert!(!run(&["table", "W"]).status.success());
    assert!(!run(&["table", "R"]).status.success()); // missing --n
}

#[test]
fn derive_golden() {
    let cases = [
        (vec!["derive", "--grammar", "G_R", "--expr", "v*z", "--n", "2"], "v^3*z^3*(2 + 4*u + 3*u^2)\n"),
        (vec!["derive", "--grammar", "G_Q", "--expr", "a", "--n", "1"], "a*v*x\n"),
        (vec!["derive", "--grammar", "G_R", "--expr", "u^-1*v", "--n", "1"], "0\n"),
        (vec!["derive", "--grammar", "G_R", "--expr", "z*exp(u^-1)", "--n", "3"], "0\n"),
    ];
    for (args, expect) in cases {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out), expect, "{args:?}");
    }
}

#[test]
fn derive_reports_parse_errors() {
    let out = run(&["derive", "--grammar", "G_R", "--expr", "v*", "--n", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("error"));

    let out = run(&["derive", "--grammar", "G_R", "--expr", "w", "--n", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("unknown variable"));
}

#[test]
fn derive_accepts_grammar_files() {
    let dir = std::env::temp_dir().join("ramagram-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tree.grammar");
    std::fs::write(&path, "# tree grammar\nz -> v*z^2\nv -> u*v^2*z\nu -> u^2*v*z\n").unwrap();
    let out = run(&["derive", "--grammar", path.to_str().unwrap(), "--expr", "z", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "v^2*z^3*(2 + u)\n");
}

#[test]
fn series_golden_and_errors() {
    let out = run(&["series", "--equation", "T-eq", "--order", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1"]));

    let out = run(&["series", "--equation", "R-eq", "--order", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // 3! * (1/3 + 2/3 u + 1/2 u^2) = 2 + 4u + 3u^2
    assert_eq!(v["coefficients"][3], "1/3 + 2/3*u + 1/2*u^2");

    let out = run(&["series", "--equation", "Y-zeng-eq", "--order", "4", "--u", "1/2"]);
    assert!(out.status.success());

    // degenerate sample: the linear factor 1 - u vanishes
    let out = run(&["series", "--equation", "Y-zeng-eq", "--order", "4", "--u", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("not invertible"));

    let out = run(&["series", "--equation", "Y-zeng-eq", "--order", "4"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("--u"));

    let out = run(&["series", "--equation", "bogus", "--order", "1"]);
    assert!(!out.status.success());
}

#[test]
fn trees_histogram_and_listing() {
    let out = run(&["trees", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0,2\n1,4\n2,3\n");

    let out = run(&["trees", "--n", "3", "--list"]);
    assert_eq!(stdout(&out).lines().count(), 9);

    let out = run(&["trees", "--n", "3", "--rooted-at-1", "--list"]);
    let listing = stdout(&out);
    assert_eq!(listing.lines().count(), 3);
    assert!(listing.lines().all(|l| l.starts_with("root:1;")));
}

#[test]
fn trees_respects_the_enumeration_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramagram"))
        .args(["trees", "--n", "4"])
        .env("RG_MAX_N", "3")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(stderr(&out).contains("enumeration bound"));
}

#[test]
fn verify_single_suite_report() {
    let out = run(&["verify", "--suite", "psi-sum", "--r-max", "12"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["suite"], "psi-sum");
    assert_eq!(suites[0]["status"], "pass");
    assert!(suites[0]["elapsed_ms"].is_number());
}

#[test]
fn verify_rejects_unknown_suites() {
    let out = run(&["verify", "--suite", "nope"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("unknown suite"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["table", "psi", "--r-max", "3"],
        vec!["table", "R", "--n", "4", "--format", "json"],
        vec!["series", "--equation", "R-eq", "--order", "4"],
        vec!["trees", "--n", "4", "--list"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}
