use std::io::Write;
use std::process::{Command, Output, Stdio};

use riordan::catalog::{array, ARRAY_NAMES};
use riordan::Matrix;

fn riordan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riordan")).args(args).output().unwrap()
}

fn riordan_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn show_pascal() {
    let o = riordan(&["show", "R(1/(1-t); t/(1-t))", "--rows", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("R(1 + t + t^2"));
    let table: Vec<&str> = lines.collect();
    assert_eq!(table, ["1", "1 1", "1 2 1", "1 3 3 1", "1 4 6 4 1"]);
}

#[test]
fn show_round_trips_every_catalog_array() {
    for name in ARRAY_NAMES {
        let o = riordan(&["show", name, "--rows", "7", "--order", "12"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let text = stdout(&o);
        let body: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        let parsed = Matrix::parse_text(&body).unwrap();
        assert_eq!(parsed, array(name, 12).unwrap().matrix(7).unwrap(), "{name}");
    }
}

#[test]
fn printed_array_line_feeds_the_next_command() {
    let der = riordan(&["der", "R(C; t*C)", "--order", "12", "--rows", "3"]);
    assert_eq!(der.status.code(), Some(0));
    let a = riordan_stdin(&["aseq", "-", "--order", "12"], &der.stdout);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(stdout(&a).trim(), "1, 1, 1, 1, 1, 1, 1, 1");
    let a = riordan(&["aseq", "der(der(pas))", "--order", "12"]);
    assert_eq!(stdout(&a).trim(), "1, 2, -1, 2, -5, 14, -42, 132");
}

#[test]
fn parse_error_exits_2_with_offset() {
    let o = riordan(&["show", "1/(1-"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("offset 5"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(riordan(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(riordan(&["show", "pas", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(riordan(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(riordan(&["add", "pas", "R(1/(1-t); 2*t/(1-t))"]).status.code(), Some(2));
    assert_eq!(riordan(&["show", "pas", "--order", "0"]).status.code(), Some(2));
}

#[test]
fn json_envelope() {
    let o = riordan(&["zseq", "pas + s1", "--order", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "zseq");
    assert_eq!(v["order"], 12);
    let terms: Vec<&str> =
        v["result"]["terms"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(&terms[..4], ["3/2", "1/4", "1/8", "1/16"]);
}

#[test]
fn csv_matrix() {
    let o = riordan(&["show", "cat", "--rows", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "1\n1,1\n2,2,1\n5,5,3,1\n");
}

#[test]
fn sumray_reports_recurrence() {
    let o = riordan(&["sumray", "pas", "sha", "--order", "14", "--rows", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("recurrence on the 6x6 window: holds"));
}

#[test]
fn transform_and_rowsums() {
    let o = riordan(&["transform", "der(cat)", "1/(1-2*t)", "--order", "10", "--rows", "5"]);
    assert_eq!(stdout(&o).trim(), "1, 4, 16, 64, 256");
    let o = riordan(&["transform", "fib", "1,1,1,1", "--order", "3"]);
    assert_eq!(stdout(&o).trim(), "1, 1, 2, 3");
    let o = riordan(&["rowsums", "der(der(pas))", "--order", "10", "--rows", "4"]);
    assert!(stdout(&o).starts_with("row sums: 1, 3, 8, 21\n"));
}

#[test]
fn check_suite_passes() {
    let o = riordan(&["check", "--suite", "all", "--nmax", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("19/19 identities pass\n"));
    let o = riordan(&["check", "--suite", "fibo", "--nmax", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"][0]["status"], "pass");
}
