use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symfq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(m) => m.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn patterns_csv_for_quadratics_over_f3() {
    let o = run(&["--format", "csv", "patterns", "--q", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("1^2,6,3,"), "{out}");
    assert!(rows[2].starts_with("2^1,3,3,"), "{out}");
}

#[test]
fn deep_hole_search_finds_good_zero() {
    let v = json(&["deep-holes", "--q", "7", "--k", "3", "--d", "1", "--mode", "search", "--tail", "[0]"]);
    assert_eq!(v["result"]["subset"], serde_json::json!([2, 3, 4, 5]));
}

#[test]
fn identities_suite_exits_zero() {
    let v = json(&["verify", "--suite", "identities"]);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["schema"], serde_json::json!(1));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(run(&["field", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--field", "7", "--m", "3", "--k", "2", "--g", "E1 +* 2"]).status.code(), Some(2));
    assert_eq!(run(&["deep-holes", "--q", "7", "--k", "3", "--mode", "criteria", "--eps", "x/y"]).status.code(), Some(2));
}

#[test]
fn budget_overrun_exits_3() {
    let o = run(&["--budget", "100", "count", "--field", "7", "--m", "5", "--k", "2", "--g", "E1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn count_is_byte_stable_across_shards() {
    let base = ["count", "--field", "11", "--m", "4", "--k", "2", "--g", "E1 + 2*E2"];
    let one = run(&[&["--shards", "1"][..], &base].concat());
    let four = run(&[&["--shards", "4"][..], &base].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn reports_carry_no_floats() {
    for args in [
        &["count", "--field", "11", "--m", "5", "--k", "2", "--g", "E1 + 2*E2"][..],
        &["bounds", "--q", "11", "--m", "5", "--k", "2", "--delta", "2", "--big-d", "1"],
        &["patterns", "--q", "5", "--n", "3", "--prescribe", "a2=1"],
        &["deep-holes", "--q", "331", "--k", "10", "--d", "3", "--mode", "criteria"],
        &["subdisc", "--m", "3", "--j", "1"],
    ] {
        assert!(no_floats(&json(args)), "{args:?}");
    }
}
