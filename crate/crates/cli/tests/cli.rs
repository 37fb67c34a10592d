//! Runs the built binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn trigsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigsum"))
        .args(args)
        .env_remove("TRIGSUM_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn sum_cosecant() {
    let o = trigsum(&["sum", "I", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("3, 2.30940107675850305803659512"));
}

#[test]
fn sum_series_reports_tail() {
    let o = trigsum(&["sum", "E", "1"]);
    let line = stdout(&o);
    let parts: Vec<_> = line.trim().split(", ").collect();
    assert_eq!(parts[0], "1");
    assert!(parts[1].starts_with("0.693147180559"));
    let tail: f64 = parts[2].strip_prefix("tail <= ").unwrap().parse().unwrap();
    assert!(tail > 0.0 && tail <= 1e-12);

    let o = trigsum(&["sum", "C", "1..4", "--tol", "1e-10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().next().unwrap().starts_with("1, -0.13033070"));
}

#[test]
fn sum_formats() {
    let o = trigsum(&["sum", "kou", "1..3", "--format", "csv"]);
    assert_eq!(stdout(&o), "p,value,tail_bound\n1,-2,\n2,2,\n3,-4,\n");
    let o = trigsum(&["sum", "secant4", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v[0]["value"].as_str().unwrap().starts_with("17.7777777777"));
    assert!(v[0].get("tail_bound").is_none());
}

#[test]
fn digits_select_precision() {
    let short = trigsum(&["--digits", "15", "sum", "I", "3"]);
    assert_eq!(stdout(&short).trim(), "3, 2.3094010767585");
    let long = Command::new(env!("CARGO_BIN_EXE_trigsum"))
        .args(["sum", "I", "3"])
        .env("TRIGSUM_DIGITS", "50")
        .output()
        .unwrap();
    let value = stdout(&long).trim().split(", ").nth(1).unwrap().to_string();
    assert!(value.starts_with("2.30940107675850305803659512200782982259040700508"));
    assert!(value.len() > 45);
    assert_eq!(trigsum(&["--digits", "10", "sum", "I", "3"]).status.code(), Some(2));
    assert_eq!(trigsum(&["--digits", "61", "sum", "I", "3"]).status.code(), Some(2));
}

#[test]
fn expand_examples() {
    let o = trigsum(&["expand", "I", "3", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!((field(&t, "lower") - 2.3090474).abs() < 5e-7);
    assert!((field(&t, "upper") - 2.3381362).abs() < 5e-7);

    let t = stdout(&trigsum(&["expand", "C", "1", "--m", "1"]));
    assert!((field(&t, "lower") + 0.13708).abs() < 5e-6);
    assert!(field(&t, "upper").abs() < 1e-30);

    let t = stdout(&trigsum(&["expand", "H", "10", "--m", "3"]));
    let h10 = 7381.0 / 2520.0;
    assert!(field(&t, "lower") < h10 && h10 < field(&t, "upper"));
}

#[test]
fn expand_errors() {
    assert_eq!(trigsum(&["expand", "I", "3", "--n", "9"]).status.code(), Some(3));
    assert_eq!(trigsum(&["expand", "I", "3", "--m", "1"]).status.code(), Some(2));
    assert_eq!(trigsum(&["expand", "C", "0"]).status.code(), Some(2));
    assert_eq!(trigsum(&["expand", "Q", "3"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = trigsum(&["verify", "identities", "1..200"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("check_id,p,passed,margin,lhs,rhs\n"));
    assert_eq!(text.lines().count(), 1 + 12 * 200);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("true")));

    let o = trigsum(&["verify", "bounds", "1..1000", "--n", "0,1"]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(trigsum(&["verify", "all", "0..5"]).status.code(), Some(2));
    assert_eq!(trigsum(&["verify", "bounds", "1..5", "--n", "4"]).status.code(), Some(2));

    let o = trigsum(&["verify", "bounds", "1..3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_asserted_pass"], true);
    assert_eq!(v["summary"]["chen_small_p"]["unasserted"], 2);
}

#[test]
fn verify_all_is_byte_identical() {
    let a = trigsum(&["verify", "all", "1..100"]);
    let b = trigsum(&["verify", "all", "1..100"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file() {
    let path: PathBuf = std::env::temp_dir().join(format!("trigsum-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let o = trigsum(&["verify", "bounds", "3..4", "--n", "0", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.starts_with("check_id,p,passed,margin,lhs,rhs\n"));
    assert_eq!(written.lines().count(), 1 + 2 * 6);
}
