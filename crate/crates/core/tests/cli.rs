use std::process::{Command, Output};

use serde_json::Value;

fn tinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tinv")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = tinv(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn t_pullback_methods_agree() {
    for method in ["closed", "series", "tbar"] {
        let v = json(&["--json", "t-pullback", "--c", "40", "--k", "4", "--method", method]);
        assert_eq!((v["num"].as_i64(), v["den"].as_i64(), v["modulo"].as_i64()), (Some(5), Some(28), Some(1)));
    }
    let out = tinv(&["t-pullback", "--c", "33", "--k", "3"]);
    assert_eq!(stdout(&out).trim(), "1/15 (mod 1)");
}

#[test]
fn invalid_input_exits_2_on_stderr() {
    let out = tinv(&["t-pullback", "--c", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("k must be at least 2"));
    assert_eq!(tinv(&["exotic", "--n", "3", "--p", "1", "--demo"]).status.code(), Some(2));
}

#[test]
fn fg_check_reports_failing_j() {
    let v = json(&["fg-check", "--c", "2", "--k", "2"]);
    assert_eq!(v["admissible"], Value::Bool(false));
    assert_eq!(v["failing_j"].as_i64(), Some(2));
    let v = json(&["fg-check", "--c", "441", "--k", "12"]);
    assert_eq!(v["admissible"], Value::Bool(true));
}

#[test]
fn pn_prints_discrepancy() {
    let text = stdout(&tinv(&["pn", "--n", "3", "--k", "1"]));
    assert!(text.contains("gwz_discrepancy = 2/3 (mod 1)"), "{text}");
}

#[test]
fn coboundary_from_file() {
    let path = std::env::temp_dir().join(format!("tinv-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"lambda":[[2]],"p":[2]}"#).unwrap();
    let v = json(&["--json", "coboundary", "--file", path.to_str().unwrap(), "--x", "1"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v["group"], serde_json::json!([2]));
    assert_eq!((v["t"]["num"].as_i64(), v["t"]["den"].as_i64()), (Some(1), Some(16)));
    assert_eq!((v["q"]["num"].as_i64(), v["q"]["den"].as_i64()), (Some(3), Some(4)));
}

#[test]
fn classify_verdicts() {
    let v = json(&["--json", "classify", "--a", "sphere-bundle:2,2", "--b", "sphere-bundle:2,4"]);
    assert_eq!(v["verdict"], "distinct");
    let v = json(&["--json", "classify", "--a", "pn:3", "--b", "sphere-bundle:3,3"]);
    assert_eq!(v["verdict"], "almost_diffeomorphic_only");
}

#[test]
fn bun_lists_twelve_per_class() {
    let v = json(&["bun", "--spec", "sphere-bundle:3,1"]);
    let n = v.as_array().map(Vec::len).or_else(|| v["classes"].as_array().map(Vec::len));
    assert_eq!(n, Some(36), "{v}");
}

#[test]
fn exotic_demo_recovers_ks() {
    let v = json(&["--json", "exotic", "--n", "4", "--p", "2", "--demo"]);
    assert_eq!(v["ks_identity"], "0");
    assert_eq!(v["ks_pinch_twist"], "1");
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "sphere-bundle", "--n", "7", "--p", "3", "--k", "2"];
    assert_eq!(tinv(&args).stdout, tinv(&args).stdout);
}
