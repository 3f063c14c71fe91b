use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_minexp-lab"));
    c.env_remove("MINEXP_LAB_JOBS");
    c
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn lct_from_flags() {
    let o = bin().args(["lct", "--pairs", "[[1,0],[2,1],[3,2],[6,4]]"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["lct"], "5/6");
    assert_eq!(v["status"], "PASS");
}

#[test]
fn run_config_file() {
    let path = scratch("minexp.json");
    std::fs::write(&path, r#"{"command":"minexp","model":{"n":2,"exponents":[1,1]}}"#).unwrap();
    let o = bin().arg("run").arg(&path).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["minexp"], "1");
}

#[test]
fn verify_thm42_small() {
    let o = bin()
        .args(["verify-thm42", "--model", r#"{"n":1,"exponents":[2]}"#, "--alpha", "all-jumps", "--pmax", "2", "--box", "6"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["result"]["box"]["required"], 4);
    assert_eq!(v["result"]["box"]["sufficient"], true);
}

#[test]
fn csv_and_out() {
    let path = scratch("cor51.csv");
    let o = bin()
        .args(["verify-cor51", "--model", r#"{"n":2,"exponents":[2,3]}"#, "--box", "3", "--format", "csv", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("name,status,inputs,witness"));
    assert!(text.lines().skip(1).all(|l| l.contains(",PASS,")));
}

#[test]
fn input_errors_exit_1() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["minexp", "--model", "{not json"],
        vec!["minexp", "--model", r#"{"n":1,"exponents":[0]}"#],
        vec!["lct"],
        vec!["verify-cor23", "--model", r#"{"n":1,"exponents":[2]}"#, "--alpha", "1"],
        vec!["run"],
        vec!["run", "/nonexistent/config.json"],
        vec!["psi-dims", "--alpha", "3/2", "--model", r#"{"n":1,"exponents":[2]}"#],
    ];
    for args in cases {
        let o = bin().args(&args).output().unwrap();
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = bin().arg("frobnicate").output().unwrap();
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn malformed_config_exit_1() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"command":"minexp","unknown":true}"#).unwrap();
    let o = bin().arg("run").arg(&path).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn jobs_env_overrides_flag() {
    let args = ["jumps", "--model", r#"{"n":2,"exponents":[2,3]}"#, "--jobs", "2"];
    let o = bin().args(args).env("MINEXP_LAB_JOBS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let a = bin().args(args).env("MINEXP_LAB_JOBS", "1").output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
