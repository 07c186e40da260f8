use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn seqaccel(args: &[&str], env_tol: Option<&str>, stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_seqaccel"));
    cmd.args(args).env_remove("SEQACCEL_TOL");
    if let Some(t) = env_tol {
        cmd.env("SEQACCEL_TOL", t);
    }
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    seqaccel(args, None, None)
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn constant_file_gives_its_value() {
    let f = file("n,value\n0,5\n1,5\n2,5\n3,5\n");
    let v = json(&run(&["transform", "--method", "epsilon", "--input", path(&f), "--format", "json"]));
    assert_eq!(v["report"]["estimate"], 5.0);
    assert_eq!(v["method"], "epsilon");
    assert_eq!(v["columns"][1]["auxiliary"], true);
}

#[test]
fn stdin_input() {
    let out = seqaccel(
        &["transform", "--method", "aitken_iterated", "--input", "-", "--format", "json"],
        None,
        Some("n,value\n0,1\n1,1.5\n2,1.75\n3,1.875\n4,1.9375\n"),
    );
    assert_eq!(json(&out)["report"]["estimate"], 2.0);
}

#[test]
fn json_tableau_round_trips() {
    let f = file("n,value\n0,-75.943944441\n1,-75.945112888\n2,-75.945528271\n3,-75.945641947\n4,-75.945676982\n");
    let first = run(&["transform", "--method", "rho_standard", "--input", path(&f), "--format", "json"]);
    let v = json(&first);
    let again = file(std::str::from_utf8(&first.stdout).unwrap());
    let w = json(&run(&["transform", "--method", "rho_standard", "--input", path(&again), "--format", "json"]));
    assert_eq!(v["columns"][0], w["columns"][0]);
    assert_eq!(v["columns"][0]["entries"][0]["value"], -75.943944441);
    assert_eq!(v, w);
}

#[test]
fn tolerance_precedence() {
    let args = ["transform", "--method", "epsilon", "--fixture", "table1", "--format", "json"];
    let tol = |out: &Output| json(out)["params"]["breakdown_tol"].as_f64().unwrap();
    assert_eq!(tol(&seqaccel(&args, None, None)), 1e-13);
    assert_eq!(tol(&seqaccel(&args, Some("1e-9"), None)), 1e-9);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--tol", "1e-5"]);
    assert_eq!(tol(&seqaccel(&with_flag, Some("1e-9"), None)), 1e-5);
    assert_eq!(seqaccel(&args, Some("abc"), None).status.code(), Some(2));
}

#[test]
fn exit_statuses() {
    let cases: [(&[&str], i32); 7] = [
        (&["transform", "--method", "osada", "--fixture", "table1"], 2),
        (&["transform", "--method", "bogus", "--fixture", "table1"], 2),
        (&["transform", "--method", "epsilon", "--points", "linear", "--fixture", "table1"], 2),
        (&["zeta", "--z", "1"], 2),
        (&["transform", "--method", "epsilon", "--input", "/definitely/not/here.csv"], 3),
        (&["zeta", "--z", "2", "--k", "16"], 5),
        (&["reproduce", "--table", "4"], 6),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if code != 6 {
            assert!(!out.stderr.is_empty());
        }
    }
}

#[test]
fn malformed_csv_reports_the_line() {
    let f = file("n,value\n0,1\n1,2\n2,oops\n");
    let out = run(&["classify", "--input", path(&f)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn classify_and_oligomer_commands() {
    let v = json(&run(&["classify", "--fixture", "table1-av", "--format", "json"]));
    assert_eq!(v["kind"]["kind"], "logarithmic");
    let v = json(&run(&["oligomer", "--fixture", "table1", "--format", "json"]));
    assert!((v["estimate"].as_f64().unwrap() - -75.945694653).abs() < 3e-9);

    let table = file("N,E_total\n1,-1\n2,-2\n");
    assert_eq!(run(&["oligomer", "--input", path(&table)]).status.code(), Some(5));
}

#[test]
fn zeta_table_output() {
    let out = run(&["zeta", "--z", "1.01"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("total           100.5779433384"), "{text}");
}

#[test]
fn reproduce_tables_that_match() {
    for table in ["1", "2", "3", "zeta"] {
        let out = run(&["reproduce", "--table", table]);
        assert_eq!(out.status.code(), Some(0), "table {table}");
    }
    let v = json(&run(&["reproduce", "--table", "2", "--format", "json"]));
    assert_eq!(v["all_match"], true);
    assert!(v["tables"][0]["cells"].as_array().map_or(false, |a| a.len() == 25));
}
