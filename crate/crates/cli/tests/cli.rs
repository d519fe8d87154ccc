use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn autocomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autocomm"))
        .args(args)
        .env_remove("AUTOCOMM_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_cyclic_four_distribution() {
    let o = autocomm(&[
        "analyze", "--group", "cyclic:4", "--all-g", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pr"], "3/4");
    let d = &v["distribution"];
    assert_eq!(d["0"], "3/4");
    assert_eq!(d["2"], "1/4");
    assert_eq!(d["1"], "0/1");
    assert_eq!(d["3"], "0/1");
}

#[test]
fn analyze_symmetric_three_bounds_hold() {
    let o = autocomm(&[
        "analyze",
        "--group",
        "symmetric:3",
        "--bounds",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pr"], "1/2");
    let bounds = v["bounds"].as_array().unwrap();
    assert!(!bounds.is_empty());
    assert!(bounds.iter().all(|b| b["holds"] != Value::Bool(false)));
}

#[test]
fn analyze_table_output() {
    let o = autocomm(&["analyze", "--group", "dicyclic:2", "--characterize"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Q8"));
    assert!(out.contains("3/8"));
    assert!(out.contains("C1"));
}

#[test]
fn violated_bound_exits_two() {
    // the closing chain value exceeds Pr(Z3) itself
    let o = autocomm(&["analyze", "--group", "cyclic:3", "--bounds"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("B10-chain"));
}

#[test]
fn corrupt_table_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    // Latin square with identity 0 that is not associative
    fs::write(
        &path,
        r#"{"name": "bad", "order": 5, "table": [
            [0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#,
    )
    .unwrap();
    let spec = format!("file:{}", path.display());
    let o = autocomm(&["analyze", "--group", &spec]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("associative"), "{}", stderr(&o));
}

#[test]
fn table_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z3.json");
    fs::write(
        &path,
        r#"{"name": "C3", "order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#,
    )
    .unwrap();
    let spec = format!("file:{}", path.display());
    let o = autocomm(&["analyze", "--group", &spec, "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group"], "C3");
    assert_eq!(v["pr"], "2/3");
}

#[test]
fn bad_spec_and_csv_analyze_exit_one() {
    assert_eq!(
        autocomm(&["analyze", "--group", "cyclic:x"]).status.code(),
        Some(1)
    );
    assert_eq!(
        autocomm(&["analyze", "--group", "dicyclic:1"])
            .status
            .code(),
        Some(1)
    );
    let o = autocomm(&["analyze", "--group", "cyclic:4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn order_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_autocomm"))
        .args(["analyze", "--group", "cyclic:12"])
        .env("AUTOCOMM_MAX_ORDER", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn survey_up_to_eight() {
    let o = autocomm(&["survey", "--max-order", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut rdr = csv_rows(&out);
    let header = rdr.remove(0);
    assert_eq!(&header[..3], ["name", "order", "aut_order"]);
    let order8: Vec<&str> = rdr
        .iter()
        .filter(|r| r[1] == "8")
        .map(|r| r[0].as_str())
        .collect();
    assert_eq!(order8, ["D4", "Q8", "Z2^3", "Z2xZ4", "Z8"]);
    let orders: Vec<usize> = rdr.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(orders.windows(2).all(|w| w[0] <= w[1]));
    let z4 = rdr.iter().find(|r| r[0] == "Z4").unwrap();
    let b6_eq = header.iter().position(|h| h == "b6_equality").unwrap();
    assert_eq!(z4[b6_eq], "true");
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn survey_of_one_is_trivial() {
    let o = autocomm(&["survey", "--max-order", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["pr"], "1/1");
}

#[test]
fn survey_is_identical_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for (jobs, path) in [("1", &a), ("4", &b)] {
        let o = autocomm(&[
            "survey",
            "--max-order",
            "12",
            "--format",
            "csv",
            "--jobs",
            jobs,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn survey_to_unwritable_path_exits_one() {
    let o = autocomm(&[
        "survey",
        "--max-order",
        "2",
        "--output",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn isoclinic_identity_witness() {
    let o = autocomm(&["isoclinic", "cyclic:4", "cyclic:4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ident = |key: &str| {
        let arr: Vec<u64> = v[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        arr.iter().enumerate().all(|(i, &x)| x == i as u64)
    };
    assert!(ident("psi") && ident("gamma") && ident("beta"));
}

#[test]
fn isoclinic_outcomes() {
    assert_eq!(
        autocomm(&["isoclinic", "cyclic:3", "cyclic:4"])
            .status
            .code(),
        Some(3)
    );
    let o = autocomm(&["isoclinic", "dihedral:6", "dicyclic:3", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(
        autocomm(&["isoclinic", "cyclic:3", "nope:1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        autocomm(&["isoclinic", "dihedral:6", "dicyclic:3"])
            .status
            .code(),
        Some(0)
    );
}
