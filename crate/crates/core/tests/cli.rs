use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use knotob::obstruction::triple;
use knotob::report;

fn knotob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotob"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("knotob-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_writes_report() {
    let spec = report::preset_example1(&triple(3, 5, 17), &report::delta_j_patterns()).unwrap();
    let input = scratch("knot.json");
    let output = scratch("report.json");
    fs::write(&input, spec.to_json()).unwrap();
    let o = knotob(&["analyze", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["verdicts"]["f_05_1"]["status"], "obstructed");
    assert_eq!(v["verdicts"]["doubly_slice"]["status"], "obstructed");
    assert_eq!(v["metabolisers"].as_array().unwrap().len(), 8);
    // Integers travel as strings.
    assert_eq!(v["metabolisers"][0]["psi"]["modulus"], "127");
}

#[test]
fn analyze_is_byte_identical_across_runs() {
    let a = knotob(&["analyze", "--preset", "example2", "--p", "2,3,7"]);
    let b = knotob(&["analyze", "--preset", "example2", "--p", "2,3,7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn family_table_output() {
    let o = knotob(&["family", "--e", "1", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("104  8  13"));
    assert!(s.contains("44  4  11  15  false"));
    assert!(s.contains("-22  2  -11"));
    assert!(s.contains("discrepancy (row 3)"));
}

#[test]
fn milnor_borromean() {
    let path = scratch("borromean.json");
    fs::write(&path, serde_json::to_string(&knotob::milnor::LongitudeSystem::borromean()).unwrap()).unwrap();
    let o = knotob(&["milnor", "--longitudes", path.to_str().unwrap(), "--triple", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let o = knotob(&["milnor", "--input", path.to_str().unwrap(), "--triple", "2,1,3"]);
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn oracle_agrees() {
    let o = knotob(&["oracle", "--p", "2,3,7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["oracle"], "5");
    assert_eq!(v["agree"], true);
    let o = knotob(&["oracle", "--p", "3,5,17", "--search-bound", "100"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let trefoil = scratch("trefoil.json");
    fs::write(&trefoil, r#"{"name": "trefoil", "seifert": [["-1", "1"], ["0", "-1"]]}"#).unwrap();
    assert_eq!(knotob(&["analyze", "--input", trefoil.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(knotob(&["analyze", "--input", "/nonexistent/knot.json"]).status.code(), Some(1));
    let bad = scratch("bad.json");
    fs::write(&bad, r#"{"block_form": {"A": [[0]], "p": [3]}, "colour": "red"}"#).unwrap();
    assert_eq!(knotob(&["analyze", "--input", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(knotob(&["family", "--e", "0"]).status.code(), Some(1));
    assert_eq!(knotob(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn metabolisers_listing() {
    let o = knotob(&["metabolisers", "--preset", "example1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["metabolisers"].as_array().unwrap().len(), 8);
    assert_eq!(v["complementary_pairs"].as_array().unwrap().len(), 4);
}
