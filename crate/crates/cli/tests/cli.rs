use std::path::PathBuf;
use std::process::{Command, Output};

fn grnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grnorm")).args(args).output().expect("binary runs")
}

fn curve(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "curves", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("structured output is json")
}

#[test]
fn semigroup_of_a7() {
    let o = grnorm(&["semigroup", "--input", &curve("a7.curve"), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["curves"][0]["gamma"], serde_json::json!([4, 4]));
    assert_eq!(v["curves"][0]["symmetric"], true);
}

#[test]
fn semigroup_of_smooth_and_t3_t7() {
    let v = json(&grnorm(&["semigroup", "--input", &curve("smooth.curve"), "--format", "structured"]));
    assert_eq!(v["curves"][0]["gamma"], serde_json::json!([0]));
    assert_eq!(v["curves"][0]["semigroup"], serde_json::json!([[0]]));
    let v = json(&grnorm(&["semigroup", "--input", &curve("monomial_3_7.curve"), "--format", "structured"]));
    assert_eq!(v["curves"][0]["gamma"], serde_json::json!([12]));
    let members: Vec<u64> = v["curves"][0]["semigroup"].as_array().unwrap().iter().map(|m| m[0].as_u64().unwrap()).collect();
    assert_eq!(members, vec![0, 3, 6, 7, 9, 10, 12]);
}

#[test]
fn normalize_reports() {
    let v = json(&grnorm(&["normalize", "--input", &curve("a8.curve"), "--format", "structured"]));
    assert_eq!(v["curves"][0]["n"], 4);
    let types: Vec<&str> = v["curves"][0]["chain"].as_array().unwrap().iter().map(|s| s["recognized"].as_str().unwrap()).collect();
    assert_eq!(types, vec!["A8", "A6", "A4", "A2", "smooth"]);
    let v = json(&grnorm(&["normalize", "--input", &curve("d7.curve"), "--format", "structured"]));
    assert_eq!(v["curves"][0]["n"], 3);
    let v = json(&grnorm(&["normalize", "--input", &curve("node.curve"), "--format", "structured"]));
    assert_eq!(v["curves"][0]["n"], 1);
}

#[test]
fn global_length_is_the_maximum() {
    let o = grnorm(&["normalize", "--input", &curve("a8.curve"), "--input", &curve("e6.curve"), "--ade", "D5", "--jobs", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("global n = 4\n"));
}

#[test]
fn parallel_output_is_deterministic() {
    let args = ["normalize", "--ade", "A9", "--ade", "D8", "--ade", "E7", "--format", "structured"];
    let one = grnorm(&[&args[..], &["--jobs", "1"]].concat());
    let four = grnorm(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_ade_ranges() {
    let o = grnorm(&["verify-ade", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("24 of 24 types passed"));
    let v = json(&grnorm(&["verify-ade", "--type", "D", "--n", "4..12", "--format", "structured"]));
    let ns: Vec<u64> = v["verifications"].as_array().unwrap().iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, vec![2, 2, 3, 3, 4, 4, 5, 5, 6]);
    assert_eq!(grnorm(&["verify-ade", "--type", "E", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn diagrams() {
    let o = grnorm(&["diagram", "--input", &curve("a7.curve")]);
    assert_eq!(stdout(&o).matches("gamma=").count(), 5);
    let o = grnorm(&["diagram", "--ade", "E6"]);
    assert_eq!(stdout(&o).matches("gamma=").count(), 3);
    let o = grnorm(&["diagram", "--input", &curve("smooth.curve")]);
    assert!(stdout(&o).contains("|G#\n"));
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("d7.svg");
    let o = grnorm(&["diagram", "--input", &curve("d7.curve"), "--svg", "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn four_branches_have_no_picture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("four.curve");
    std::fs::write(&path, "branches = 4\ngen x = t ; t ; t ; t\ngen y = 0 ; t ; 2 t ; 3 t\n").unwrap();
    let o = grnorm(&["diagram", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = grnorm(&["normalize", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.curve");
    std::fs::write(&path, "branches = 1\ngen x = t^2 +\n").unwrap();
    let o = grnorm(&["semigroup", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column"));
    std::fs::write(&path, "branches = 2\ngen x = t ; t\n").unwrap();
    assert_eq!(grnorm(&["semigroup", "--input", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(grnorm(&["semigroup", "--input", "/nonexistent.curve"]).status.code(), Some(2));
    assert_eq!(grnorm(&["semigroup"]).status.code(), Some(2));
}

#[test]
fn out_file_and_box_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = grnorm(&["normalize", "--ade", "E8", "--box", "32", "--format", "structured", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["curves"][0]["gamma"], serde_json::json!([8]));
}
