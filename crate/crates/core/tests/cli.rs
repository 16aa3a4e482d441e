use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superdensity")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bracket_prints_half() {
    let o = bin(&["--format", "md", "bracket", "--n", "1", "--F", "t1", "--G", "t1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1/2");
}

#[test]
fn h1_json_report() {
    let o = bin(&["h1", "--n", "1", "--shift", "3/2", "--random-checks", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dims"]["h1"], 1);
    assert_eq!(v["shift"], "3/2");
    assert!(v["discrepancies"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = ["h1", "--n", "0", "--shift", "5", "--random-checks", "2"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}

#[test]
fn emitted_operators_parse_back() {
    let o = bin(&["classify-invariants", "--n", "2", "--shift", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ops = v["operators"].as_array().unwrap();
    assert_eq!(ops.len(), 6);
    for op in ops {
        let j: superdensity::diffop::BiDiffOpJson = serde_json::from_value(op.clone()).unwrap();
        let parsed = superdensity::diffop::BiDiffOp::<superdensity::scalars::ParamPoly>::from_json(&j).unwrap();
        assert_eq!(&serde_json::to_value(parsed.to_json()).unwrap(), op);
    }
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(bin(&["bracket", "--n", "1", "--F", "t1^2", "--G", "x"]).status.code(), Some(1));
    assert_eq!(bin(&["h1", "--n", "1", "--shift", "1.5"]).status.code(), Some(1));
    assert_eq!(bin(&["tables", "--n", "0", "--max-twice-shift", "40"]).status.code(), Some(1));
}

#[test]
fn strict_verification_is_clean() {
    let o = bin(&["verify-paper", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["confirmed"], v["total"]);
}

#[test]
fn output_file_gets_sidecar() {
    let dir = std::env::temp_dir().join(format!("superdensity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bracket.json");
    let o = bin(&["--output", path.to_str().unwrap(), "bracket", "--n", "0", "--F", "x", "--G", "x^2"]);
    assert!(o.status.success());
    let body: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["bracket"], "x^2");
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("bracket.json.meta.json")).unwrap()).unwrap();
    assert!(meta["generated_unix"].is_u64());
    std::fs::remove_dir_all(&dir).unwrap();
}
