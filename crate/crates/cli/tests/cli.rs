use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn tbb(args: &[&str], file: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbb"))
        .arg("solve")
        .args(args)
        .arg(file)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(doc: &Value) {
    let v = validator();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

const ALL: &str = "--emit=basis,quotient,matrices,syzygies,trace";

#[test]
fn every_outcome_validates_against_the_schema() {
    let cases: [(&str, &[&str], i32); 5] = [
        ("two_roots.txt", &[ALL, "--dump-matrices", "--oracle=8"], 0),
        ("diamond.txt", &["--field=fp:32003", ALL], 0),
        ("unit.txt", &[ALL], 0),
        ("curve.txt", &[ALL], 3),
        ("two_roots.txt", &["--choice=lexmax", "--emit=quotient"], 0),
    ];
    for (file, args, code) in cases {
        let mut full = vec!["--format=json"];
        full.extend_from_slice(args);
        let out = tbb(&full, &data(file));
        assert_eq!(out.status.code(), Some(code), "{file}: {}", String::from_utf8_lossy(&out.stderr));
        assert_valid(&json_of(&out));
    }
}

#[test]
fn schema_rejects_a_malformed_document() {
    let bad: Value = serde_json::json!({"status": "solved", "field": "q"});
    assert!(!validator().is_valid(&bad));
}

#[test]
fn diamond_gives_sixteen_by_sixteen_matrices() {
    let out = tbb(&["--format=json", "--field=fp:32003", "--emit=matrices"], &data("diamond.txt"));
    let doc = json_of(&out);
    let ops = doc["matrices"]["operators"].as_array().unwrap();
    assert_eq!(ops.len(), 4);
    for op in ops {
        let rows = op["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 16));
    }
}

#[test]
fn point_matrices_are_exact() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("point.txt");
    std::fs::write(&file, "x1 - 2\n").unwrap();
    let doc = json_of(&tbb(&["--format=json", "--emit=matrices"], &file));
    assert_eq!(doc["matrices"]["operators"][0]["rows"], serde_json::json!([["2"]]));
    assert_eq!(doc["matrices"]["operators"][1]["rows"], serde_json::json!([["1/2"]]));
}

#[test]
fn unit_ideal_says_so() {
    let out = tbb(&["--emit=basis,quotient"], &data("unit.txt"));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: unit_ideal"));
    assert!(text.contains("{1} generates"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "x1 +\n").unwrap();
    let out = tbb(&[], &bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let zero = dir.path().join("zero.txt");
    std::fs::write(&zero, "x1 - x1\n").unwrap();
    assert_eq!(tbb(&[], &zero).status.code(), Some(2));

    assert_eq!(tbb(&["--field=fp:12"], &data("two_roots.txt")).status.code(), Some(2));
    assert_eq!(tbb(&[], &data("curve.txt")).status.code(), Some(3));
    assert_eq!(tbb(&["--max-degree=2"], &data("two_roots.txt")).status.code(), Some(3));
    assert_eq!(tbb(&[], &dir.path().join("missing.txt")).status.code(), Some(1));
}

#[test]
fn reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_tbb"))
        .args(["solve", "--emit=quotient", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x1 - 2\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("dimension 1"));
}
