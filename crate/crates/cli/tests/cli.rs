use std::path::Path;
use std::process::{Command, Output};

use hhlab_core::VerificationReport;

fn hhlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (i32, VerificationReport, String) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = hhlab(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), report, text)
}

fn schema() -> jsonschema::JSONSchema {
    let raw = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("report.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&raw).unwrap()).unwrap()
}

fn assert_valid(text: &str) {
    let value: serde_json::Value = serde_json::from_str(text).unwrap();
    let s = schema();
    let msgs: Vec<String> = match s.validate(&value) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

#[test]
fn rigidity_of_matrix_algebra() {
    let (code, r, text) = json_report(&["verify", "rigidity", "builtin:matrix(2)", "--max-degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.lhs_column(), vec![4, 0, 0, 0, 0]);
    assert_valid(&text);
}

#[test]
fn hh_cohomology_table() {
    let out = hhlab(&["hh-cohomology", "builtin:dual_numbers(2)", "--coeff", "regular", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text
        .lines()
        .skip_while(|l| !l.trim_start().starts_with("degree"))
        .skip(1)
        .take_while(|l| !l.is_empty() && !l.starts_with("note"))
        .collect();
    assert_eq!(rows.len(), 4);
    let (_, r, _) = json_report(&["hh-cohomology", "builtin:dual_numbers(2)", "--coeff", "regular", "--max-degree", "3"]);
    assert_eq!(r.lhs_column(), vec![2, 1, 1, 1]);
}

#[test]
fn main_from_files_with_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = hhlab(&["builtin-emit", "dual_numbers(2)"]);
    assert_eq!(a.status.code(), Some(0));
    std::fs::write(dir.path().join("A.json"), &a.stdout).unwrap();
    std::fs::write(
        dir.path().join("M.json"),
        r#"{"algebra": "A.json", "dim": 1, "action": [[[1]], [[0]]]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("N.json"),
        r#"{"algebra": "A.json", "dim": 2, "side": "right", "action": [[[1,0],[0,1]], [[0,0],[1,0]]]}"#,
    )
    .unwrap();
    let p = |f: &str| dir.path().join(f).to_string_lossy().into_owned();
    let (code, r, text) = json_report(&["verify", "main", &p("A.json"), "--M", &p("M.json"), "--N", &p("N.json"), "--seed", "7"]);
    assert_eq!(code, 0, "{text}");
    assert!(r.all_yes());
    assert_eq!(r.seed, 7);
    assert_valid(&text);
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // x·x = y and x·y = x, so x·(x·x) = x but (x·x)·x = y·x = 0
    std::fs::write(
        &bad,
        r#"{"p": 5, "dim": 3, "basis": ["1", "x", "y"], "unit": [1, 0, 0],
            "mul": [[0,0,0,1],[0,1,1,1],[0,2,2,1],[1,0,1,1],[2,0,2,1],[1,1,2,1],[1,2,1,1]]}"#,
    )
    .unwrap();
    let out = hhlab(&["center", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("associativity fails at (i,j,k)=(1,1,1)"), "{err}");
    assert_eq!(hhlab(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(hhlab(&["center", "builtin:nonsense(2)"]).status.code(), Some(3));
    assert_eq!(hhlab(&["center", "/nonexistent/a.json"]).status.code(), Some(3));
    let out = hhlab(&["verify", "commutative", "builtin:matrix(2)"]);
    assert_eq!(out.status.code(), Some(3));
    let out = hhlab(&["center", "builtin:field", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mismatch_exits_1_and_unknown_exits_2() {
    use hhlab::exit_code;
    use hhlab_core::report::{Outcome, Verdict};
    let a = hhlab_core::algebra::builtin("field", 101).unwrap();
    let mut r = VerificationReport::new("t", &a);
    r.compare(0, 1, 2, Verdict::Yes);
    assert_eq!(exit_code(r.finish().outcome), 1);
    let mut r = VerificationReport::new("t", &a);
    r.compare(0, 1, 1, Verdict::Unknown);
    assert_eq!(exit_code(r.finish().outcome), 2);
    assert_eq!(exit_code(Outcome::Computed), 0);
}

#[test]
fn reports_are_byte_identical_and_schema_valid() {
    let cases: [&[&str]; 6] = [
        &["verify", "main", "builtin:upper_triangular(2)", "--M", "random:3", "--N", "random:3", "--seed", "7"],
        &["verify", "hoc-twist", "builtin:exterior2", "--coeff", "random:4", "--max-degree", "2"],
        &["probe", "conjecture", "builtin:exterior2", "--max-degree", "2"],
        &["center", "builtin:group_algebra(C2)", "--p", "2"],
        &["resolution", "builtin:dual_numbers(3)"],
        &["verify", "sep", "builtin:dual_numbers(2)", "--M", "random:2", "--N", "random:2", "--max-degree", "2"],
    ];
    for args in cases {
        let (_, _, first) = json_report(args);
        let (_, _, second) = json_report(args);
        assert_eq!(first, second, "{args:?}");
        assert_valid(&first);
    }
}

#[test]
fn out_file_and_builtin_emit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = hhlab(&["verify", "vdb", "builtin:upper_triangular(2)", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
    let emitted = hhlab(&["builtin-emit", "matrix(2)"]);
    let file = dir.path().join("m2.json");
    std::fs::write(&file, &emitted.stdout).unwrap();
    let (_, from_file, _) = json_report(&["center", file.to_str().unwrap()]);
    let (_, from_builtin, _) = json_report(&["center", "builtin:matrix(2)"]);
    assert_eq!(from_file, from_builtin);
}

#[test]
fn timing_is_opt_in() {
    let (_, r, _) = json_report(&["verify", "axioms", "builtin:exterior2"]);
    assert_eq!(r.elapsed_ms, 0);
}
