use std::process::{Command, Output};

fn twg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pants_bracket() {
    let o = twg(&["bracket", "pants", "aab", "aB", "--undirected"]);
    assert!(o.status.success());
    // baaBa and Baaba print under their canonical rotations.
    assert_eq!(stdout(&o).trim(), "−⟨aabaB⟩ +⟨aaBab⟩");
}

#[test]
fn disjoint_bracket_is_zero() {
    let o = twg(&["bracket", "pants", "a", "b"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn both_engines_agree_on_torus() {
    let o = twg(&["bracket", "torus1", "abAb", "aB", "--engine", "both"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("ENGINES AGREE"), "{out}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0].trim_start_matches("comb"), lines[1].trim_start_matches("geom"));
    assert_eq!(lines[0].matches('⟨').count(), 4);
}

#[test]
fn directed_json_output() {
    let o = twg(&["bracket", "torus1", "a", "b", "--directed", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v, serde_json::json!([{"word": "ab", "coeff": 1}]));
}

#[test]
fn intersection_and_simplicity() {
    let o = twg(&["intersect", "torus1", "aa", "bbb", "--engine", "both"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("i = 6"));
    let o = twg(&["simple", "pants", "ab"]);
    assert_eq!(stdout(&o).lines().last(), Some("simple"));
    let o = twg(&["simple", "pants", "aab"]);
    assert_eq!(stdout(&o).lines().last(), Some("not simple"));
}

#[test]
fn enumerate_counts() {
    let o = twg(&["enumerate", "--surface", "torus1", "--max-len", "2"]);
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn goldenset_passes() {
    let o = twg(&["verify-goldenset"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn goldenset_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"cases": [{"name": "wrong", "surface": "pants", "x": "a", "y": "b",
            "expected": [{"word": "ab", "coeff": 1}]}]}"#,
    )
    .unwrap();
    let o = twg(&["verify-goldenset", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  wrong"));
}

#[test]
fn scan_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = twg(&[
        "scan", "--kind", "counting", "--surface", "pants", "--max-len", "3",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let text = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn errors_exit_two() {
    assert_eq!(twg(&["bracket", "pants", "abc", "a"]).status.code(), Some(2));
    assert_eq!(twg(&["bracket", "klein", "a", "b"]).status.code(), Some(2));
    assert_eq!(twg(&["bracket", "sphere4", "ab", "c", "--engine", "geom"]).status.code(), Some(2));
    assert_eq!(twg(&["scan", "--kind", "numerics", "--surface", "genus2", "--max-len", "2"]).status.code(), Some(2));
}
