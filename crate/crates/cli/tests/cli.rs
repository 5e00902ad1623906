use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"))
}

fn bohrnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohrnet")).args(args).output().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bohrnet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check_reports_failing_cover() {
    let out = bohrnet(&["check", example("global_qubit").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("strong locality      fail"), "{text}");
    assert!(text.contains("no left adjoint"), "{text}");
    assert!(text.contains("theorem              consistent"), "{text}");
}

#[test]
fn json_report_has_stable_digest() {
    let out = scratch("n2.json", "");
    let run = bohrnet(&["check", example("spin_chain_n2").to_str().unwrap(), "--json-out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["results_digest"], bohrnet_cli::report::results_digest(&v["results"]).as_str());
    assert_eq!(v["results"]["theorem"]["verdict"], "consistent");
    assert_eq!(v["results"]["descent"]["covers"], 9);
}

#[test]
fn ks_counts_sections() {
    let out = bohrnet(&["ks", example("cabello18").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("global sections  0"), "{text}");
    assert!(text.contains("verdict          contextual"), "{text}");
}

#[test]
fn explain_marks_unfaithful_points() {
    let out = bohrnet(&["explain", example("constant_commutative").to_str().unwrap(), "0;1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("f(L(x)) != x"), "{text}");
    assert!(text.contains("left adjoint exists but not fully faithful"), "{text}");
}

#[test]
fn cover_cap_truncates() {
    let out = bohrnet(&["check", example("spin_chain_n2").to_str().unwrap(), "--cover-cap", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("3 covers (truncated)"));
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let truncated = scratch("truncated.json", "{\"window\": {\"slice_radius\": 1}");
    let out = bohrnet(&["check", truncated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("malformed JSON"));

    let unknown = scratch("unknown.json", r#"{"window": {"slice_radius": 1}, "family": "spin_chain", "colour": 3}"#);
    let out = bohrnet(&["check", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("schema violation"));

    let not_projection = scratch(
        "not_projection.json",
        r#"{"dim": 2, "projections": [{"label": "p", "matrix": [["1", "1"], ["0", "0"]]}]}"#,
    );
    let out = bohrnet(&["ks", not_projection.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = bohrnet(&["explain", example("spin_chain_n2").to_str().unwrap(), ";"]);
    assert_eq!(out.status.code(), Some(2));

    let out = bohrnet(&["check", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(2));
}
