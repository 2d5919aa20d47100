use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    p.to_string_lossy().into_owned()
}

fn eqtc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eqtc")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eqtc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn report_two_vertices() {
    let (code, out, _) = eqtc(&["report", &fixture("two-vertices.json"), "--field", "Q", "--sharp-zcl"]);
    assert_eq!(code, 0);
    assert!(out.contains("| `cat_{T^2}(Z_K)` | = 2 |"));
    assert!(out.contains("| `TC_{T^2,2}(Z_K)` | [2, 6] |"));
    assert!(out.contains("- Betti numbers of Z_K: (1, 0, 0, 1)"));
}

#[test]
fn orbit_reflection_dot() {
    let (code, out, _) = eqtc(&["orbit", &fixture("reflection.json"), "--out", "dot"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("[label=").count(), 3);
    assert_eq!(out.matches("minimal=true").count(), 2);
    assert!(out.contains("TC^{G,n}(X) = inf"));
}

#[test]
fn analyze_empty_complex() {
    let (code, out, _) = eqtc(&["analyze-complex", &fixture("empty.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("H~^-1: rank 1"));
}

#[test]
fn text_input_and_ring_summary() {
    let (code, out, _) = eqtc(&["ring", &fixture("four-cycle.txt"), "--max-n", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("- zcl_2 = 2"));
    assert!(out.contains("- cup length: 2"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["report", "fixture:four_cycle", "--sharp-zcl", "--out", "json"],
        vec!["orbit", "fixture:symmetric_triangle", "--out", "json"],
        vec!["bounds", "--complex", "fixture:boundary_triangle", "--action", "fixture:antipodal_c8"],
    ] {
        let a = eqtc(&args);
        let b = eqtc(&args);
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a.0, 0, "{args:?}: {}", a.2);
    }
}

#[test]
fn emitted_facts_reload_into_the_same_session() {
    let facts = temp("two-vertices-facts.json");
    let (code, _, err) = eqtc(&[
        "moment-angle",
        &fixture("two-vertices.json"),
        "--facts-out",
        facts.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (_, from_file, _) = eqtc(&["bounds", facts.to_str().unwrap(), "--sharp-zcl", "--out", "json"]);
    let (_, direct, _) = eqtc(&["bounds", "--complex", &fixture("two-vertices.json"), "--sharp-zcl", "--out", "json"]);
    assert_eq!(from_file, direct);

    let orbit_facts = temp("reflection-facts.json");
    eqtc(&["orbit", &fixture("reflection.json"), "--facts-out", orbit_facts.to_str().unwrap()]);
    let (_, a, _) = eqtc(&["bounds", orbit_facts.to_str().unwrap()]);
    let (_, b, _) = eqtc(&["bounds", "--action", &fixture("reflection.json")]);
    assert_eq!(a, b);
    assert!(a.contains("| `TC^{G,2}(X)` | [inf, inf] | R10 <- [fact #5] |"));
}

#[test]
fn inconsistent_facts_exit_three() {
    let path = temp("contradiction.json");
    std::fs::write(
        &path,
        r#"[
  {"kind": "bound", "params": {"quantity": "TC_{2}(Y)"}, "interval": [3, "inf"], "citation": "a"},
  {"kind": "bound", "params": {"quantity": "TC_{G,2}(Y)"}, "interval": [1, 2], "citation": "b"}
]"#,
    )
    .unwrap();
    let (code, out, err) = eqtc(&["bounds", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(out.contains("## Inconsistencies"));
    assert!(err.contains("inconsistent"));
}

#[test]
fn error_codes() {
    let (code, _, err) = eqtc(&["analyze-complex", "/nonexistent/complex.json"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: io:"));
    let bad = temp("bad.txt");
    std::fs::write(&bad, "m=3; 1 4;").unwrap();
    let (code, _, err) = eqtc(&["analyze-complex", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("simplicial: line 1"), "{err}");
    let (code, _, err) = eqtc(&["orbit", "fixture:symmetric_triangle", "--max-group-order", "3"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = eqtc(&["ring", "fixture:edge", "--field", "F6"]);
    assert_eq!(code, 1);
}

#[test]
fn explain_prints_trees() {
    let (code, out, _) = eqtc(&[
        "bounds",
        &fixture("circle-on-three-sphere.json"),
        "--sharp-zcl",
        "--explain",
        "TC_{S1,4}(S3)",
        "--explain",
        "TC_{S1,4}(S7)",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("TC_{S1,4}(S3) in [4, 7]"));
    assert!(out.contains("  R4: TC_{S1,4}(S3) <= 7"));
    assert!(out.contains("TC_{S1,4}(S7) in [1, inf]\nlower bound 1:\n  no information"));
}

#[test]
fn version_prints_rules() {
    let (code, out, _) = eqtc(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("eqtc "));
    assert!(out.contains("R10   more than one minimal orbit class: TC^{G,n}(Y) = inf"));
}
