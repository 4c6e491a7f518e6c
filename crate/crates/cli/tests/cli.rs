use std::path::PathBuf;

use assert_cmd::Command;
use serde_json::Value;

fn brq() -> Command {
    let mut c = Command::cargo_bin("brq").unwrap();
    c.env_remove("BRQ_MAX_ORDER").env_remove("BRQ_FIXTURES");
    c
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn json_of(out: &[u8]) -> Value {
    serde_json::from_slice(out).unwrap()
}

#[test]
fn b0_klein4_is_trivial() {
    let out = brq().args(["b0", &fixture("inputs/klein4.json"), "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out.stdout)["unramified_group"]["invariant_factors"], serde_json::json!([]));
}

#[test]
fn h2_a4_json() {
    let out = brq().args(["h2", &fixture("inputs/a4.json"), "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out.stdout)["invariant_factors"], serde_json::json!([2]));
}

#[test]
fn bad_toric_matrix_exits_2_naming_generator() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "bad.json",
        r#"{"group":{"kind":"cyclic","n":2},"toric":{"rank":2,"matrices":{"g0":[[2,0],[0,1]]}}}"#,
    );
    let out = brq().args(["brnr", "toric", &p, "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out.stdout);
    assert_eq!(v["error"]["kind"], "bad_generator");
    assert!(v["error"]["message"].as_str().unwrap().contains("generator 0"));
}

#[test]
fn malformed_json_and_unknown_verb_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "broken.json", "{\"kind\": ");
    let out = brq().args(["h2", &p, "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out.stdout)["error"]["kind"], "parse");
    let out = brq().args(["frobnicate", &p, "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out.stdout)["error"]["kind"], "usage");
    let out = brq().args(["verify", "nope", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = brq().args(["h2", "/nonexistent/x.json", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out.stdout)["error"]["kind"], "io");
}

#[test]
fn incompatible_options_rejected_before_reading_input() {
    let out = brq().args(["h2", "/nonexistent/x.json", "--r", "2", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out.stdout)["error"]["kind"], "parse");
    let out = brq().args(["brnr", "cubic", "x.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cubic"));
}

#[test]
fn size_limits_exit_3() {
    let a4 = fixture("inputs/a4.json");
    let out = brq().args(["h2", &a4, "--max-order", "8", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out.stdout)["error"]["kind"], "size_limit");
    let out = brq().env("BRQ_MAX_ORDER", "8").args(["h2", &a4]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    // raising the limit lets a big cyclic group through
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "c100.json", r#"{"kind":"cyclic","n":100}"#);
    assert_eq!(brq().args(["h2", &p]).output().unwrap().status.code(), Some(3));
    let out = brq().env("BRQ_MAX_ORDER", "200").args(["h2", &p, "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_byte_deterministic_unless_stamped() {
    let p = fixture("m06_a4.json");
    let a = brq().args(["stack", &p, "--json"]).output().unwrap().stdout;
    let b = brq().args(["stack", &p, "--json", "--threads", "3"]).output().unwrap().stdout;
    assert_eq!(a, b);
    assert_eq!(json_of(&a)["stack_group"]["invariant_factors"], serde_json::json!([2, 2]));
    let s = brq().args(["stack", &p, "--json", "--stamp"]).output().unwrap().stdout;
    assert!(json_of(&s)["stamp"]["unix_seconds"].is_u64());
    assert!(json_of(&a).get("stamp").is_none());
}

#[test]
fn witness_exports_cocycles() {
    let out = brq().args(["h2", &fixture("inputs/a4.json"), "--json", "--witness"]).output().unwrap();
    let v = json_of(&out.stdout);
    let tables = v["cocycles"].as_array().unwrap();
    assert_eq!(tables.len(), 1);
    assert_eq!(tables[0]["values"].as_array().unwrap().len(), 12);
}

#[test]
fn stdin_input_and_text_output() {
    let out = brq()
        .args(["group-info", "-"])
        .write_stdin(r#"{"kind":"dihedral","n":4}"#)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 8"), "{text}");
}

#[test]
fn brnr_kinds_from_fixture_documents() {
    let corr = fixture("inputs/klein4_correlation.json");
    for (kind, extra) in [("grassmannian", vec![]), ("flag", vec![]), ("grassmannian", vec!["--r", "2"])] {
        let mut args = vec!["brnr", kind, corr.as_str(), "--json"];
        args.extend(extra);
        let out = brq().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{kind}");
        assert_eq!(json_of(&out.stdout)["unramified_group"]["invariant_factors"], serde_json::json!([]));
    }
    // correlations are not actions on projective space
    let out = brq().args(["brnr", "projective", &corr, "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["abelian-sweep", "plucker-oracle", "fixtures", "toric"] {
        let out = brq().args(["verify", suite]).output().unwrap();
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{suite}: {text}");
        assert!(!text.contains("FAIL"));
    }
    let out = brq().args(["verify", "plucker-oracle", "--json"]).output().unwrap();
    let v = json_of(&out.stdout);
    assert_eq!(v["passed"], v["total"]);
}

#[test]
fn fixtures_detect_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let src = fixture("");
    let copy = |rel: &str| {
        let to = dir.path().join(rel);
        std::fs::create_dir_all(to.parent().unwrap()).unwrap();
        std::fs::copy(PathBuf::from(&src).join(rel), to).unwrap();
    };
    std::fs::write(
        dir.path().join("manifest.json"),
        r#"[{"name": "a4_h2", "verb": "h2", "input": "inputs/a4.json", "witness": true}]"#,
    )
    .unwrap();
    for rel in ["inputs/a4.json", "reports/a4_h2.json", "reports/a4_h2.txt"] {
        copy(rel);
    }
    let run = || brq().env("BRQ_FIXTURES", dir.path()).args(["verify", "fixtures"]).output().unwrap();
    assert_eq!(run().status.code(), Some(0));
    let txt = dir.path().join("reports/a4_h2.txt");
    let mut body = std::fs::read_to_string(&txt).unwrap();
    body.push(' ');
    std::fs::write(&txt, body).unwrap();
    let out = run();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    // bless restores it
    let out = brq().env("BRQ_FIXTURES", dir.path()).args(["verify", "fixtures", "--bless"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run().status.code(), Some(0));
}
