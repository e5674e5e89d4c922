use std::io::Write;

use nonassoc::cli::run;
use serde_json::Value;

const A_EX_F2: &str = r#"{"field":{"prime":2},"dim":2,"basis":["x","y"],"products":[
  {"i":0,"j":0,"terms":[{"k":0,"c":"1"}]},
  {"i":0,"j":1,"terms":[{"k":0,"c":"1"}]}]}"#;

// A_ex with yx = y added: no longer bicommutative.
const A_EX_BROKEN: &str = r#"{"field":{"prime":2},"dim":2,"products":[
  {"i":0,"j":0,"terms":[{"k":0,"c":"1"}]},
  {"i":0,"j":1,"terms":[{"k":0,"c":"1"}]},
  {"i":1,"j":0,"terms":[{"k":1,"c":"1"}]}]}"#;

const T3_F2: &str = r#"{"field":{"prime":2},"dim":3,"products":[
  {"i":0,"j":0,"terms":[{"k":1,"c":"1"}]},
  {"i":0,"j":1,"terms":[{"k":2,"c":"1"}]},
  {"i":1,"j":0,"terms":[{"k":2,"c":"1"}]}]}"#;

const A_EX_Q: &str = r#"{"field":"Q","dim":2,"products":[
  {"i":0,"j":0,"terms":[{"k":0,"c":"1"}]},
  {"i":0,"j":1,"terms":[{"k":0,"c":"1"}]}]}"#;

fn file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("nonassoc").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn verify_all_on_a_good_fixture_exits_zero() {
    let f = file(A_EX_F2);
    let (code, out, _) = call(&["verify", path(&f), "--all"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().any(|l| l.starts_with("PASS")));
    assert!(!out.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn assumed_false_hypothesis_exposes_a_failure() {
    let f = file(A_EX_BROKEN);
    let (code, out, _) = call(&["verify", path(&f), "--all"]);
    assert_eq!(code, 0, "unassumed hypotheses make every check inapplicable or true");
    assert!(!out.contains("FAIL"));
    let (code, out, _) = call(&["--output", "json", "verify", path(&f), "--check", "dt1_Asq_comm_assoc", "--assume", "bicommutative"]);
    assert_eq!(code, 1, "{out}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["failed"], true);
    let r = &doc["reports"][0];
    assert_eq!(r["applicable"], true);
    assert_eq!(r["holds"], false);
    assert!(r["counterexample"]["algebra"].is_object());
    assert_eq!(r["assumed"][0], "bicommutative");
}

#[test]
fn bad_input_exits_two() {
    let (code, _, err) = call(&["info", "/nonexistent/algebra.json"]);
    assert_eq!(code, 2, "{err}");
    let f = file("{not json");
    assert_eq!(call(&["info", path(&f)]).0, 2);
    let dup = file(
        r#"{"field":{"prime":3},"dim":1,"products":[
          {"i":0,"j":0,"terms":[{"k":0,"c":"1"}]},
          {"i":0,"j":0,"terms":[{"k":0,"c":"2"}]}]}"#,
    );
    let (code, _, err) = call(&["info", path(&dup)]);
    assert_eq!(code, 2);
    assert!(err.contains("duplicate"), "{err}");
    let bad_p = file(r#"{"field":{"prime":4},"dim":1,"products":[]}"#);
    assert_eq!(call(&["info", path(&bad_p)]).0, 2);
    assert_eq!(call(&["no-such-command"]).0, 2);
    let g = file(A_EX_F2);
    assert_eq!(call(&["check", path(&g), "--identity", "jordan"]).0, 2);
}

#[test]
fn split_refuses_when_frattini_is_nonzero() {
    let f = file(T3_F2);
    let (code, _, err) = call(&["split", path(&f)]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn enumeration_over_q_is_unsupported() {
    let f = file(A_EX_Q);
    let (code, _, err) = call(&["minimal-ideals", path(&f)]);
    assert_eq!(code, 3);
    assert!(err.contains("requires finite field"), "{err}");
    let (code, _, _) = call(&["search", "--field", "Q", "--dim", "2", "--exhaustive"]);
    assert_eq!(code, 3);
}

#[test]
fn budget_exhaustion_exits_three() {
    let f = file(T3_F2);
    let (code, _, err) = call(&["--budget-subspaces", "1", "frattini", path(&f)]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn frattini_of_truncated_polynomials_is_the_square() {
    let f = file(T3_F2);
    let (code, out, _) = call(&["--output", "json", "frattini", path(&f)]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let expected = serde_json::json!([["0", "1", "0"], ["0", "0", "1"]]);
    assert_eq!(doc["frattiniSubalgebra"], expected);
    assert_eq!(doc["frattiniIdeal"], expected);
}

#[test]
fn info_reports_identities() {
    let f = file(A_EX_F2);
    let (code, out, _) = call(&["--output", "json", "info", path(&f)]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["identities"]["bicommutative"], true);
    assert_eq!(doc["identities"]["associative"], false);
    assert_eq!(doc["dim"], 2);
}

#[test]
fn search_counts_are_stable() {
    let args = ["--output", "json", "search", "--field", "F2", "--dim", "2", "--identity", "bicommutative", "--exhaustive"];
    let (code, first, _) = call(&args);
    assert_eq!(code, 0);
    let (_, second, _) = call(&args);
    assert_eq!(first, second);
    let doc: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(doc["count"], 40);
    let sampled = ["search", "--field", "F3", "--dim", "2", "--samples", "50", "--seed", "7"];
    assert_eq!(call(&sampled), call(&sampled));
}

#[test]
fn json_verify_output_is_deterministic() {
    let f = file(A_EX_F2);
    let a = call(&["--output", "json", "verify", path(&f), "--all"]);
    let b = call(&["--output", "json", "verify", path(&f), "--all"]);
    assert_eq!(a, b);
    let doc: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(doc["reports"].as_array().unwrap().len(), nonassoc::verify::CheckId::ALL.len());
}

#[test]
fn emitted_fixtures_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = call(&["fixtures", "--emit", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let t3 = dir.path().join("T3_F2.json");
    let (code, out, _) = call(&["series", t3.to_str().unwrap(), "--kind", "derived", "--output", "json"]);
    assert_eq!(code, 0, "{out}");
}
