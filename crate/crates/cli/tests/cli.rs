use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

const N1: &str = r#"{"lambda1": 1e-4, "A": 1, "B": [0, 1], "C": 0, "form": "N1"}"#;
const CENTER: &str = r#"{"lambda1": 0, "A": 1, "B": 2, "C": 1, "form": "N1"}"#;
const GAP: &str = r#"{"lambda1": 0.05, "A": 1, "B": [0.5, 1.0], "C": [0.3, -0.2], "form": "N1"}"#;

fn qvf(args: &[&str]) -> (Value, i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qvf")).args(args).env("QVF_THREADS", "2").output().expect("qvf runs");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}):\n{text}"));
    (v, out.status.code().expect("exit code"), text)
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", &format!("{name}.schema.json")].iter().collect();
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&doc).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    if let Err(errors) = s.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{name} output violates its schema:\n{}\n{v:#}", msgs.join("\n"));
    };
}

fn ok(name: &str, args: &[&str]) -> Value {
    let (v, code, _) = qvf(args);
    assert_eq!(code, 0, "{args:?}:\n{v:#}");
    assert_valid(name, &v);
    v
}

#[test]
fn normalize_output() {
    let v = ok("normalize", &["normalize", "--field", r#"{"mu": [0, 2], "A": [0, 2], "B": 1, "C": 0}"#]);
    assert_eq!(v["field"]["form"], "N1");
    assert_eq!(v["field"]["lambda1"], 0.0);
}

#[test]
fn center_field_has_zero_residuals() {
    let v = ok("centers", &["centers", "--field", CENTER]);
    assert_eq!(v["g"], serde_json::json!([0.0, 0.0, 0.0, 0.0]));
    assert_eq!(v["sigma_distance"], 0.0);
}

#[test]
fn singular_output() {
    ok("singular", &["singular", "--field", N1]);
}

#[test]
fn cycles_output_and_csv() {
    let dir = std::env::temp_dir().join(format!("qvf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("cycle.csv");
    let v = ok("cycles", &["cycles", "--field", N1, "--csv", csv.to_str().unwrap()]);
    let cycles = v["search"]["cycles"].as_array().unwrap();
    assert_eq!(cycles.len(), 1);
    let x = cycles[0]["x_star"].as_f64().unwrap();
    assert!((x - 1e-2).abs() < 2e-4, "x* = {x}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("theta,re_w,im_w"));
    assert_eq!(text.lines().count() as u64 - 1, v["csv"]["samples"].as_u64().unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bautin_outputs() {
    let v = ok("bautin-verify", &["bautin", "verify"]);
    assert_eq!(v["exact_pass"], true);
    let j = ok("bautin-jet", &["bautin", "jet"]);
    assert_eq!(j["coefficients"]["a1"], "1");
    assert_eq!(j["coefficients"]["a2"], "0");
}

#[test]
fn gap_check_output() {
    ok("gap-check", &["gap-check", "--field", GAP]);
}

#[test]
fn bound_at_the_corner() {
    let v = ok("bound", &["bound", "--at", "0.1", "0.1", "0.1"]);
    assert_eq!(v["lnlnH"].as_f64().unwrap(), 1e58);
}

#[test]
fn zero_bound_output() {
    let v = ok("zero-bound", &["zero-bound", "--max", "10", "--min", "1", "--diameter", "1", "--eps", "1"]);
    let expected = 10f64.ln() * 2f64.exp();
    assert!((v["bound"].as_f64().unwrap() - expected).abs() < 1e-12 * expected);
}

#[test]
fn selftest_is_reproducible() {
    let (a, code, text_a) = qvf(&["selftest", "--seed", "42"]);
    assert_eq!(code, 0, "{a:#}");
    assert_valid("selftest", &a);
    let out = Command::new(env!("CARGO_BIN_EXE_qvf"))
        .args(["selftest", "--seed", "42"])
        .env("QVF_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(text_a, String::from_utf8(out.stdout).unwrap(), "thread count changed the report");
}

#[test]
fn same_inputs_give_identical_bytes() {
    for args in [&["cycles", "--field", N1][..], &["gap-check", "--field", GAP], &["bound"]] {
        assert_eq!(qvf(args).2, qvf(args).2, "{args:?}");
    }
}

#[test]
fn invalid_input_exits_2() {
    let cases: [&[&str]; 5] = [
        &["centers"],
        &["frobnicate"],
        &["centers", "--field", r#"{"lambda1": 0, "A": 3, "form": "N1"}"#],
        &["bound", "--at", "0", "0.1", "0.1"],
        &["cycles", "--field", N1, "--delta", "0.5"],
    ];
    for args in cases {
        let (v, code, _) = qvf(args);
        assert_eq!(code, 2, "{args:?}:\n{v:#}");
        assert_valid("error", &v);
        assert_eq!(v["error"]["kind"], "InvalidInput");
    }
}

#[test]
fn schemas_reject_malformed_documents() {
    let (mut v, _, _) = qvf(&["centers", "--field", CENTER]);
    v["g"] = serde_json::json!([0.0, 0.0]);
    assert!(!schema("centers").is_valid(&v));
    let (mut b, _, _) = qvf(&["bound"]);
    b["unexpected"] = Value::Bool(true);
    assert!(!schema("bound").is_valid(&b));
    b.as_object_mut().unwrap().remove("unexpected");
    b.as_object_mut().unwrap().remove("lnlnH");
    assert!(!schema("bound").is_valid(&b));
}
