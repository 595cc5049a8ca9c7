use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn formring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Every number is an integer, at any depth.
fn integers_only(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(integers_only),
        Value::Object(o) => o.values().all(integers_only),
        _ => true,
    }
}

#[test]
fn certify_fixture_a() {
    let out = formring(&["certify", fixture("fix_a.job").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "CohenMacaulay");
    assert_eq!(v["e"], serde_json::json!([4, 1, 0]));
    assert_eq!((v["s_hm"].as_i64(), v["s_cm"].as_i64()), (Some(1), Some(1)));
    for key in ["e", "verdict", "s_hm", "s_cm", "r", "seed", "cm_assumed", "per_n", "warnings"] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    assert!(integers_only(&v));
}

#[test]
fn coeffs_of_parameter_ideal() {
    let out = formring(&["coeffs", fixture("param_ab.job").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["e"], serde_json::json!([6, 0, 0]));
}

#[test]
fn bounds_fixture_b() {
    let out = formring(&["bounds", fixture("fix_b.job").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["reduction_bound"]["value"], 1);
    assert_eq!(v["reduction_bound"]["bound"], 1);
    assert!(integers_only(&v));
}

#[test]
fn alpha_beta_gamma_table() {
    let out = formring(&["certify", fixture("fix_b.job").to_str().unwrap(), "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().find(|l| l.contains('α')).expect("α/β/γ header");
    let cols: Vec<&str> = header.split_whitespace().collect();
    assert_eq!(cols, ["n", "α", "β", "γ"]);
}

#[test]
fn refusal_exits_two() {
    let out = formring(&["bounds", fixture("fix_c.job").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["refused"], true);
    assert!(v["reason"].is_string());

    let out = formring(&["bounds", fixture("fix_c.job").to_str().unwrap(), "--force"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["informational"], true);
}

#[test]
fn identical_runs_are_byte_identical() {
    for name in ["fix_a.job", "fix_b.job", "fix_c.job", "table_ab.job"] {
        let path = fixture(name);
        let a = formring(&["certify", path.to_str().unwrap(), "--seed", "11"]);
        let b = formring(&["certify", path.to_str().unwrap(), "--seed", "11"]);
        assert_eq!(a.status.code(), Some(0), "{name}");
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert!(integers_only(&json(&a)), "{name}");
    }
}

#[test]
fn every_command_emits_integer_json() {
    for cmd in ["coeffs", "reduce", "certify", "bounds", "validate"] {
        for name in ["fix_a.job", "fix_b.job", "param_ab.job", "table_ab.job"] {
            let out = formring(&[cmd, fixture(name).to_str().unwrap()]);
            let v = json(&out);
            assert!(integers_only(&v), "{cmd} {name}");
            assert!(v.get("warnings").is_some() || v.get("refused").is_some(), "{cmd} {name}");
        }
    }
}

#[test]
fn input_errors_are_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.job");
    std::fs::write(&path, "ring x y\nfiltration adic: x, y^2 + w\n").unwrap();
    let out = formring(&["coeffs", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.job:2:27:"), "{err}");

    std::fs::write(&path, "ring x y\nfiltration adic: x\n").unwrap();
    let out = formring(&["certify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = formring(&["coeffs", dir.path().join("missing.job").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn flags_override_file_options() {
    let path = fixture("fix_b.job");
    let out = formring(&["reduce", path.to_str().unwrap(), "--seed", "8", "--char", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 8);
    assert_eq!(v["r"], 1);
}

#[test]
fn non_cohen_macaulay_module_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cm.job");
    std::fs::write(&path, "ring x y\nmodule: y^2 - x^5\nfiltration adic: x, y\noption cm=false\n").unwrap();
    let out = formring(&["certify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["refused"], true);
}
