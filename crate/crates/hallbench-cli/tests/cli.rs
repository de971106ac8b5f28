//! End-to-end runs of the `hallbench` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallbench")).args(args).env("HALLBENCH_OUT", out).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn zeta_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["zeta", "--q", "2", "--terms", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), serde_json::json!([1, 3, 7, 15, 31]));
}

#[test]
fn product_of_line_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["mul", "--backend", "coh-p1", "--q", "2", "[O(1)]", "[O(0)]"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["c"], serde_json::json!({"a": "1", "b": "0"}));
    assert_eq!(terms[0]["obj"]["bundle"], serde_json::json!([1, 0]));
    // the Ringel twist ⟨O(0), O(1)⟩ = v² = q
    let o = run(dir.path(), &["mul", "--product", "ringel", "--q", "2", "[O(1)]", "[O(0)]"]);
    assert_eq!(json(&o)["terms"][0]["c"]["a"], "2");
}

#[test]
fn coproduct_pairing_and_antipode() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["comul", "--backend", "torsion-local", "--q", "2", "[(1)]"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["complete"], true);
    assert_eq!(v["coproduct"]["terms"].as_array().unwrap().len(), 2);
    let o = run(dir.path(), &["pair", "--q", "2", "K", "K"]);
    assert_eq!(json(&o), serde_json::json!({"a": "2", "b": "0"}));
    let a = run(dir.path(), &["antipode", "--backend", "torsion-local", "[(2,1)]"]);
    let b = run(dir.path(), &["antipode", "--backend", "torsion-local", "--flag", "[(2,1)]"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn serre_and_verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["serre", "--quiver", "kronecker", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["relation"], "quantum Serre relation");
    let o = run(dir.path(), &["serre", "--quiver", "a2", "--q", "2", "--gauss"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(dir.path(), &["verify", "serre", "--quiver", "kronecker", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "pass");
}

#[test]
fn printed_reading_fails_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["double", "verify", "--family", "e-psi", "--rel", "4", "--range=-1..1", "--max-deg", "1"];
    let o = run(dir.path(), &args);
    assert_eq!(o.status.code(), Some(0));
    let mut printed = args.to_vec();
    printed.push("--printed");
    let o = run(dir.path(), &printed);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failing = v["cases"].as_array().unwrap().iter().find(|c| c["status"] == "fail").unwrap();
    assert!(failing["key"].as_str().unwrap().contains('='));
    assert_ne!(failing["lhs"], failing["rhs"]);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["zeta", "--colour"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["mul", "[O(x)]", "[O(1)]"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["mul", "--q", "6", "[O(1)]", "[O(1)]"]).status.code(), Some(2));
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"q": 2, "unknown": 1}"#).unwrap();
    assert_eq!(run(dir.path(), &["--config", cfg.to_str().unwrap(), "zeta"]).status.code(), Some(2));
}

#[test]
fn config_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"q": 3}"#).unwrap();
    let o = run(dir.path(), &["--config", cfg.to_str().unwrap(), "zeta", "--terms", "3"]);
    assert_eq!(json(&o), serde_json::json!([1, 4, 13]));
    let o = run(dir.path(), &["--config", cfg.to_str().unwrap(), "zeta", "--terms", "3", "--q", "2"]);
    assert_eq!(json(&o), serde_json::json!([1, 3, 7]));
}

#[test]
fn ledger_lifecycle_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["ledger"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), serde_json::json!([]));
    let first = run(dir.path(), &["verify", "pairings"]);
    assert_eq!(first.status.code(), Some(0));
    let ledger = json(&run(dir.path(), &["ledger"]));
    let entries = ledger.as_array().unwrap();
    assert!(entries.iter().any(|e| e["location"].as_str().unwrap().starts_with("orientation of the zeta ratio")));
    for e in entries {
        for k in ["location", "printedForm", "computedForm", "suite"] {
            assert!(e[k].is_string(), "{k}");
        }
    }
    let second = run(dir.path(), &["verify", "pairings"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(json(&run(dir.path(), &["ledger"])), ledger);
    assert!(dir.path().join("pairings.json").exists());
}

#[test]
fn eisenstein_hl_and_basis() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["eisenstein", "--q", "2", "--v", "0,0", "--trunc", "12"]));
    assert_eq!(v["counts"][0], 3);
    assert_eq!(v["counts"][1], 6);
    let v = json(&run(dir.path(), &["hl", "--mu", "1,1", "--n", "2", "--q", "2"]));
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 1);
    let o = run(dir.path(), &["basis-check", "--deg", "0", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
}
