use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn glocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glocal")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = glocal(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn statuses(v: &Value) -> Vec<String> {
    v["verdicts"].as_array().unwrap().iter().map(|x| x["status"].as_str().unwrap().to_string()).collect()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("glocal-test-{}-{name}", std::process::id()))
}

#[test]
fn dm_check_matches_two_classes() {
    let (code, v) = report(&["dm-check", "--s", "1", "--q", "3", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["matched"], 2);
    assert_eq!(v["status"], "pass");
}

#[test]
fn seven_simplices_for_gl3() {
    let (code, v) = report(&["building", "simplices", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"], 7);
    assert_eq!(v["results"]["simplices"][6], serde_json::json!([0, 1, 2]));
}

#[test]
fn missing_config_is_invalid() {
    assert_eq!(glocal(&["run", "--config", "missing.json"]).status.code(), Some(2));
}

#[test]
fn bad_arguments_are_invalid() {
    assert_eq!(glocal(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(glocal(&["satake", "--n", "2", "--p", "4", "--lambda", "1,0"]).status.code(), Some(2));
    assert_eq!(glocal(&["dm-check", "--s", "1"]).status.code(), Some(2));
    assert_eq!(glocal(&["lfactor", "--rep", "sym", "--params", "a", "--q", "2"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    assert_eq!(glocal(&["--cap", "100", "dm-check", "--s", "2", "--q", "4", "--n", "2"]).status.code(), Some(3));
}

#[test]
fn ub_audit_is_documented_not_failed() {
    let (code, v) = report(&["building", "audit", "ub", "--n", "2", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(statuses(&v), ["documented"]);
    assert_eq!(v["results"]["product_size"], 4);
    assert_eq!(v["results"]["counterexamples"][0], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn config_file_dispatches() {
    let cfg = scratch("cfg.json");
    let out = scratch("out.json");
    let text = serde_json::json!({
        "command": "cartan",
        "parameters": { "roots": [[1, -1, 0], [-2, 1, 1]], "ds": true },
        "output": out.to_str().unwrap(),
    });
    std::fs::write(&cfg, text.to_string()).unwrap();
    let o = glocal(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["results"]["ds"]["s"], serde_json::json!([["2/3", "-1"], ["-1", "2"]]));
    assert_eq!(v["results"]["cartan"], serde_json::json!([[2, -3], [-1, 2]]));
    std::fs::write(&cfg, r#"{"command": "cartan", "bogus": 1}"#).unwrap();
    assert_eq!(glocal(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let _ = std::fs::remove_file(cfg);
    let _ = std::fs::remove_file(out);
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["satake", "--n", "2", "--p", "3", "--lambda", "2,0"][..],
        &["--seed", "11", "h1", "--s", "1", "--p", "2", "--d", "2", "--level", "2"][..],
        &["lfactor", "bc", "--d", "2", "--rep", "wedge2", "--params", "a,b,c", "--q", "5"][..],
    ] {
        let (_, a) = report(args);
        let (_, b) = report(args);
        assert_eq!(a["digest"], b["digest"]);
        assert_eq!(strip_timing(a), strip_timing(b));
    }
}

#[test]
fn json_has_no_floats_and_every_verdict_is_anchored() {
    fn no_floats(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.is_i64() || n.is_u64(),
            Value::Array(a) => a.iter().all(no_floats),
            Value::Object(o) => o.values().all(no_floats),
            _ => true,
        }
    }
    for args in [
        &["roots", "g2"][..],
        &["cartan", "--roots", "[[1,-1,0],[-2,1,1]]", "--check", "--ds"][..],
        &["lang", "image", "--p", "3", "--d", "2"][..],
        &["hecke", "gl1", "--phi", "tame:1", "--p", "5", "--f", "1:2,0:1", "--g=-1:3"][..],
        &["lfactor", "rankin", "--left", "a,b", "--right", "c", "--q", "2"][..],
        &["building", "iwasawa", "--matrix", "[[3,2],[4,1]]", "--p", "2", "--precision", "6", "--offset", "-1"][..],
    ] {
        let (code, v) = report(args);
        assert_eq!(code, 0, "{args:?}");
        assert!(no_floats(&v));
        for verdict in v["verdicts"].as_array().unwrap() {
            assert!(!verdict["anchor"].as_str().unwrap().is_empty());
        }
    }
}

#[test]
fn paper_audit_suite_passes_with_one_documented_finding() {
    let (code, v) = report(&["suite", "paper-audit"]);
    assert_eq!(code, 0);
    let s = statuses(&v);
    assert_eq!(s.len(), 10);
    assert_eq!(s.iter().filter(|x| *x == "documented").count(), 1);
    assert_eq!(s[7], "documented");
    assert!(s.iter().all(|x| x == "pass" || x == "documented"));
}
