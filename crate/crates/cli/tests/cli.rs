use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let out = Command::new(env!("CARGO_BIN_EXE_silting")).args(args).current_dir(dir).output().unwrap();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), doc)
}

#[test]
fn check_silting_on_p1_plus_s1() {
    let (code, doc) = run(&["check-silting", "-A", "a2.json", "-M", "p1_plus_s1.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"], true);
}

#[test]
fn enumerate_counts() {
    let (code, doc) = run(&["enumerate", "-A", "a3.json", "--kind", "silting"]);
    assert_eq!((code, doc["count"].as_u64()), (0, Some(14)));
    let (_, doc) = run(&["enumerate", "-A", "n3.json", "--kind", "indecomposables"]);
    assert_eq!(doc["count"], 6);
    let (_, doc) = run(&["enumerate", "-A", "a2.json", "--kind", "two-silting"]);
    assert_eq!(doc["count"], 5);
}

#[test]
fn presilting_complex_that_is_not_two_silting() {
    let (code, doc) = run(&["check-2silting", "-A", "a2.json", "-C", "p2_to_p1.json"]);
    assert_eq!(code, 1);
    assert_eq!(doc["witnesses"]["presilting"], true);
    assert_eq!(run(&["check-presilting", "-A", "a2.json", "-C", "p2_to_p1.json"]).0, 0);
    assert_eq!(run(&["check-2silting", "-A", "a2.json", "-C", "s2_tilde.json"]).0, 0);
}

#[test]
fn verdict_depends_on_the_presentation() {
    assert_eq!(run(&["check-silting", "-A", "a2.json", "-M", "s2.json", "-C", "s2_tilde.json"]).0, 0);
    assert_eq!(run(&["check-tilting", "-A", "a2.json", "-M", "s2.json"]).0, 1);
    assert_eq!(run(&["check-tilting", "-A", "a2.json", "-M", "a2_regular.json"]).0, 0);
}

#[test]
fn completion_and_approximation() {
    let (code, doc) = run(&["complete", "-A", "a2.json", "-M", "s1.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["witnesses"]["complement_dims"], serde_json::json!([3, 2]));
    let (code, doc) = run(&["approximate", "-A", "a2.json", "-M", "p1_plus_s1.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["witnesses"]["T1"], "S1");
    assert_eq!(run(&["complete", "-A", "a3.json", "-M", "a3_p1_plus_s2.json"]).0, 0);
}

#[test]
fn input_errors_exit_2_with_a_diagnostic() {
    let (code, doc) = run(&["check-silting", "-A", "a3.json", "-M", "p1_plus_s1.json"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["field"], "algebra");
    let (code, doc) = run(&["check-silting", "-A", "a2.json", "-M", "s1.json", "-p", "7"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["field"], "field.p");
    assert_eq!(run(&["check-tau-rigid", "-A", "a2.json"]).0, 2);
}

#[test]
fn tampered_report_fails_recheck() {
    let dir = std::env::temp_dir().join(format!("silting-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (_, mut doc) = run(&["check-silting", "-A", "a2.json", "-M", "p1_plus_s1.json"]);
    let good = dir.join("good.json");
    std::fs::write(&good, doc.to_string()).unwrap();
    assert_eq!(run(&["recheck", good.to_str().unwrap()]).0, 0);

    // bump the first claimed rank
    fn bump(v: &mut Value) -> bool {
        match v {
            Value::Object(m) if m.get("claim").and_then(Value::as_str) == Some("rank") => {
                let r = m["rank"].as_u64().unwrap();
                m.insert("rank".into(), Value::from(r + 1));
                true
            }
            Value::Object(m) => m.values_mut().any(bump),
            Value::Array(a) => a.iter_mut().any(bump),
            _ => false,
        }
    }
    assert!(bump(&mut doc));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (code, out) = run(&["recheck", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(out["failures"].as_array().unwrap().len(), 1);
    let _ = std::fs::remove_dir_all(&dir);
}
