use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mvlab(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mvlab"))
        .args(args)
        .env_remove("MVLAB_MAX_CELLS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const ZERO2: &str = r#"{"schema":"mvlab.lusztig/1","n":2,"a":{}}"#;

#[test]
fn apply_agrees_on_the_two_string_forms() {
    let a = mvlab(&["apply", "--ops", "f1 f2 f2 f1"], ZERO2);
    let b = mvlab(&["apply", "--ops", "f2 f1 f1 f2"], ZERO2);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["a"], serde_json::json!({ "1,2": 1, "1,3": 1, "2,3": 1 }));
}

#[test]
fn bottom_has_its_own_exit_code() {
    let out = mvlab(&["apply", "--ops", "f1 e2"], ZERO2);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["step"], 1);
}

#[test]
fn psi_of_zero_is_zero() {
    let out = mvlab(&["psi"], ZERO2);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "mvlab.bz/1");
    assert_eq!(v["flavor"], "e");
    assert!(v["M"].as_object().unwrap().values().all(|x| x == 0));
}

#[test]
fn polytope_accepts_lusztig_and_bz_input() {
    let a = r#"{"n":1,"a":{"1,2":2}}"#;
    let from_datum = mvlab(&["polytope"], a);
    assert!(from_datum.status.success());
    let want = r#"{"schema":"mvlab.mv_polytope/1","vertices":[{"w":[1,2],"mu":[-2,2]},{"w":[2,1],"mu":[0,0]}],"halfspaces":[{"K":[1],"M":-2},{"K":[2],"M":0}]}"#;
    assert_eq!(String::from_utf8_lossy(&from_datum.stdout).trim(), want);
    let bz = mvlab(&["psi"], a);
    let from_bz = mvlab(&["polytope"], std::str::from_utf8(&bz.stdout).unwrap());
    assert_eq!(from_bz.stdout, from_datum.stdout);
}

#[test]
fn quiver_describes_a_diagram() {
    let out = mvlab(&["quiver", "--n", "3", "--maya", "2,3"], "");
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["K"], serde_json::json!([2, 3]));
    assert_eq!(v["beta"], serde_json::json!([1, 3]));
    assert_eq!(v["orientation"]["dirs"], "LL");
    assert_eq!(v["sinks"], serde_json::json!([1]));
    assert_eq!(v["sources"], serde_json::json!([3]));
    assert_eq!(v["adapted_word"].as_array().unwrap().len(), 6);
}

#[test]
fn lagrangian_report_matches() {
    let out = mvlab(&["lagrangian", "--p", "65521", "--seed", "5"], r#"{"n":2,"a":{"1,2":1,"2,3":2}}"#);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["m_k"].as_array().unwrap().len(), 6);
}

#[test]
fn enumerate_streams_lines() {
    let out = mvlab(&["enumerate", "--n", "2", "--max-height", "2"], "");
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 10);
}

#[test]
fn enumeration_cap_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mvlab"))
        .args(["enumerate", "--n", "3", "--max-height", "5"])
        .env("MVLAB_MAX_CELLS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].as_str().unwrap().contains("cap"));
}

#[test]
fn verify_passes_and_is_reproducible() {
    let a = mvlab(&["verify", "--suite", "bz-axioms", "--n", "3", "--max-height", "5", "--jobs", "2"], "");
    let b = mvlab(&["verify", "--suite", "bz-axioms", "--n", "3", "--max-height", "5", "--jobs", "1"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert!(v["instances"].as_u64().unwrap() > 0);
}

#[test]
fn bad_input_is_a_json_error() {
    for (args, stdin) in [
        (vec!["psi"], "not json"),
        (vec!["apply", "--ops", "g1"], ZERO2),
        (vec!["verify", "--suite", "nope"], ""),
        (vec!["quiver", "--n", "2", "--maya", "1,2,3"], ""),
        (vec!["lagrangian", "--p", "12"], ZERO2),
        (vec!["frobnicate"], ""),
    ] {
        let out = mvlab(&args, stdin);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(json(&out)["error"].is_string(), "{args:?}");
    }
}
