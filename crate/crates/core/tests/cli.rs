use std::fs;
use std::path::PathBuf;

use ribbonmod::cli::run;
use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ribbon(args: &[&str]) -> (i32, Value, String) {
    let out = run(std::iter::once("ribbon").chain(args.iter().copied()));
    let report = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, report, out.stderr)
}

#[test]
fn analyze_torus_theta() {
    let (code, report, _) = ribbon(&["analyze", &corpus("g_t1.json")]);
    assert_eq!(code, 0);
    let r = &report["result"];
    assert_eq!(r["genus"], 1);
    assert_eq!(r["faces"], 1);
    assert_eq!(r["distinguished"], 1);
    assert_eq!(r["aut_order"], 6);
    assert!(r["certificate"].is_string());
}

#[test]
fn euler_suite_genus_one() {
    let (code, report, _) = ribbon(&["verify", "--suite", "euler", "--genus", "1", "--points", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["status"], "ok");
    assert_eq!(report["result"]["pass"], true);
    assert_eq!(report["result"]["value"], "-1/12");
}

#[test]
fn malformed_file_exits_with_usage_code() {
    let dir = std::env::temp_dir().join(format!("ribbon-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("malformed.json");
    fs::write(&path, r#"{"half_edges": 3, "pointing": {}, "sigma0": [[0, 1, 2]]}"#).unwrap();
    let (code, report, stderr) = ribbon(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("FixedPointInPairing"));
    assert_eq!(report["error"]["name"], "FixedPointInPairing");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors() {
    let (code, _, _) = ribbon(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, stderr) = ribbon(&["enumerate", "--genus", "0", "--points", "2"]);
    assert_eq!(code, 3);
    assert!(stderr.starts_with("UnstablePair"));
}

#[test]
fn collapse_and_stabilize() {
    let (code, report, _) = ribbon(&["collapse", &corpus("g_t1.json"), "--edges", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["report"]["negligible"], true);
    let (code, report, _) = ribbon(&["stabilize", &corpus("g_f8q.json"), "--edges", "0"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["orders"], serde_json::json!([0, 1]));
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let args = ["ribbon", "enumerate", "--genus", "0", "--points", "4", "--complex", "--report", "dims"];
    let first = run(args);
    let second = run(args);
    assert_eq!(first.stdout, second.stdout);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let single = pool.install(|| run(args));
    assert_eq!(first.stdout, single.stdout);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let four = pool.install(|| run(args));
    assert_eq!(first.stdout, four.stdout);
}

#[test]
fn failing_suite_exits_with_property_code() {
    let (code, report, stderr) = ribbon(&["verify", "--suite", "dims", "--genus", "0", "--points", "3"]);
    assert_eq!(code, 3);
    assert_eq!(report["status"], "error");
    assert_eq!(report["error"]["name"], "CheckFailed");
    assert_eq!(report["result"]["checks"]["chain_length"], false);
    assert!(stderr.starts_with("CheckFailed"));
    let (code, _, _) = ribbon(&["verify", "--suite", "farey", "--genus", "1", "--points", "1"]);
    assert_eq!(code, 0);
}
