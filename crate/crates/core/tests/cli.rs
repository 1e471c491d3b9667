use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn qlag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlag")).args(args).env_remove("QLAG_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn components_json_has_envelope() {
    let o = qlag(&["components", "--quiver", &data("jordan.json"), "--alpha", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tool"], "qlag");
    assert_eq!(v["config"]["command"], "components");
    assert_eq!(v["config"]["quiver"]["vertices"], serde_json::json!(["0"]));
    assert_eq!(v["result"]["components"].as_array().unwrap().len(), 5);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["verify", "--quiver", &data("g2.json"), "--alpha", "3", "--seed", "4"];
    let (a, b) = (qlag(&args), qlag(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rerun_reproduces_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<String>> = vec![
        vec!["components".into(), "--quiver".into(), data("pendant.json"), "--alpha".into(), "2,1".into(), "--format".into(), "table".into()],
        vec!["graph".into(), "--quiver".into(), data("jordan.json"), "--alpha".into(), "3".into()],
        vec!["sample".into(), "--quiver".into(), data("g2.json"), "--alpha".into(), "3".into(), "--label".into(), "1,2".into()],
        vec!["basis".into(), "--quiver".into(), data("jordan.json"), "--alpha".into(), "2".into(), "--seed".into(), "9".into()],
        vec!["euler".into(), "--quiver".into(), data("jordan.json"), "--alpha".into(), "2".into(), "--word".into(), "1,1".into(), "--label".into(), "2".into()],
    ];
    for (k, args) in runs.iter().enumerate() {
        let out = dir.path().join(format!("run{k}.out"));
        let again = dir.path().join(format!("again{k}.out"));
        let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
        let out_s = out.display().to_string();
        a.extend(["--out", &out_s]);
        let o = qlag(&a);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let r = qlag(&["rerun", "--from", &out_s, "--out", &again.display().to_string()]);
        assert_eq!(r.status.code(), Some(0));
        assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap(), "{args:?}");
    }
}

#[test]
fn seed_defaults_to_environment() {
    let args = ["sample", "--quiver", &data("jordan.json"), "--alpha", "3", "--label", "2,1"];
    let env = Command::new(env!("CARGO_BIN_EXE_qlag")).args(args).env("QLAG_SEED", "17").output().unwrap();
    let mut explicit: Vec<&str> = args.to_vec();
    explicit.extend(["--seed", "17"]);
    let flag = qlag(&explicit);
    assert_eq!(env.stdout, flag.stdout);
    let v: Value = serde_json::from_str(&stdout(&env)).unwrap();
    assert_eq!(v["config"]["seed"], 17);
    let bad = Command::new(env!("CARGO_BIN_EXE_qlag")).args(args).env("QLAG_SEED", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(64));
}

#[test]
fn exit_codes() {
    assert_eq!(qlag(&["--version"]).status.code(), Some(0));
    assert_eq!(qlag(&["--help"]).status.code(), Some(0));
    assert_eq!(qlag(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(qlag(&["components", "--quiver", "/nonexistent.json", "--alpha", "2"]).status.code(), Some(66));
    assert_eq!(qlag(&["components", "--quiver", &data("jordan.json"), "--alpha", "2,2"]).status.code(), Some(64));
    assert_eq!(qlag(&["sample", "--quiver", &data("jordan.json"), "--alpha", "3", "--label", "2,2"]).status.code(), Some(64));
    assert_eq!(qlag(&["components", "--quiver", &data("jordan.json"), "--alpha", "2", "--primes", "2,4"]).status.code(), Some(64));
    let e = qlag(&["euler", "--quiver", &data("jordan.json"), "--alpha", "3", "--word", "1,1,1", "--label", "3", "--primes", "2,3"]);
    assert_eq!(e.status.code(), Some(2));
    assert!(!e.stderr.is_empty());
}

#[test]
fn table_and_dot_headers_carry_config() {
    let t = qlag(&["components", "--quiver", &data("g3.json"), "--alpha", "2", "--format", "table"]);
    assert!(stdout(&t).starts_with("# qlag "));
    let d = qlag(&["graph", "--quiver", &data("g3.json"), "--alpha", "2"]);
    let s = stdout(&d);
    assert!(s.starts_with("// qlag "));
    assert!(s.lines().next().unwrap().contains("config={"));
    assert!(s.contains("digraph"));
}
