use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn certkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_certkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(path: impl AsRef<Path>) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_is_deterministic_in_the_seed() {
    let a = certkit(&["gen", "subset-sum", "--n", "8", "--max", "50", "--seed", "11"]);
    let b = certkit(&["gen", "subset-sum", "--n", "8", "--max", "50", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let kinds = ["knapsack", "unbounded", "cnf", "and-sat", "zkk", "cm"];
    for kind in kinds {
        let a = certkit(&["gen", kind, "--seed", "5"]);
        let b = certkit(&["gen", kind, "--seed", "5"]);
        assert!(a.status.success(), "{kind}");
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
}

#[test]
fn solve_exit_codes_follow_the_answer() {
    let dir = TempDir::new().unwrap();
    let yes = write(&dir, "yes.json", r#"{"problem":"subset_sum","items":["3","5","7"],"target":"12"}"#);
    let no = write(&dir, "no.json", r#"{"problem":"subset_sum","items":["3","5","7"],"target":"11"}"#);
    let bad = write(&dir, "bad.json", r#"{"problem":"subset_sum","items":["x"]}"#);
    assert_eq!(certkit(&["solve", &yes]).status.code(), Some(0));
    assert_eq!(certkit(&["solve", &no]).status.code(), Some(1));
    assert_eq!(certkit(&["solve", &bad]).status.code(), Some(2));
    let out = certkit(&["--json", "solve", &yes]);
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["answer"], "yes");
}

#[test]
fn reduce_writes_target_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "ss.json", r#"{"problem":"subset_sum","items":["3","5","7"],"target":"12"}"#);
    let out = dir.path().join("zq.json");
    let o = certkit(&["reduce", "ss-to-zq", &src, "--synthesize", "--guard", "off", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let target = json(&out);
    assert_eq!(target["modulus"], "36");
    let side = json(dir.path().join("zq.json.sidecar.json"));
    assert_eq!(side["reduction"], "ss-to-zq");
    assert_eq!(side["guard"], "off");
    assert_eq!(side["source_sha256"].as_str().unwrap().len(), 64);

    // Wrong witness length and no-instance synthesis.
    assert_eq!(certkit(&["reduce", "ss-to-zq", &src, "--witness", "ff"]).status.code(), Some(2));
    let no = write(&dir, "no.json", r#"{"problem":"subset_sum","items":["3","5","7"],"target":"11"}"#);
    assert_eq!(certkit(&["reduce", "ss-to-zq", &no, "--synthesize"]).status.code(), Some(1));
    assert_eq!(certkit(&["reduce", "no-such-reduction", &src]).status.code(), Some(2));
}

#[test]
fn verify_reports_violations_and_skips() {
    let ok = certkit(&["verify", "identity:subset_sum", "--family", "ss-grid:2,3,6"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("0 violations"));

    let bad = certkit(&["verify", "corrupted-ss-shift", "--family", "ss-grid:2,3,6"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("VIOLATION"));

    let partial = certkit(&["verify", "ss-to-monotone", "--family", "ss-grid:2,3,6", "--guard", "off", "--max-witness-bits", "2"]);
    assert_eq!(partial.status.code(), Some(4));

    let full = certkit(&["--json", "verify", "ss-to-monotone", "--family", "ss-grid:2,3,6", "--guard", "off"]);
    assert_eq!(full.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&full).trim()).unwrap();
    assert_eq!(v["instances"], 105);

    assert_eq!(certkit(&["verify", "ss-to-zq", "--family", "nonsense:1"]).status.code(), Some(2));
}

#[test]
fn cert_check_accepts_honest_certificates() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.json", r#"{"problem":"unbounded_subset_sum","items":["3","5"],"target":"11"}"#);
    let o = certkit(&["--json", "cert-check", "unbounded", &u]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["answer"], "yes");
    assert!(v["cert_len"].as_u64().unwrap() <= v["budget_bound"].as_u64().unwrap());

    let z = certkit(&["gen", "zkk", "--k", "2", "--n", "5", "--seed", "9", "--out", dir.path().join("z.json").to_str().unwrap()]);
    assert!(z.status.success());
    let o = certkit(&["cert-check", "zkk", dir.path().join("z.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}
