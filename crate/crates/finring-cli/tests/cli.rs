//! Black-box tests of the `finring` binary: exit codes, JSON output shapes,
//! cache files, and the env-var cap override.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_finring")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn finring")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("finring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_reports_unituc() {
    let out = run(&["classify", "Z(4)", "--props", "unituc"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("unituc: true"));

    let out = run(&["classify", "M(2,Z(2))", "--props", "unituc,clean", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let verdicts: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(verdicts[0]["property"], "unituc");
    assert_eq!(verdicts[0]["holds"], false);
    assert!(verdicts[0]["witness"].is_object());
    assert_eq!(verdicts[1]["property"], "clean");
    assert_eq!(verdicts[1]["holds"], true);
    assert!(verdicts[1]["witness"].is_null());
}

#[test]
fn eval_json_shape() {
    let out = run(&["eval", "T(2,Z(2))", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["units"], 2);
    assert_eq!(v["label"], "T(2,Z(2))");
}

#[test]
fn decompose_lists_pairs() {
    let out = run(&["decompose", "Z(4)", "--element", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["element"], 2);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 1);
    assert_eq!(v["pairs"][0]["idempotent"], 1);

    let out = run(&["decompose", "Z(4)", "--element", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn elements_table_respects_limit() {
    let out = run(&["elements", "GF(2,2)", "--limit", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("w"));
}

#[test]
fn parse_and_construct_exit_codes() {
    assert_eq!(run(&["classify", "Zx(4)"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "MnS(3,Z(4),1)"]).status.code(), Some(3));
    assert_eq!(run(&["eval", "Corner(Z(4),3)"]).status.code(), Some(3));
}

#[test]
fn cap_env_override() {
    let out = Command::new(bin())
        .args(["eval", "M(2,Z(4))"])
        .env("FINRING_MAX_ORDER", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "256 > 100 should be rejected");
    let out = Command::new(bin())
        .args(["eval", "M(2,Z(4))"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cache_roundtrip_via_cli() {
    for (format, name) in [("json", "c.json"), ("bin", "c.frc")] {
        let path = temp_path(name);
        let out = run(&["cache", "Ks(Z(4),2)", "--out", path.to_str().unwrap(), "--format", format]);
        assert_eq!(out.status.code(), Some(0), "{format} save failed");
        let out = run(&["eval", "--from-cache", path.to_str().unwrap(), "--json"]);
        assert_eq!(out.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["order"], 256);
        // J of the twisted 2x2 ring at s = 2: both diagonal entries in J(Z4),
        // off-diagonal entries free, e.g. 2*4*4*2 elements
        assert_eq!(v["radical"], 64);
    }
}

fn small_corpus_file() -> PathBuf {
    let path = temp_path("corpus.json");
    let corpus = serde_json::json!([
        {"id": "Z2", "expr": "Z(2)", "expected": {"unituc": true}},
        {"id": "Z4", "expr": "Z(4)", "expected": {"unituc": true}},
        {"id": "M2_Z2", "expr": "M(2,Z(2))", "expected": {"unituc": false}},
        {"id": "M2_Z4", "expr": "M(2,Z(4))", "expected": {"unituc": false}},
    ]);
    std::fs::write(&path, serde_json::to_string_pretty(&corpus).unwrap()).unwrap();
    path
}

#[test]
fn verify_subset_on_custom_corpus() {
    let corpus = small_corpus_file();
    let out = run(&[
        "verify",
        "--suite",
        "EX-MAT,LEM-2J,THM-CHAR",
        "--corpus",
        corpus.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["failures"], 0);
    let suite = report["suite"].as_array().unwrap();
    assert_eq!(suite.len(), 3);
    assert_eq!(suite[0]["theorem"], "EX-MAT");
    // EX-MAT retains the replayed witness display as detail
    assert!(suite[0]["results"][0]["detail"]
        .as_str()
        .unwrap()
        .contains("witness replayed"));

    // parallel run agrees
    let out2 = run(&[
        "verify",
        "--suite",
        "EX-MAT,LEM-2J,THM-CHAR",
        "--corpus",
        corpus.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(out2.status.code(), Some(0));
}

#[test]
fn verify_rejects_unknown_suite() {
    let corpus = small_corpus_file();
    let out = run(&[
        "verify",
        "--suite",
        "NO-SUCH-THEOREM",
        "--corpus",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
