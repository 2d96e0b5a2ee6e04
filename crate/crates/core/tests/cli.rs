use std::path::Path;
use std::process::{Command, Output};

use qhomology::linalg::{jordan_matrix, ExactMatrix, MatrixFile};
use qhomology::Field;
use serde_json::Value;

fn qh(args: &[&str]) -> Output {
  Command::new(env!("CARGO_BIN_EXE_qhomology"))
    .args(args)
    .env_remove("QHOMOLOGY_CACHE_DIR")
    .output()
    .expect("binary runs")
}

fn write_matrix(dir: &Path, name: &str, h: i64, m: &ExactMatrix) -> String {
  let f = Field::new(h).unwrap();
  let path = dir.join(name);
  std::fs::write(&path, MatrixFile::from_matrix(&f, m).to_json_string()).unwrap();
  path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value { serde_json::from_slice(&out.stdout).expect("JSON on stdout") }

#[test]
fn verify_is_deterministic() {
  let args = ["verify", "--height", "2", "--format", "json", "--seed", "9"];
  let a = qh(&args);
  let b = qh(&args);
  assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
  assert_eq!(a.stdout, b.stdout);
  let v = json(&a);
  assert_eq!(v["schema"], "qhomology/1");
  assert_eq!(v["passed"], true);
  let suites: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
  assert_eq!(suites, ["relations", "theorem0", "section3", "theorem1", "hochschild"]);
  assert!(v["suites"].as_array().unwrap().iter().all(|s| s["seed"] == 9 || s.get("seed").is_none()));
}

#[test]
fn verify_text_prints_dims_table() {
  let out = qh(&["verify", "--height", "3", "--suite", "theorem0,theorem1"]);
  assert_eq!(out.status.code(), Some(0));
  let text = String::from_utf8(out.stdout).unwrap();
  assert!(text.contains("h=3 theorem1   [1, 1]"), "{text}");
  assert!(text.contains("checks passed"));
}

#[test]
fn usage_errors() {
  assert_eq!(qh(&["verify", "--height", "1"]).status.code(), Some(2));
  assert_eq!(qh(&["verify", "--trials", "0"]).status.code(), Some(2));
  let out = qh(&["verify", "--height", "4", "--suite", "hochschild"]);
  assert_eq!(out.status.code(), Some(2));
  let err = String::from_utf8_lossy(&out.stderr);
  assert!(err.contains("--force") && err.contains("h^8 = 65536"), "{err}");
}

#[test]
fn homology_examples() {
  let dir = tempfile::tempdir().unwrap();
  let q3 = write_matrix(dir.path(), "q3.json", 3, &jordan_matrix(&[0, 0, 1]));
  let v = json(&qh(&["homology", &q3, "--format", "json"]));
  assert_eq!(v["dims"], serde_json::json!([0, 0]));

  let zero = write_matrix(dir.path(), "zero.json", 2, &ExactMatrix::zeros(5, 5));
  let v = json(&qh(&["homology", &zero, "--format", "json"]));
  assert_eq!(v["dims"], serde_json::json!([5]));
  assert_eq!(v["profile"]["multiplicities"], serde_json::json!([5, 0]));

  let mixed = write_matrix(dir.path(), "mixed.json", 3, &jordan_matrix(&[0, 1, 2]));
  let out = qh(&["homology", &mixed, "--format", "json"]);
  assert_eq!(out.status.code(), Some(0));
  let v = json(&out);
  assert_eq!(v["dims"], serde_json::json!([1, 1]));
  assert_eq!(v["formula_dims"], serde_json::json!([1, 1]));
  assert_eq!(v["formula_agrees"], true);

  let v = json(&qh(&["homology", &mixed, "--k", "2", "--format", "json"]));
  assert_eq!(v["dims"], serde_json::json!([1]));
  assert_eq!(qh(&["homology", &mixed, "--k", "3"]).status.code(), Some(2));
}

#[test]
fn homology_rejects_non_nilpotent() {
  let dir = tempfile::tempdir().unwrap();
  let id = write_matrix(dir.path(), "id.json", 2, &ExactMatrix::identity(3));
  let out = qh(&["homology", &id]);
  assert_eq!(out.status.code(), Some(1));
  assert!(String::from_utf8_lossy(&out.stderr).contains("not 2-nilpotent"));

  let q4 = write_matrix(dir.path(), "q4.json", 3, &jordan_matrix(&[0, 0, 0, 1]));
  let out = qh(&["homology", &q4]);
  assert_eq!(out.status.code(), Some(1));
  assert!(String::from_utf8_lossy(&out.stderr).contains("smallest vanishing power is 4"));

  assert_eq!(qh(&["homology", "/nonexistent/matrix.json"]).status.code(), Some(2));
}

#[test]
fn feasibility_examples() {
  let v = json(&qh(&["feasibility", "--dim", "16", "--height", "2", "--format", "json"]));
  assert_eq!(v["feasible"], false);
  let v = json(&qh(&["feasibility", "--dim", "3", "--height", "2", "--format", "json"]));
  assert_eq!(v["feasible"], true);
  assert_eq!(v["witnesses"], serde_json::json!([[1, 1]]));
  let v = json(&qh(&["feasibility", "--dim", "81", "--height", "3", "--format", "json"]));
  assert_eq!(v["feasible"], false);
}

#[test]
fn cache_and_out_file() {
  let dir = tempfile::tempdir().unwrap();
  let cache = dir.path().join("cache");
  let report = dir.path().join("report.json");
  let args =
    ["verify", "--height", "2", "--suite", "theorem0", "--cache-dir", cache.to_str().unwrap(), "--format", "json"];
  let first = qh(&args);
  assert_eq!(first.status.code(), Some(0));
  assert!(cache.join("zero-mode-h2-v1.json").exists());
  let mut with_out = args.to_vec();
  with_out.extend(["--out", report.to_str().unwrap()]);
  let second = qh(&with_out);
  assert_eq!(second.status.code(), Some(0));
  assert!(second.stdout.is_empty());
  assert_eq!(std::fs::read(&report).unwrap(), first.stdout);

  let env = Command::new(env!("CARGO_BIN_EXE_qhomology"))
    .args(["verify", "--height", "2", "--suite", "relations", "--no-cache"])
    .env("QHOMOLOGY_CACHE_DIR", &cache)
    .output()
    .unwrap();
  assert_eq!(env.status.code(), Some(0));
}
