use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_repcontain"));
    c.env_remove("REPCONTAIN_THREADS");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn su2_files(dir: &Path) -> (PathBuf, PathBuf) {
    (
        write(dir, "rho.json", r#"{"n":2,"terms":[{"partition":[1],"mult":2}]}"#),
        write(dir, "sigma.json", r#"{"n":2,"terms":[{"partition":[],"mult":1},{"partition":[1],"mult":1},{"partition":[2],"mult":1}]}"#),
    )
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_reports_the_su2_example() {
    let dir = TempDir::new().unwrap();
    let (rho, sigma) = su2_files(dir.path());
    let v = json(&bin().args(["check", "--rho"]).arg(&rho).arg("--sigma").arg(&sigma).output().unwrap());
    assert_eq!(v["condition_real"]["status"], "certified_strict");
    assert_eq!(v["condition_tropical"], true);
    assert_eq!(v["asymptotic"]["minimal_n"], 3);
    assert!(v["converse_report"].as_array().unwrap().iter().all(|r| r["witness_verified"] == true));
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let (rho, _) = su2_files(dir.path());
    let bad = write(dir.path(), "bad.json", "{\"n\":2,");
    let out = bin().args(["check", "--rho"]).arg(&bad).arg("--sigma").arg(&rho).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid representation JSON"));

    let zero = write(dir.path(), "zero.json", r#"{"n":2,"terms":[{"partition":[1],"mult":0}]}"#);
    let out = bin().args(["trop", "--rep"]).arg(&zero).args(["--direction", "1,-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin().args(["char", "--rep"]).arg(&rho).args(["--point", "2,2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "point off the slice");

    let out = bin().args(["check", "--rho"]).arg(&rho).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "missing argument");
}

#[test]
fn non_canonical_input_warns() {
    let dir = TempDir::new().unwrap();
    let rep = write(dir.path(), "r.json", r#"{"n":2,"terms":[{"partition":[3,1],"mult":1}]}"#);
    let out = bin().args(["trop", "--rep"]).arg(&rep).args(["--direction", "1,-1"]).output().unwrap();
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(stderr.contains("not canonical"), "{stderr}");
    assert_eq!(json(&out)["value"], "2/1");
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    let rho = write(dir.path(), "rho.json", r#"{"n":3,"terms":[{"partition":[],"mult":2}]}"#);
    let sigma = write(dir.path(), "sigma.json", r#"{"n":3,"terms":[{"partition":[],"mult":1},{"partition":[1],"mult":1}]}"#);
    let run = |threads: &str, via_env: bool| {
        let mut c = bin();
        c.args(["check", "--rho"]).arg(&rho).arg("--sigma").arg(&sigma);
        if via_env {
            c.env("REPCONTAIN_THREADS", threads).args(["--threads", "3"]);
        } else {
            c.args(["--threads", threads]);
        }
        let out = c.output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let reference = run("1", false);
    assert_eq!(run("8", false), reference);
    assert_eq!(run("2", true), reference);
    assert_eq!(run("1", false), reference);
}

#[test]
fn bad_thread_variable_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let (rho, _) = su2_files(dir.path());
    let out = bin().env("REPCONTAIN_THREADS", "zero").args(["trop", "--rep"]).arg(&rho).args(["--direction", "1,-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn su2_certify_prints_the_polynomial() {
    let dir = TempDir::new().unwrap();
    let (rho, sigma) = su2_files(dir.path());
    let v = json(&bin().args(["su2-certify", "--rho"]).arg(&rho).arg("--sigma").arg(&sigma).output().unwrap());
    assert_eq!(v["certificate"], "certified");
    assert_eq!(v["g"], serde_json::json!([1, -1, 2, -1, 1]));
    assert_eq!(v["g_at_one"], "2/1");
}

#[test]
fn char_tensor_and_wp_commands() {
    let dir = TempDir::new().unwrap();
    let (rho, sigma) = su2_files(dir.path());
    let v = json(&bin().args(["char", "--rep"]).arg(&sigma).args(["--point", "2,1/2"]).output().unwrap());
    assert_eq!(v["value"], "35/4");

    let v = json(&bin().args(["tensor", "--rep"]).arg(&rho).args(["--power", "3"]).output().unwrap());
    assert_eq!(v["dimension"], 64);

    let v = json(&bin().args(["wp", "--rep"]).arg(&rho).arg("--rep").arg(&sigma).output().unwrap());
    let pairs = v["pairs"].as_array().unwrap();
    let forward = pairs.iter().find(|p| p["inner"] == 0).unwrap();
    assert_eq!(forward["strictly_contained"], true);
    let backward = pairs.iter().find(|p| p["inner"] == 1).unwrap();
    assert_eq!(backward["contained"], false);
}

#[test]
fn selftest_passes_and_warns_on_empty_corpus() {
    let dir = TempDir::new().unwrap();
    let out = bin().args(["selftest", "--corpus"]).arg(dir.path()).output().unwrap();
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn help_exits_with_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
