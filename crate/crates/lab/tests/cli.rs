use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hall-lab"));
    c.env_remove("HALL_LAB_STEP_BUDGET");
    c
}

fn write(name: &str, v: &Value) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, v.to_string()).unwrap();
    path
}

fn s3() -> PathBuf {
    write("s3.json", &json!({ "kind": "family", "family": "symmetric", "n": 3 }))
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let Output { status, stdout, stderr } = bin().args(args).output().unwrap();
    let stdout = String::from_utf8(stdout).unwrap();
    let doc = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {stdout}"))
    };
    (status.code().unwrap(), doc, String::from_utf8(stderr).unwrap())
}

#[test]
fn group_info_on_sym3() {
    let s3 = s3();
    let (code, doc, _) = run(&["group", "info", "--in", s3.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["order"], 6);
    assert_eq!(doc["abelian"], false);
    assert_eq!(doc["involutions"], 3);
}

#[test]
fn tower_stage_three() {
    let (code, doc, _) = run(&["tower", "stage", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["order"], 720);
}

#[test]
fn order_discriminator_on_structure() {
    let s3 = s3();
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("s3_structure.json");
    let (code, _, _) = run(&["exaut", "build", "--in", s3.to_str().unwrap(), "--max-order", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, doc, _) = run(&["discriminate", "order", "--in", out.to_str().unwrap(), "--node", "top"]);
    assert_eq!(code, 0);
    assert_eq!(doc["order_qf"], 6);
    assert_eq!(doc["ground_truth"], 6);
}

#[test]
fn output_is_byte_stable() {
    let s3 = s3();
    let args = ["exaut", "build", "--in", s3.to_str().unwrap(), "--max-order", "6"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn negative_result_exits_one() {
    let c4 = write("c4.json", &json!({ "kind": "family", "family": "cyclic", "n": 4 }));
    let v4 = write("v4.json", &json!({ "kind": "family", "family": "klein" }));
    let (code, doc, _) = run(&["group", "iso", "--in", c4.to_str().unwrap(), "--other", v4.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["isomorphic"], false);
}

#[test]
fn reconstruction_exit_codes() {
    let s3 = s3();
    // (0 1) and (0 2) swapped, (1 2) fixed: conjugation by (1 2).
    let map = write(
        "swap.json",
        &json!({ "assignment": [[[1, 0, 2], [2, 1, 0]], [[2, 1, 0], [1, 0, 2]], [[0, 2, 1], [0, 2, 1]]] }),
    );
    let (code, doc, _) = run(&["reconstruct", "--in", s3.to_str().unwrap(), "--map", map.to_str().unwrap()]);
    assert_eq!(code, 0, "{doc}");
    // The one involution of C4 does not generate it.
    let c4 = write("c4r.json", &json!({ "kind": "family", "family": "cyclic", "n": 4 }));
    let map = write("c4map.json", &json!({ "assignment": [[2, 2]] }));
    let (code, doc, _) = run(&["reconstruct", "--in", c4.to_str().unwrap(), "--map", map.to_str().unwrap()]);
    assert_eq!(code, 1, "{doc}");
    assert!(doc["error"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, stderr) = run(&["group", "info", "--in", "/nonexistent/group.json"]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("hall-lab:"), "{stderr}");
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn empty_corpus_exits_zero() {
    let spec = write("empty_corpus.json", &json!({ "entries": [] }));
    let (code, doc, _) = run(&["corpus", "run", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["entries"], json!([]));
}

#[test]
fn non_associative_table_exits_two() {
    // A Latin square with identity 0 that is not associative.
    let table = json!([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0]
    ]);
    let spec = write("bad_corpus.json", &json!({ "entries": [{ "kind": "table", "name": "loop-5", "table": table }] }));
    let (code, _, stderr) = run(&["corpus", "run", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("loop-5"), "{stderr}");
    assert!(stderr.contains("associative") || stderr.contains("NotAGroup"), "{stderr}");
}

#[test]
fn outer_s6_probe() {
    let (code, doc, _) = run(&["probe", "outer-s6"]);
    assert_eq!(code, 0);
    assert_eq!(doc["inner_conjugator"], Value::Null);
    assert!(doc["square_inner_conjugator"]["index"].is_number());
}
