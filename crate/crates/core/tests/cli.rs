use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfpres"))
}

fn tables() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("paper-tables.json")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn decomposition(v: &Value) -> Vec<(Vec<u64>, u64)> {
    v["decomposition"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let p = e["partition"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            (p, e["mult"].as_u64().unwrap())
        })
        .collect()
}

#[test]
fn compute_examples() {
    let out = run(&["compute", "--functor", "H", "--rank", "3", "--hopf", "sym", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(decomposition(&v), vec![(vec![2, 1], 1)]);
    assert_eq!(v["total_dims"]["3"], 8);
    assert_eq!(v["total_dims"]["4"], 20);

    let text = String::from_utf8(out.stdout).unwrap();
    let keys = ["\"functor\"", "\"rank\"", "\"hopf\"", "\"degree\"", "\"decomposition\"", "\"total_dims\"", "\"engine_version\""];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "field order");

    for args in [
        ["compute", "--functor", "Omega", "--rank", "2", "--hopf", "sym", "--degree", "5"],
        ["compute", "--functor", "H", "--rank", "1", "--hopf", "sym", "--degree", "4"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0));
        assert!(decomposition(&json(&out)).is_empty());
    }
}

#[test]
fn compute_sorts_partitions_descending() {
    let out = run(&["compute", "--functor", "Omega", "--rank", "3", "--hopf", "sym", "--degree", "5"]);
    let parts: Vec<Vec<u64>> = decomposition(&json(&out)).into_iter().map(|(p, _)| p).collect();
    assert_eq!(parts, vec![vec![5], vec![4, 1], vec![3, 2], vec![3, 1, 1], vec![2, 2, 1]]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["compute", "--functor", "H", "--rank", "7", "--hopf", "sym", "--degree", "3"],
        vec!["compute", "--functor", "H", "--rank", "3", "--hopf", "sym"],
        vec!["compute", "--functor", "X", "--rank", "3", "--hopf", "sym", "--degree", "3"],
        vec!["compute", "--functor", "Omega", "--rank", "3", "--hopf", "sym", "--degree", "3", "--parity", "odd"],
        vec!["compute", "--functor", "H", "--rank", "3", "--hopf", "sym", "--degree", "3", "--parity", "even"],
        vec!["bounds", "--functor", "H", "--rank", "2", "--degree", "4", "--hopf", "tensor"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_is_identical_across_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let base = ["compute", "--functor", "Omega", "--rank", "3", "--hopf", "sym", "--degree", "6"];
    let with = |extra: &[&str]| {
        let mut a = base.to_vec();
        a.extend_from_slice(extra);
        let out = run(&a);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let reference = with(&["--jobs", "1"]);
    assert_eq!(with(&["--jobs", "4"]), reference);
    assert_eq!(with(&["--jobs", "3", "--cache-dir", cache]), reference);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    assert_eq!(with(&["--jobs", "2", "--cache-dir", cache]), reference);
}

#[test]
fn verify_rank2_sym_matches() {
    let t = tables();
    let out = run(&["verify", "--against", t.to_str().unwrap(), "--max-degree", "8", "--hopf", "sym", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["matched"], 18);
    assert_eq!(v["mismatched"], 0);
}

#[test]
fn verify_detects_corrupted_entry() {
    let mut table: Value = serde_json::from_str(&std::fs::read_to_string(tables()).unwrap()).unwrap();
    table["figures"][0]["columns"][0]["cells"]["6"] = Value::from("[51]+[42]");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&table).unwrap()).unwrap();
    let out = run(&[
        "verify", "--against", path.to_str().unwrap(), "--max-degree", "6", "--min-degree", "6",
        "--hopf", "sym", "--rank", "2", "--functor", "H",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["mismatched"], 1);
    let row = &v["results"][0];
    assert_eq!(row["status"], "MISMATCH");
    assert_eq!(row["diff"][0]["partition"], serde_json::json!([4, 2]));
    assert_eq!(row["diff"][0]["expected"], 1);
    assert_eq!(row["diff"][0]["computed"], 0);
}

#[test]
fn verify_reports_unknown_cells_as_new() {
    let table = serde_json::json!({"figures": [{"caption": "scratch", "columns": [
        {"functor": "H", "rank": 2, "hopf": "sym", "cells": {"10": "?", "4": "[31]"}}
    ]}]});
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(&path, table.to_string()).unwrap();
    let out = run(&["verify", "--against", path.to_str().unwrap(), "--max-degree", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["matched"].as_u64(), v["new"].as_u64()), (Some(1), Some(1)));
    let new = v["results"].as_array().unwrap().iter().find(|r| r["status"] == "NEW").unwrap();
    assert_eq!(new["computed"], "[{10}]+[91]+[73]");
}

#[test]
fn verify_io_errors_exit_2() {
    let out = run(&["verify", "--against", "/nonexistent/tables.json", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"figures\": [").unwrap();
    let out = run(&["verify", "--against", path.to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_examples() {
    let out = run(&["bounds", "--functor", "Omega", "--rank", "2", "--degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["relation"] == "="));
    let nonzero: Vec<(Value, Value)> = rows
        .iter()
        .filter(|r| r["computed"] != 0)
        .map(|r| (r["partition"].clone(), r["computed"].clone()))
        .collect();
    assert_eq!(
        nonzero,
        vec![
            (serde_json::json!([6]), Value::from(1)),
            (serde_json::json!([5, 1]), Value::from(2)),
            (serde_json::json!([4, 2]), Value::from(1)),
        ]
    );

    let out = run(&["bounds", "--functor", "H", "--rank", "3", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["computed"] == 0 && r["bound"] == 0));

    let out = run(&["bounds", "--functor", "Omega", "--rank", "3", "--degree", "6"]);
    let v = json(&out);
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["partition"] == serde_json::json!([4, 2])).unwrap();
    assert_eq!((row["computed"].as_u64(), row["bound"].as_u64()), (Some(1), Some(1)));
}
