use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halfflat")).args(args).output().expect("spawn binary")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json from {args:?}: {e}\n{}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn parse_reports_structure() {
    let (code, v) = json(&["parse", "0,0,12,13,23,14"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["nilpotent"], true);
    assert_eq!(v["jacobi"], true);
}

#[test]
fn cohomology_betti_numbers() {
    let (code, v) = json(&["cohomology", "0,0,0,0,12,34"]);
    assert_eq!(code, 0);
    let betti: Vec<u64> = v["betti"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(betti, [1, 4, 8, 10, 8, 4, 1]);
    assert_eq!(v["euler_characteristic"], 0);
}

#[test]
fn splitting_with_generator() {
    let (code, v) = json(&["splittings", "0,0,0,0,12,13", "--generator", "e23"]);
    assert_eq!(code, 0);
    let s = &v["splittings"][0];
    assert_eq!(s["coherent"], true);
    assert_eq!(s["h"][0][3], 3);
    assert_eq!(s["h"][0][4], 1);
}

#[test]
fn classify_verdicts() {
    let (code, v) = json(&["classify", "0,0,12,13,14,15"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "obstructed");
    assert_eq!(v["reason"], "theorem1");

    let (_, v) = json(&["classify", "0,0,12,13,14,34+52"]);
    assert_eq!(v["reason"], "lemma4");

    let (_, v) = json(&["classify", "0,0,0,0,0,12"]);
    assert_eq!(v["status"], "half_flat");
    assert!(v["witness_frame"].is_array());
}

#[test]
fn classify_all_partition() {
    let (code, v) = json(&["classify", "--all"]);
    assert_eq!(code, 0);
    let list = v.as_array().expect("array of verdicts");
    assert_eq!(list.len(), 34);
    let count = |r: &str| list.iter().filter(|x| x["reason"] == r).count();
    assert_eq!(count("witness_frame"), 24);
    assert_eq!(count("theorem1"), 8);
    assert_eq!(count("lemma4"), 2);
}

#[test]
fn verify_frame_exit_codes() {
    let (code, v) = json(&["verify-frame", "0,0,0,0,0,12", "--frame", "e1,e3,e2,e4,e5,e6"]);
    assert_eq!(code, 0);
    assert_eq!(v["half_flat"], true);

    let (code, v) = json(&["verify-frame", "0,0,12,13,14,15", "--frame", "e1,e2,e3,e4,e5,e6"]);
    assert_eq!(code, 1);
    assert_eq!(v["half_flat"], false);
    assert_eq!(v["d_psi_plus"], "-2*e^{1235}");
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["parse", "0,0,14"][..],
        &["parse", "0,0,12,13,23,1x"],
        &["verify-frame", "0,0,0,0,0,12", "--frame", "e1,e2"],
        &["classify", "--bogus"],
        &["--catalog", "/nonexistent/catalog.json", "tables"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn tables_deterministic_and_complete() {
    let a = run(&["--format", "json", "tables"]);
    let b = run(&["--format", "json", "tables"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], 34);
    assert_eq!(v["total"], 34);
    assert_eq!(v["catalog_checksum"], halfflat::catalog::BUILTIN_CHECKSUM);
}

#[test]
fn external_catalog_round_trip() {
    let dir = std::env::temp_dir().join(format!("halfflat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    std::fs::write(&path, halfflat::catalog::Catalog::builtin().to_json()).unwrap();
    let p = path.to_str().unwrap();

    let (code, v) = json(&["--catalog", p, "tables"]);
    assert_eq!(code, 0);
    assert_eq!(v["catalog_checksum"], halfflat::catalog::BUILTIN_CHECKSUM);

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["--catalog", p, "tables"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn jacobi_failure() {
    let (code, v) = json(&["parse", "0,0,0,12,0,34"]);
    assert_eq!(code, 0);
    assert_eq!(v["jacobi"], false);
    assert_eq!(run(&["classify", "0,0,0,12,0,34"]).status.code(), Some(1));
}

#[test]
fn quiet_suppresses_output() {
    let out = run(&["-q", "classify", "0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}
