use std::process::{Command, Output};

use serde_json::Value;

fn simcore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simcore"))
        .args(args)
        .env_remove("SIMCORE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = simcore(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn beta_and_back() {
    assert_eq!(stdout(&["beta", "6", "3", "2", "1"]), "[1,3,5,9]");
    assert_eq!(stdout(&["unbeta", "1,3,5,9"]), "[6,3,2,1]");
    assert_eq!(stdout(&["unbeta", "9", "5", "3", "1"]), "[6,3,2,1]");
    assert_eq!(stdout(&["conjugate", "6", "3", "2", "1"]), "[4,3,2,1,1,1]");
    assert_eq!(stdout(&["size", "1,3,5,9"]), "12");
}

#[test]
fn hooks_and_cores() {
    assert_eq!(stdout(&["hooks", "6", "3", "2", "1"]).lines().next(), Some("9 7 5 3 2 1"));
    assert_eq!(stdout(&["iscore", "--moduli", "4,6,11", "6", "3", "2", "1"]), "true");
    assert_eq!(stdout(&["iscore", "--moduli", "5", "6", "3", "2", "1"]), "false");
}

#[test]
fn abacus_diagram() {
    assert_eq!(
        stdout(&["abacus", "--modulus", "5", "2,4,9"]),
        "  5   6   7   8 [9]\n  0   1 [2]   3 [4]"
    );
}

#[test]
fn formula_values() {
    assert_eq!(stdout(&["formula", "--s", "5", "--m", "3"]), "63");
    let v = json(&["formula", "--s", "6", "--m", "3"]);
    assert_eq!(v["value"], "135");
    assert_eq!(v["provenance"], "max_size");
}

#[test]
fn l_and_membership() {
    let v = json(&["L", "--s", "5", "--m", "3"]);
    assert_eq!(v["size"], 63);
    assert_eq!(v["cardinality"]["value"], "16");
    let nobe = "1,2,3,4,7,8,9,10,13,14,15,16,21,22,27,33";
    assert_eq!(stdout(&["check-structural", "--s", "6", "--m", "3", nobe]), "false");
    let v = json(&["gbs-check", "--s", "6", "--m", "3", nobe]);
    assert_eq!(v["generalized_beta_set"], true);
}

#[test]
fn profile_and_family() {
    let v = json(&["profile", "--s", "5", "--m", "3", "1,2,3,4,6,7,8,9,11,12,13,17,18,22,23,27"]);
    assert_eq!(v["a"], serde_json::json!([4, 4, 3, 2, 2, 1]));
    let v = json(&["family", "--kind", "Pprime", "--k", "3", "--s", "6", "--m", "3"]);
    assert_eq!(v["size"], 135);
}

#[test]
fn enumerate_engines_agree() {
    let base = ["enumerate", "--s", "4", "--m", "3", "--all"];
    let pick = |engine: &str| {
        let mut args = base.to_vec();
        args.extend(["--engine", engine]);
        let v = json(&args);
        (v["all"].clone(), v["max_size"].clone())
    };
    let s = pick("structural");
    assert_eq!(s, pick("oracle"));
    assert_eq!(s, pick("filter"));
}

#[test]
fn output_is_independent_of_jobs() {
    let a = stdout(&["--json", "--jobs", "1", "enumerate", "--s", "6", "--m", "3", "--all"]);
    let b = stdout(&["--json", "--jobs", "3", "enumerate", "--s", "6", "--m", "3", "--all"]);
    assert_eq!(a, b);
}

#[test]
fn pair_counts() {
    let v = json(&["pair", "--a", "3", "--b", "5"]);
    assert_eq!((v["count"].clone(), v["max_size"].clone()), (7.into(), 8.into()));
}

#[test]
fn verify_record() {
    let v = json(&["verify", "--s", "6", "--m", "3"]);
    assert_eq!(v["max_size"], 135);
    assert_eq!(v["argmax"].as_array().unwrap().len(), 2);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_grid_writes_file() {
    let dir = std::env::temp_dir().join(format!("simcore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.json");
    let out = simcore(&["verify-grid", "--smax", "5", "--mmax", "3", "--jobs", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["points"], 11);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    // domain errors
    assert_eq!(simcore(&["beta", "1", "3"]).status.code(), Some(1));
    assert_eq!(simcore(&["pair", "--a", "4", "--b", "6"]).status.code(), Some(1));
    assert_eq!(simcore(&["family", "--kind", "T", "--k", "9", "--s", "5", "--m", "3"]).status.code(), Some(1));
    // usage errors
    assert_eq!(simcore(&["formula", "--s", "x", "--m", "1"]).status.code(), Some(2));
    assert_eq!(simcore(&["size", "1,a"]).status.code(), Some(2));
    assert_eq!(simcore(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_simcore"))
        .args(["enumerate", "--s", "5", "--m", "3"])
        .env("SIMCORE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 10"));
}
