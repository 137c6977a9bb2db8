use std::process::{Command, Output};

use canform::json::ratfun_from;
use canform_core::polyrat::RatFun;
use serde_json::Value;

fn canform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canform")).args(args).env_remove("CANFORM_SEED").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn sl3_pbw_coefficients() {
    let out = canform(&["compute", "--type", "A", "--rank", "2", "--weight", "1,1", "--basis", "pbw", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["roots"], serde_json::json!(["e1-e2", "e1-e3", "e2-e3"]));
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 2);
    let find = |p: [u64; 3]| {
        let c = coeffs.iter().find(|c| c["p"] == serde_json::json!(p)).expect("monomial present");
        ratfun_from(&c["coeff"]).unwrap()
    };
    let rf = |s: &str| s.parse::<RatFun>().unwrap();
    assert_eq!(find([1, 0, 1]), rf("1/(t:1:1*t:2:1)"));
    assert_eq!(find([0, 1, 0]), rf("1/(t:1:1*(t:2:1-t:1:1))"));
}

#[test]
fn free_basis_and_export() {
    let out = canform(&["compute", "--type", "A", "--rank", "2", "--weight", "2,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["coeffs"].as_array().unwrap().len(), 3);
    let out = canform(&["export", "--type", "A", "--rank", "1", "--weight", "2", "--basis", "pbw", "--points", "2"]);
    assert_eq!(code(&out), 0);
    let tex = String::from_utf8(out.stdout).unwrap();
    assert!(tex.starts_with("\\begin{align*}"), "{tex}");
    assert_eq!(tex.matches("v_{2}").count(), 3);
}

#[test]
fn rank_too_small_is_a_computation_error() {
    let out = canform(&["compute", "--type", "D", "--rank", "2", "--weight", "1,1"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_flags() {
    assert_eq!(code(&canform(&["compute", "--type", "A", "--rank", "2", "--weight", "1"])), 2);
    assert_eq!(code(&canform(&["compute", "--type", "Q", "--rank", "2", "--weight", "1,1"])), 2);
    assert_eq!(code(&canform(&["verify", "nonsense"])), 2);
    assert_eq!(code(&canform(&["frobnicate"])), 2);
    assert_eq!(code(&canform(&["--help"])), 0);
}

#[test]
fn residue_suite_passes() {
    let out = canform(&["verify", "residue", "--type", "A", "--rank", "1", "--weight", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["check"], "residue");
}

#[test]
fn all_suites_pass() {
    let out = canform(&["verify", "all", "--max-weight", "4", "--types", "A2,A3,B2,C2,D3", "--jobs", "4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert!(v["cases"].as_u64().unwrap() > 1000);
}

#[test]
fn reversed_root_order_is_caught() {
    let out = canform(&["verify", "pbw", "--types", "A2", "--max-weight", "2", "--corrupt-order"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    assert!(!v["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["verify", "all", "--max-weight", "3", "--types", "A2,B2"];
    let a = canform(&args);
    let b = canform(&args);
    let c = canform(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn environment_seed_overrides_flag() {
    let run = |env: Option<&str>, flag: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_canform"));
        cmd.args(["verify", "duality", "--types", "A1", "--max-weight", "1", "--seed", flag]).env_remove("CANFORM_SEED");
        if let Some(e) = env {
            cmd.env("CANFORM_SEED", e);
        }
        json(&cmd.output().unwrap())["params"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, "5"), 5);
    assert_eq!(run(Some("11"), "5"), 11);
    let out = Command::new(env!("CARGO_BIN_EXE_canform")).args(["corpus"]).env("CANFORM_SEED", "-1").output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn corpus_and_out_file() {
    let dir = std::env::temp_dir().join(format!("canform-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.json");
    let out = canform(&["corpus", "--list", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.as_array().unwrap().len() >= 24);

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "ratfun 1/t:1:1 | *(1, 1)\n").unwrap();
    let out = canform(&["corpus", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
