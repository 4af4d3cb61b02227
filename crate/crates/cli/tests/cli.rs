use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqd2n")).args(args).env_remove("FQD2N_BUDGET").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decompose_json() {
    let out = run(&["decompose", "--q", "3", "--n", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    let kinds: Vec<(&str, u64)> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["kind"].as_str().unwrap(), c["residue_degree"].as_u64().unwrap()))
        .collect();
    assert_eq!(kinds, vec![("SPLIT_PAIR_FQ", 1), ("SPLIT_PAIR_FQ", 1), ("MATRIX2", 1)]);
    assert_eq!(v["total_dimension"], 8);
}

#[test]
fn gcd_violation_is_a_usage_error() {
    let out = run(&["factor", "--q", "2", "--n", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd(q,n) must be 1"));
}

#[test]
fn bad_inputs_exit_1() {
    for args in [
        &["factor", "--q", "6", "--n", "5"][..],
        &["factor", "--n", "5"],
        &["factor", "--q", "3"],
        &["factor", "--p", "4", "--k", "1", "--n", "3"],
        &["nonsense"],
        &["sweep", "--q-list", "2,10"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--q", "5", "--n", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["instance"]["isomorphism"]["rank"], 16);
    assert_eq!(v["instance"]["explicit"]["decomposition"]["status"], "confirmed");
}

#[test]
fn prime_and_power_forms_agree() {
    let a = run(&["idempotents", "--q", "9", "--n", "8", "--format", "json"]);
    let b = run(&["idempotents", "--p", "3", "--k", "2", "--n", "8", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn factor_text_is_stable() {
    let out = run(&["factor", "--q", "2", "--n", "7"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "x^7-1 over F_2: r=1 s=1\n\
         f0 = x+1  UNITY coset=[0]\n\
         f1 = x^3+x+1  PAIR_CANONICAL mate=f2 coset=[1, 2, 4]\n\
         f2 = x^3+x^2+1  PAIR_MATE mate=f1 coset=[3, 5, 6]\n"
    );
}

#[test]
fn dihedral_json_fields() {
    let out = run(&["dihedral", "--q", "3", "--n", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["epsilon"].as_u64(), v["delta"].as_u64()), (Some(2), Some(2)));
    let idems = v["idempotents"].as_array().unwrap();
    assert_eq!(idems.len(), 5);
    assert_eq!(idems[4]["P"], serde_json::json!([2, 0, 1, 0]));
    assert_eq!(idems[4]["Q"], serde_json::json!([0, 0, 0, 0]));
    assert!(idems.iter().all(|e| e["primitivity"] == "primitive"));
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fqd2n"))
        .args(["dihedral", "--q", "3", "--n", "4", "--format", "json"])
        .env("FQD2N_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["idempotents"].as_array().unwrap().iter().all(|e| e["primitivity"] == "skipped"));
}

#[test]
fn sweep_edges() {
    let out = run(&["sweep", "--n-max", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["instances"], 0);

    let out = run(&["sweep", "--q-list", "2,3", "--n-max", "6", "--budget", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let central: u64 = v["instances"].as_array().unwrap().iter().map(|i| i["central"]["count"].as_u64().unwrap()).sum();
    assert!(central > 0);
    assert_eq!(v["summary"]["primitivity_skipped"], central);
    assert_eq!(v["summary"]["hard_failures"], 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipping q=2 n=2"));
}

#[test]
fn sweep_output_is_deterministic() {
    let dir = std::env::temp_dir();
    let (a, b) = (dir.join("fqd2n-sweep-a.json"), dir.join("fqd2n-sweep-b.json"));
    for (path, jobs) in [(&a, "1"), (&b, "4")] {
        let out = run(&[
            "sweep", "--q-list", "3,4,5", "--n-max", "12", "--jobs", jobs, "--format", "json", "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
