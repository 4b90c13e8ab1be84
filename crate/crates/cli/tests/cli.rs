use std::process::{Command, Output};

use serde_json::Value;

fn godan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_godan")).args(args).env_remove("GODAN_OUT_DIR").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn gen_json_and_dot() {
    let out = godan(&["gen", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 9);

    let out = godan(&["gen", "--n", "4", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph EA4 {"));
    assert_eq!(dot.matches('{').count(), dot.matches('}').count());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(godan(&["gen", "--n", "2"]).status.code(), Some(2));
    assert_eq!(godan(&["idst", "--n", "4", "--s", "1234,1234,3412,4123"]).status.code(), Some(2));
    assert_eq!(godan(&["idst", "--n", "4", "--s", "1234,2341,3412"]).status.code(), Some(2));
    assert_eq!(godan(&["idst", "--n", "4", "--s", "1234,2341,3412,41230"]).status.code(), Some(2));
    assert_eq!(godan(&["sweep", "--n", "5"]).status.code(), Some(2));
    assert_eq!(godan(&["sweep", "--n", "5", "--exhaustive"]).status.code(), Some(2));
    assert_eq!(godan(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(godan(&["accept", "--only", "11"]).status.code(), Some(2));
}

#[test]
fn idst_examples() {
    let out = godan(&["idst", "--n", "4", "--s", "1234,2341,3412,4123"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["trees"].as_array().unwrap().len(), 3);
    assert_eq!(v["S"][1], "2341");

    let out = godan(&["idst", "--n", "3", "--s", "123,231,312,213", "--fallback-search=false"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["trees"].as_array().unwrap().len(), 2);

    let out = godan(&["idst", "--n", "5", "--s", "12345,21453,34512,51234", "--format", "dot"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().matches("subgraph tree_").count(), 4);
}

#[test]
fn oracle_examples() {
    let out = godan(&["oracle", "--n", "3", "--k", "4", "--exhaustive"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], 2);
    let out = godan(&["oracle", "--n", "4", "--k", "3", "--exhaustive"]);
    assert_eq!(json(&out)["value"], 3);
    let out = godan(&["oracle", "--n", "4", "--k", "4", "--exhaustive", "--graph", "an"]);
    assert_eq!(json(&out)["value"], 2);
    let out = godan(&["oracle", "--n", "4", "--s", "1234,1243,1324,1342"]);
    let row = json(&out);
    assert_eq!((row["max_t"].as_u64(), row["exact"].as_bool()), (Some(3), Some(true)));
    assert_eq!(row["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn sweeps_are_reproducible_and_use_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_godan"))
            .args(["sweep", "--n", "5", "--sample", "300", "--seed", "7"])
            .env("GODAN_OUT_DIR", dir.path().join(sub))
            .output()
            .unwrap();
        assert!(out.status.success());
        std::fs::read(dir.path().join(sub).join("sweep_n5_sample300_seed7.csv")).unwrap()
    };
    let (a, b) = (run("a"), run("b"));
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 301);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("4") && l.contains(",pass,")));
    let summary: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("a/sweep_n5_sample300_seed7.summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["seed"], 7);
}

#[test]
fn exhaustive_sweep_at_n4() {
    let out = godan(&["sweep", "--n", "4", "--exhaustive", "--jobs", "2"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 10_627);
}

#[test]
fn explicit_output_file_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = godan(&["idst", "--n", "4", "--s", "1234,2143,3412,4321", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let loaded = godan::export::read_tree_set(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(loaded.is_valid());
}

#[test]
fn accept_subset() {
    let out = godan(&["accept", "--only", "1,7,9", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);
}
