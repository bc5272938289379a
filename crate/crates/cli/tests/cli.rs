use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fixedloci"));
    cmd.env_remove("FIXEDLOCI_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn schema(name: &str) -> Value {
    let path: PathBuf =
        [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "schemas", &format!("{name}.schema.json")].iter().collect();
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema json")
}

fn assert_valid(name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(name)).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn snf_json() {
    let v = json(&["snf", "--matrix", "2,4;6,8"]);
    assert_eq!(v["factors"], serde_json::json!([2, 4]));
    assert_eq!(v["cokernel"], "Z/2 x Z/4");
    assert_valid("snf", &v);
}

#[test]
fn torus_kernel_markdown_is_mu_notation() {
    let o = run(&["torus-kernel", "--matrix", "2,0;0,4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "mu_2 x mu_4");
    let o = run(&["torus-kernel", "--matrix", "1,0;0,1"]);
    assert_eq!(stdout(&o).trim(), "trivial");
    assert_valid("torus-kernel", &json(&["torus-kernel", "--matrix", "3,1;0,2"]));
}

#[test]
fn singular_matrix_is_input_error() {
    let o = run(&["torus-kernel", "--matrix", "1,2;2,4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("determinant is zero"));
    assert_eq!(run(&["snf", "--matrix", "1,x"]).status.code(), Some(1));
}

#[test]
fn extension_json() {
    let v = json(&["extension", "--group", "C4", "--r", "2", "--iota", "2", "--M", "3"]);
    assert_eq!(v["gbar"]["order"], 2);
    assert_valid("extension", &v);
    let bad = run(&["extension", "--group", "D4", "--r", "2", "--iota", "4", "--M", "2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn extension_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, r#"{"group": "C6", "r": [3], "iota": [2], "M": 2}"#).unwrap();
    let o = run(&["extension", "--spec", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gbar"]["order"], 2);
}

#[test]
fn gp_graphs_degree_two_line() {
    let v = json(&["gp-graphs", "--g", "0", "--n", "0", "--N", "1", "--d", "2", "--weights", "0,1"]);
    let rs: Vec<u64> = v.as_array().unwrap().iter().map(|x| x["r"].as_u64().unwrap()).collect();
    assert_eq!(rs, vec![2, 1, 1]);
    assert_valid("gp-graphs", &v);
    let unweighted = json(&["gp-graphs", "--g", "1", "--n", "1", "--N", "1", "--d", "1"]);
    assert!(unweighted.as_array().unwrap().iter().all(|x| x.get("r").is_none()));
    assert_valid("gp-graphs", &unweighted);
}

#[test]
fn gp_graphs_weight_errors() {
    let o = run(&["gp-graphs", "--g", "0", "--n", "0", "--N", "1", "--d", "1", "--weights", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("weights not distinct"));
}

#[test]
fn enumeration_cap() {
    let args = ["gp-graphs", "--g", "0", "--n", "0", "--N", "2", "--d", "3"];
    assert_eq!(bin().args(args).env("FIXEDLOCI_CAP", "3").output().unwrap().status.code(), Some(2));
    let mut capped = args.to_vec();
    capped.extend(["--cap", "1000000"]);
    assert_eq!(bin().args(&capped).env("FIXEDLOCI_CAP", "3").output().unwrap().status.code(), Some(0));
    assert_eq!(bin().args(args).env("FIXEDLOCI_CAP", "lots").output().unwrap().status.code(), Some(1));
}

#[test]
fn gerbe_subcommands() {
    let k = json(&["gerbe", "kummer", "--L", "5", "--r", "3"]);
    assert_eq!(k["coords"], serde_json::json!([2]));
    assert_eq!(k["trivial"], false);
    let sum = json(&["gerbe", "add", "--L1", "1", "--L2", "1", "--r", "2"]);
    assert_eq!(sum["trivial"], true);
    let t = json(&["gerbe", "twist", "--L", "5", "--r", "3", "--w", "1"]);
    assert_eq!(t["class"], "(O(1): 2 mod 3, [1]: 1 mod 3)");
    for v in [&k, &sum, &t] {
        assert_valid("gerbe", v);
    }
    let tors = json(&["gerbe", "kummer", "--pic", "Z x Z/2", "--L", "3,1", "--r", "4"]);
    assert_eq!(tors["moduli"], serde_json::json!([4, 2]));
}

#[test]
fn bundled_corpus_passes() {
    let v = json(&["verify-theorem"]);
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() >= 30);
    assert_valid("verify-theorem", &v);
    let md = stdout(&run(&["verify-theorem"]));
    assert!(md.contains("failed 0"), "{md}");
}

#[test]
fn negative_control_is_rejected_not_failed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    let o = run(&["corpus", "--with-control", "--format", "json"]);
    assert!(o.status.success());
    std::fs::write(&path, &o.stdout).unwrap();
    let o = run(&["verify-theorem", "--corpus", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rejected"], 1);
    assert_eq!(v["failed"], 0);
    let control = v["cases"].as_array().unwrap().last().unwrap();
    assert_eq!(control["status"], "rejected");
}

#[test]
fn empty_and_malformed_corpora() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let o = run(&["verify-theorem", "--corpus", empty.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 0);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "[{").unwrap();
    assert_eq!(run(&["verify-theorem", "--corpus", broken.to_str().unwrap()]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["verify-theorem", "--corpus", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn corpus_output_validates_and_round_trips() {
    let v = json(&["corpus", "--random", "4", "--seed", "11"]);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_valid("corpus", &v);
    assert_eq!(v, json(&["corpus", "--random", "4", "--seed", "11"]));
    assert_ne!(v, json(&["corpus", "--random", "4", "--seed", "12"]));
    assert_valid("corpus", &json(&["corpus"]));
}

#[test]
fn csv_outputs_have_headers() {
    for args in [
        vec!["snf", "--matrix", "2,4;6,8"],
        vec!["gp-graphs", "--g", "0", "--n", "0", "--N", "1", "--d", "2", "--weights", "0,1"],
        vec!["verify-theorem"],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "csv"]);
        let o = run(&full);
        assert!(o.status.success(), "{args:?}");
        let text = stdout(&o);
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let width = reader.headers().unwrap().len();
        assert!(width > 1);
        for record in reader.records() {
            assert_eq!(record.unwrap().len(), width);
        }
    }
}

#[test]
fn usage_and_help() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["snf"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in
        [vec!["verify-theorem", "--format", "json"], vec!["gp-graphs", "--g", "1", "--n", "0", "--N", "2", "--d", "2"]]
    {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
