use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wcob(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_wcob"));
    c.args(args).env_remove("WCOB_CACHE_DIR");
    if let Some(dir) = cache {
        c.arg("--cache-dir").arg(dir);
    }
    c.output().expect("wcob runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn cob_degree_zero_is_the_category() {
    let out = wcob(&["enumerate", "--construction", "cob", "--degree", "0", "--instance", "finpointed:2"], None);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["result"]["counts"], serde_json::json!([2]));
}

#[test]
fn s_degree_two_has_three_simplices() {
    let out = wcob(&["enumerate", "--construction", "s", "--degree", "2", "--instance", "finpointed:2"], None);
    assert_eq!(json(&out)["result"]["counts"][2], 3);
}

#[test]
fn suites_pass_on_pointed_sets() {
    for args in [
        vec!["check", "--suite", "axioms", "--instance", "finpointed:2"],
        vec!["check", "--suite", "segal", "--instance", "finpointed:2", "--degree", "3"],
        vec!["check", "--suite", "identities", "--construction", "cob", "--degree", "3"],
        vec!["check", "--suite", "equivalences", "--degree", "2"],
        vec!["check", "--suite", "homotopy"],
        vec!["check", "--suite", "symmetric", "--instance", "finset_all:2"],
        vec!["check", "--suite", "relative", "--instance", "finset_inj:2"],
    ] {
        let out = wcob(&args, None);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        let v = json(&out);
        assert_eq!(v["passed"], true);
        let checks = v["result"]["checks"].as_array().unwrap();
        assert!(!checks.is_empty() && checks.iter().all(|c| c["passed"] == true), "{args:?}");
    }
}

#[test]
fn corrupted_instance_fails_with_witness() {
    let out = wcob(&["check", "--suite", "axioms", "--instance", "broken_gluing:2"], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let gluing = v["result"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "gluing lemma").unwrap();
    assert_eq!(gluing["passed"], false);
    assert!(gluing["witness"].is_string());
}

#[test]
fn unknown_names_are_errors() {
    for args in [vec!["enumerate", "--instance", "finfoo:2"], vec!["enumerate", "--construction", "cob-nope"]] {
        let out = wcob(&args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains("unknown"), "{}", stderr(&out));
    }
    let out = wcob(&["enumerate", "--instance", "finset_inj:0"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_ceilings_fail_loudly() {
    let out = wcob(&["enumerate", "--construction", "cob", "--degree", "2", "--budget", "5"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(stderr(&out).contains("degree"), "{}", stderr(&out));
    let out = wcob(&["enumerate", "--construction", "cob", "--degree", "2", "--max-objects", "3"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("object ceiling"), "{}", stderr(&out));
}

#[test]
fn compare_tau_on_pointed_sets() {
    let out = wcob(&["compare-tau", "--instance", "finpointed:2"], None);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    for model in ["s", "cob"] {
        let h1 = &v["result"]["homology"][model]["groups"][1];
        assert_eq!((h1["betti"].as_u64(), h1["torsion"].as_array().unwrap().len()), (Some(1), 0), "{model}");
        assert_eq!(v["result"]["pi1"][model]["abelianization_text"], "Z");
    }
    assert_eq!(v["result"]["cone"]["acyclic"], true);
    let out = wcob(&["compare-tau", "--instance", "finset_inj:2"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homology_report_shape() {
    let out = wcob(&["homology", "--construction", "s", "--total"], None);
    let v = json(&out);
    for key in ["schema", "version", "command", "seed", "config", "passed", "result"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["config"]["seed"], 0);
    let g = &v["result"]["homology"]["groups"][1];
    assert_eq!(g["degree"], 1);
    assert!(g["torsion"].is_array());
    let pi1 = &v["result"]["pi1"];
    assert!(pi1["generators"].is_array() && pi1["relators"].is_array());
    assert_eq!(v["result"]["total"]["agreement"]["disagreements"], serde_json::json!([]));
}

#[test]
fn reports_are_deterministic() {
    let args = ["homology", "--construction", "cob", "--seed", "7"];
    let (a, b) = (wcob(&args, None), wcob(&args, None));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
    let tsv = wcob(&["enumerate", "--format", "tsv"], None);
    let text = String::from_utf8(tsv.stdout).unwrap();
    assert!(text.lines().any(|l| l == "degree\tsimplices"), "{text}");
    assert!(text.contains("seed=0"));
}

#[test]
fn cache_is_transparent_and_repairs_itself() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["homology", "--construction", "cob-sym", "--instance", "finset_inj:2"];
    let cold = wcob(&args, None);
    let first = wcob(&args, Some(dir.path()));
    let second = wcob(&args, Some(dir.path()));
    assert!(stderr(&first).contains("cache miss"));
    assert!(stderr(&second).contains("cache hit"));
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);

    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let mut bytes = fs::read(&entries[0]).unwrap();
    let last = bytes.len() - 2;
    bytes[last] ^= 1;
    fs::write(&entries[0], bytes).unwrap();
    let repaired = wcob(&args, Some(dir.path()));
    assert!(stderr(&repaired).contains("quarantined"), "{}", stderr(&repaired));
    assert_eq!(repaired.stdout, first.stdout);
    assert!(dir.path().join("quarantine").is_dir());

    let inspect = json(&wcob(&["cache", "inspect"], Some(dir.path())));
    let listed = inspect["result"]["entries"].as_array().unwrap();
    assert_eq!(listed.len(), 1);
    assert_eq!(listed[0]["status"], "ok");
    let gc = json(&wcob(&["cache", "gc"], Some(dir.path())));
    assert_eq!(gc["result"]["removed"].as_array().unwrap().len(), 1);
    let gc_all = json(&wcob(&["cache", "gc", "--all"], Some(dir.path())));
    assert_eq!(gc_all["result"]["removed"].as_array().unwrap().len(), 1);
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_wcob"))
        .args(["enumerate", "--construction", "s"])
        .env("WCOB_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let missing = wcob(&["cache", "inspect"], None);
    assert_eq!(missing.status.code(), Some(2));
}
