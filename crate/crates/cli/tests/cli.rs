use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nakct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nakct")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nakct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const GLUED: &str = "1,2,3,3,3,3,3,3,2,2,2,2,2";

#[test]
fn classify_glued_example() {
    let out = nakct(&["classify", "--series", GLUED, "--d", "2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["exists"], true);
    let modules = v["subcategory"]["modules"].as_array().unwrap();
    assert_eq!(modules.len(), 35);
    assert!(modules.contains(&serde_json::json!([8, 9, 10])));
}

#[test]
fn classify_negative_exits_one() {
    let out = nakct(&["classify", "--series", "1,2", "--d", "1", "--n", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["exists"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nakct(&["classify", "--series", "1,2,x", "--d", "1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(nakct(&["classify", "--series", "1,2", "--d", "0", "--n", "2"]).status.code(), Some(2));
    assert_eq!(nakct(&["ext", "--series", "1,2,3", "--d", "1", "--y", "1,9", "--x", "1,2"]).status.code(), Some(2));
    assert_eq!(nakct(&["bogus"]).status.code(), Some(2));
}

#[test]
fn validate_reports_shape_and_errors() {
    let ok = nakct(&["validate", "--series", "~4,2,3,3,2,3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["canonical"], "~2,3,3,2,3,4");
    let bad = nakct(&["validate", "--series", "~5,2,3,3,2,3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["valid"], false);
}

#[test]
fn search_then_check_round_trip() {
    let all = scratch("search.json");
    let out = nakct(&["search", "--series", "~5,5,5", "--d", "2", "--n", "3", "--out", all.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&all).unwrap()).unwrap();
    assert_eq!(v["count"], 6);
    let ct = scratch("ct.json");
    std::fs::write(&ct, v["results"][0].to_string()).unwrap();
    let check = nakct(&["check", "--series", "~5,5,5", "--d", "2", "--n", "3", "--subcat", ct.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["accepted"], true);
    let wrong_n = nakct(&["check", "--n", "2", "--subcat", ct.to_str().unwrap(), "--partial"]);
    assert_eq!(wrong_n.status.code(), Some(1));
    assert_eq!(json(&wrong_n)["accepted"], false);
    let mismatch = nakct(&["check", "--series", "~5,5", "--n", "3", "--subcat", ct.to_str().unwrap()]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["search", "--series", GLUED, "--d", "2", "--n", "5"];
    assert_eq!(nakct(&args).stdout, nakct(&args).stdout);
}

#[test]
fn ext_resolve_and_tau() {
    let ext = nakct(&["ext", "--series", "1,2,3,3,3", "--d", "1", "--y", "3,5", "--x", "1,3"]);
    assert_eq!(json(&ext)["dim"], 0);
    let ext = nakct(&["ext", "--series", "1,2,3,3,3", "--d", "1", "--y", "3,5", "--x", "2,4"]);
    assert_eq!(json(&ext)["dim"], 1);

    let res = json(&nakct(&["resolve", "--series", "1,2,3,3,3,3,3,3", "--d", "2", "--x", "4,5,6"]));
    assert_eq!(res["projective"], false);
    assert!(!res["terms"].as_array().unwrap().is_empty());

    let tau = nakct(&["tau", "--series", "~5,5,5", "--d", "2", "--x", "1,2,3", "--n", "3"]);
    assert_eq!(tau.status.code(), Some(0));
    let back = json(&tau)["result"].clone();
    let x = back.as_array().unwrap().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    let inv = json(&nakct(&["tau", "--series", "~5,5,5", "--d", "2", "--x", &x, "--n", "3", "--inverse"]));
    assert_eq!(inv["result"], serde_json::json!([1, 2, 3]));
}

#[test]
fn glue_and_deglue() {
    let g = json(&nakct(&["glue", "--a", "1,2,3,3,3,3,3,3", "--b", "1,2,2,2,2,2"]));
    assert_eq!(g["series"], GLUED);

    let ca = scratch("ca.json");
    let cb = scratch("cb.json");
    for (path, s) in [(&ca, "1,2,3,3,3,3,3,3"), (&cb, "1,2,2,2,2,2")] {
        let out = nakct(&["classify", "--series", s, "--d", "2", "--n", "5"]);
        std::fs::write(path, json(&out)["subcategory"].to_string()).unwrap();
    }
    let glued = nakct(&[
        "glue",
        "--a",
        "1,2,3,3,3,3,3,3",
        "--b",
        "1,2,2,2,2,2",
        "--ca",
        ca.to_str().unwrap(),
        "--cb",
        cb.to_str().unwrap(),
    ]);
    assert_eq!(glued.status.code(), Some(0));
    let classified = json(&nakct(&["classify", "--series", GLUED, "--d", "2", "--n", "5"]));
    assert_eq!(json(&glued)["subcategory"], classified["subcategory"]);

    let d = json(&nakct(&["deglue", "--series", GLUED, "--d", "2"]));
    assert_eq!(d["pieces"], serde_json::json!(["1,2,3,3,3,3,3,3", "1,2,2,2,2,2"]));
    assert_eq!(d["bridges"], serde_json::json!([[8, 9, 10]]));
}

#[test]
fn arquiver_dot_highlights_subcategory() {
    let ct = scratch("glued_ct.json");
    let out = nakct(&["classify", "--series", GLUED, "--d", "2", "--n", "5"]);
    std::fs::write(&ct, json(&out)["subcategory"].to_string()).unwrap();
    let dot =
        nakct(&["arquiver", "--series", GLUED, "--d", "2", "--format", "dot", "--highlight", ct.to_str().unwrap()]);
    assert_eq!(dot.status.code(), Some(0));
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("fillcolor").count(), 35);
    assert_eq!(text.matches("->").count(), 72);

    let js = json(&nakct(&["arquiver", "--series", GLUED, "--d", "2"]));
    assert_eq!(js["nodes"].as_array().unwrap().len(), 55);
}

#[test]
fn verify_small_sweep() {
    let out = nakct(&["verify", "--max-width", "3", "--max-ell", "3", "--max-d", "2", "--max-n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mismatch_count"], 0);
    assert!(v["instances"].as_u64().unwrap() > 10);
}
