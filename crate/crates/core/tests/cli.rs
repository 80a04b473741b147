use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn leechkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leechkit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("leechkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_one_claim_as_json() {
    let v = json(&leechkit(&["verify", "--claim", "S11-genus", "--json"]));
    assert_eq!(v[0]["id"], "S11-genus");
    assert_eq!(v[0]["status"], "pass");
    assert!(v[0]["anchor"].as_str().is_some_and(|a| !a.is_empty()));
}

#[test]
fn verify_text_and_unknown_claim() {
    let out = leechkit(&["verify", "--claim", "klein-symplectic", "--claim", "polar-TW2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    let out = leechkit(&["verify", "--claim", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown"));
}

#[test]
fn verify_list() {
    let out = leechkit(&["verify", "--list"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), leechkit::claims::manifest().len());
}

#[test]
fn catalog_file_feeds_enum_and_isom() {
    let out = leechkit(&["catalog", "E8", "--scale", "-1"]);
    assert!(out.status.success());
    let path = scratch("e8.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();

    let r = json(&leechkit(&["enum", p, "--bound", "4"]));
    assert_eq!(r["counts"]["2"], 240);
    assert_eq!(r["counts"]["4"], 2160);
    let r = json(&leechkit(&["enum", p, "--bound", "2", "--list"]));
    assert_eq!(r["vectors"].as_array().unwrap().len(), 120);

    let out = leechkit(&["isom", p, "E8:-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], "isometric");
    let out = leechkit(&["isom", p, "D_8:-1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn niemeier_lattice_and_roots() {
    let v = json(&leechkit(&["niemeier", "N23", "--verify-roots"]));
    assert_eq!((v["roots"].as_u64(), v["ok"].as_bool()), (Some(48), Some(true)));
    let l = json(&leechkit(&["niemeier", "N19"]));
    assert_eq!(l["gram"].as_array().unwrap().len(), 24);
    assert!(l["ambient"]["basis"].is_array());
    let out = leechkit(&["niemeier", "N99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn genus_from_discriminant_form() {
    let out = leechkit(&["disc", "rank1(-2)", "S11:-1"]);
    assert!(out.status.success());
    let path = scratch("q.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let classes = json(&leechkit(&["genus", "--det", "242", "--rank", "3", "--disc", path.to_str().unwrap()]));
    let grams: Vec<&Value> = classes.as_array().unwrap().iter().map(|c| &c["gram"]).collect();
    assert_eq!(grams.len(), 2);
    assert_eq!(grams[0], &serde_json::json!([[2, -1, 0], [-1, 6, 0], [0, 0, 22]]));
    let out = leechkit(&["genus", "--det", "242", "--rank", "4", "--disc", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn divisor_of_polarizations() {
    let v = json(&leechkit(&["divisor", "T2_11", "--vector", "1,0,0"]));
    assert_eq!((v["norm"].as_str(), v["divisor"].as_str()), (Some("6"), Some("2")));
    let out = leechkit(&["divisor", "T2_11", "--vector", "2,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn klein_subcommands() {
    let v = json(&leechkit(&["klein", "smooth", "--prime", "13"]));
    assert_eq!(v["singular_points"], 0);
    let v = json(&leechkit(&["klein", "ranks"]));
    let ranks: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![20, 16]);
    let v = json(&leechkit(&["klein", "fixed-lines"]));
    assert_eq!(v["lines"], serde_json::json!([[1, 2], [1, 3], [2, 5], [3, 4], [4, 5]]));
    let v = json(&leechkit(&["klein", "invariant-cubics"]));
    assert_eq!(v.as_array().unwrap().len(), 6);
}
