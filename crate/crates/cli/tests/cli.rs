use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const S: &str = r#"{"name":"S","points":["0","1"],
  "topology":{"kind":"opens","opens":[[],["0"],["0","1"]]}}"#;

const M3: &str = r#"{"name":"M3","points":["bot","a","b","c","top"],
  "topology":{"kind":"order","le":[["bot","a"],["bot","b"],["bot","c"],
  ["a","top"],["b","top"],["c","top"]]}}"#;

const C3: &str = r#"{"name":"C3","points":["0","1","2"],
  "topology":{"kind":"order","le":[["0","1"],["1","2"]]}}"#;

fn laxtop(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laxtop"))
        .current_dir(dir)
        .env_remove("LAXTOP_CAP")
        .args(args)
        .output()
        .expect("binary runs")
}

fn workspace() -> TempDir {
    let dir = TempDir::new().unwrap();
    let write = |name: &str, body: &str| fs::write(dir.path().join(name), body).unwrap();
    write("S.json", S);
    write("M3.json", M3);
    write("C3.json", C3);
    write(
        "point_a.json",
        r#"{"space":{"name":"1","points":["*"],"topology":{"kind":"order","le":[]}},
            "alpha":{"*":"a"}}"#,
    );
    write(
        "id_m3.json",
        r#"{"source":{"space":"S.json","alpha":{"0":"a","1":"top"}},
            "target":{"space":"S.json","alpha":{"0":"a","1":"top"}},
            "map":{"0":"0","1":"1"}}"#,
    );
    // Three 2-chains onto 0 < 1 < 2.
    write(
        "three_chains.json",
        r#"{"source":{"name":"A","points":["x0","x1","y1","y2","z0","z2"],
              "topology":{"kind":"order","le":[["x0","x1"],["y1","y2"],["z0","z2"]]}},
            "target":"C3.json",
            "map":{"x0":"0","x1":"1","y1":"1","y2":"2","z0":"0","z2":"2"}}"#,
    );
    write(
        "fam.json",
        r#"{"base":"S.json",
            "source":{"index":["i","j"],"values":{"i":"0","j":"1"}},
            "target":{"index":["k"],"values":{"k":"1"}},
            "map":{"i":"k","j":"k"}}"#,
    );
    dir
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn check_requested_props_exit_zero() {
    let dir = workspace();
    let out = laxtop(dir.path(), &["check", "S.json", "--props", "t0,sober"]);
    assert_eq!(out.status.code(), Some(0));
    let out = laxtop(dir.path(), &["check", "M3.json", "--props", "frame"]);
    assert_eq!(out.status.code(), Some(1));
    let out = laxtop(dir.path(), &["--json", "check", "M3.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["properties"]["complete"], Value::Bool(true));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let dir = workspace();
    assert_eq!(laxtop(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        laxtop(dir.path(), &["check", "missing.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn laxcomma_descent_over_m3_is_tri_state() {
    let dir = workspace();
    let out = laxtop(
        dir.path(),
        &[
            "--json",
            "descent",
            "--category",
            "laxcomma",
            "--base",
            "M3.json",
            "id_m3.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["category"], "laxcomma");
    let value = v["is_effective"]["value"].as_str().unwrap();
    assert!(["true", "unknown"].contains(&value));
    for key in [
        "is_descent",
        "is_effective",
        "preconditions_checked",
        "criterion",
        "notes",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn top_descent_separation_from_files() {
    let dir = workspace();
    let out = laxtop(
        dir.path(),
        &[
            "--json",
            "descent",
            "--category",
            "top",
            "three_chains.json",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["is_descent"]["value"], "true");
    assert_eq!(v["is_effective"]["value"], "false");
    assert_eq!(
        v["is_effective"]["witness"]["points"],
        serde_json::json!(["0", "1", "2"])
    );
}

#[test]
fn fam_descent_from_file() {
    let dir = workspace();
    let out = laxtop(
        dir.path(),
        &["--json", "descent", "--category", "fam", "fam.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["is_effective"]["value"], "true");
    assert_eq!(v["criterion"], "frame");
}

#[test]
fn expo_reports_m3_witness() {
    let dir = workspace();
    let out = laxtop(
        dir.path(),
        &["--json", "expo", "--base", "M3.json", "point_a.json"],
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "false");
    assert_eq!(v["witness"]["family"], serde_json::json!(["b", "c"]));
}

#[test]
fn construct_product_with_verification() {
    let dir = workspace();
    let out = laxtop(
        dir.path(),
        &[
            "--json",
            "construct",
            "product",
            "--base",
            "M3.json",
            "point_a.json",
            "point_a.json",
            "--verify",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json_of(&out);
    assert_eq!(v["oracle"]["passed"], Value::Bool(true));
    assert_eq!(v["object"]["alpha"].as_object().unwrap().len(), 1);
}

#[test]
fn vietoris_of_sierpinski() {
    let dir = workspace();
    let out = laxtop(dir.path(), &["--json", "vietoris", "S.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["sets"].as_array().unwrap().len(), 3);
    assert_eq!(v["algebra"]["is_algebra"], Value::Bool(true));
}

#[test]
fn paper_check_filter_and_determinism() {
    let dir = workspace();
    let args = [
        "--json",
        "paper-check",
        "--max-points",
        "2",
        "--suite",
        "sierpinski-descent",
        "--suite",
        "descent-separation",
    ];
    let a = laxtop(dir.path(), &args);
    let b = laxtop(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["format_version"], 1);
    let names: Vec<&str> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["descent-separation", "sierpinski-descent"]);
}

#[test]
fn environment_overrides_oracle_cap() {
    let dir = workspace();
    let out = Command::new(env!("CARGO_BIN_EXE_laxtop"))
        .current_dir(dir.path())
        .env("LAXTOP_CAP", "7")
        .args([
            "--json",
            "paper-check",
            "--max-points",
            "1",
            "--suite",
            "poset-counts",
        ])
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["config"]["oracle_cap"], 7);
    let bad = Command::new(env!("CARGO_BIN_EXE_laxtop"))
        .current_dir(dir.path())
        .env("LAXTOP_CAP", "lots")
        .args(["paper-check", "--suite", "poset-counts"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn enumerate_counts_posets() {
    let dir = workspace();
    let out = laxtop(dir.path(), &["--json", "enumerate", "4"]);
    assert_eq!(json_of(&out)["count"], 16);
}
