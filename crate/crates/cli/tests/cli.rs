use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn regproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regproj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(args: &[&str], file: &str) -> Output {
    let path = fixture(file);
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    regproj(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn validate_fixtures() {
    for name in [
        "fig2_taniyama.gpd",
        "fig5_nonplanar.gpd",
        "theta_embedded.gpd",
        "handcuff_cr4.gpd",
    ] {
        let o = run_on(&["validate"], name);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
    let o = run_on(&["validate"], "theta_embedded.gpd");
    assert!(stdout(&o).contains("0 double points"));
}

#[test]
fn validate_reports_diagnostic_codes() {
    for (name, code) in [
        ("corrupt/bad_header.gpd", "S001"),
        ("corrupt/unknown_edge.gpd", "V001"),
        ("corrupt/not_spherical.gpd", "V206"),
    ] {
        let o = run_on(&["validate"], name);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(stdout(&o).contains(code), "{name}: {}", stdout(&o));
    }
    let o = run_on(&["validate", "--format", "json"], "corrupt/unknown_edge.gpd");
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert_eq!(v["diagnostics"][0]["code"], "V001");
}

#[test]
fn knotted_cube() {
    let o = run_on(&["decide-knotted"], "fig2_taniyama.gpd");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("knotted: true"));
    assert!(out.contains("8/8 lifts carry a Hopf constituent"));

    let v = json(&run_on(&["decide-knotted", "--format", "json"], "fig2_taniyama.gpd"));
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["knotted"], true);
    assert_eq!(v["types"], serde_json::json!(["TypeD", "TypeD", "TypeD"]));
    let bits: Vec<&str> = v["lifts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["over_strand"].as_str().unwrap())
        .collect();
    assert_eq!(bits, ["000", "001", "010", "011", "100", "101", "110", "111"]);
}

#[test]
fn petersen_is_refused_but_lifts_list() {
    let o = run_on(&["decide-knotted"], "fig5_nonplanar.gpd");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("planarity required"));

    let o = run_on(&["lifts"], "fig5_nonplanar.gpd");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("4 lifts of 2 double points, 4 with a Hopf constituent"));
}

#[test]
fn handcuff_beyond_range() {
    let o = run_on(&["decide-knotted"], "handcuff_cr4.gpd");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("out of theorem range"));

    let v = json(&run_on(&["invariants", "--format", "json"], "handcuff_cr4.gpd"));
    assert_eq!(v["over_strand"], "0011");
    let pair = v["diagrams"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["components"] == 2)
        .unwrap();
    assert_eq!(pair["crossings"], 4);
    assert_eq!(pair["linking_number"], 0);
    assert_eq!(pair["class"], "unclassified");
}

#[test]
fn invariants_of_a_chosen_lift_and_cycle() {
    let o = run_on(&["invariants", "--lift", "010", "--cycle", "e0"], "trefoil_shadow.gpd");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("trefoil"));

    let o = run_on(&["invariants", "--lift", "01"], "trefoil_shadow.gpd");
    assert_eq!(o.status.code(), Some(2));
    let o = run_on(&["invariants", "--cycle", "e7"], "trefoil_shadow.gpd");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_types_and_cycles() {
    let v = json(&run_on(&["classify", "--format", "json"], "theta_type_a.gpd"));
    assert_eq!(v["points"][0]["type"], "TypeA");
    assert_eq!(v["cycles"].as_array().unwrap().len(), 3);
    let certified = v["cycles"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["certified_unknotted"] == true)
        .count();
    assert_eq!(certified, 3);
}

#[test]
fn catalog_has_ten_rows() {
    let o = regproj(&["catalog", "--max-cr", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = stdout(&o).lines().filter(|l| l.starts_with('C')).count();
    assert_eq!(rows, 10);

    let v = json(&regproj(&["catalog", "--format", "json", "--max-cr", "2"]));
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    assert_eq!(regproj(&["catalog", "--max-cr", "4"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(regproj(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(regproj(&["lifts"]).status.code(), Some(2));
    assert_eq!(regproj(&["lifts", "/nonexistent.gpd"]).status.code(), Some(2));
    assert_eq!(regproj(&["catalog", "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn verify_theorems_is_deterministic() {
    let a = regproj(&["verify-theorems", "--jobs", "1"]);
    let b = regproj(&["verify-theorems"]);
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert_eq!(out.lines().filter(|l| l.starts_with("criterion")).count(), 10);
    // exit status follows the criteria
    let all_pass = out.contains("10 of 10 criteria passed");
    assert_eq!(a.status.code(), Some(if all_pass { 0 } else { 1 }));
}
