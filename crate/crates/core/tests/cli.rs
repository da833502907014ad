use std::process::{Command, Output};

use serde_json::Value;

fn bchroma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bchroma"))
        .args(args)
        .env_remove("BCHROMA_MAX_NODES")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = bchroma(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(doc["schema"], "bchroma/1");
    doc
}

#[test]
fn phi_reports_value_and_witness() {
    let doc = json(&["phi", "prod(star:3,star:3)"]);
    assert_eq!(doc["phi"], 5);
    assert_eq!(doc["graph"], "prod(star:3,star:3)");
    assert_eq!(json(&["phi", "pow(prod(star:3,star:3),2)"])["phi"], 8);
    assert_eq!(json(&["phi", "path:4", "--workers", "2"])["phi"], 2);
}

#[test]
fn phi_output_does_not_depend_on_workers() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_seconds");
        v
    };
    let a = strip(json(&["phi", "line(prod(star:3,star:2))", "--workers", "1"]));
    let b = strip(json(&["phi", "line(prod(star:3,star:2))", "--workers", "3"]));
    assert_eq!(a, b);
}

#[test]
fn other_invariants() {
    assert_eq!(json(&["chi", "cycle:5"])["chi"], 3);
    assert_eq!(json(&["omega", "line(star:4)"])["omega"], 4);
    assert_eq!(json(&["mdegree", "prod(star:4,star:3)"])["m_degree"], 5);
}

#[test]
fn count_reports_probability() {
    let doc = json(&["count", "prod(complete:3,complete:3)", "3"]);
    assert_eq!(doc["count"], "12");
    assert_eq!(doc["percent"], "0.0610%");
    assert_eq!(doc["percent_bucket"], "0.06%");
    assert_eq!(json(&["count", "complete:2", "2"])["count"], "2");
}

#[test]
fn budget_exhaustion_has_its_own_exit_code() {
    let out = bchroma(&["phi", "prod(star:5,star:5)", "--max-nodes", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bchroma(&["count", "prod(complete:4,complete:3)", "5", "--max-nodes", "50"]);
    assert_eq!(out.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["count_lower_bound"].is_string());
}

#[test]
fn parse_errors_name_the_column() {
    let out = bchroma(&["phi", "prod(star:3 star:3)"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("at column 13"), "{err}");
}

#[test]
fn constructions_emit_certificates() {
    let doc = json(&["construct", "star-product", "4", "3"]);
    assert_eq!(doc["k"], 5);
    assert_eq!(doc["valid"], true);
    assert_eq!(json(&["construct", "total-star-product", "5", "4"])["k"], 13);
    assert_eq!(json(&["construct", "star-product-power", "4", "3", "2"])["k"], 8);
    assert_eq!(json(&["construct", "rook-grid", "5"])["k"], 6);
    assert_eq!(json(&["construct", "rook-power3", "4"])["k"], 13);

    let out = bchroma(&["construct", "total-star-product", "4", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m >= 3"));
}

#[test]
fn construct_writes_dot() {
    let path = std::env::temp_dir().join(format!("bchroma-cli-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    json(&["construct", "star-product", "3", "3", "--dot", p]);
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches("peripheries=2").count(), 5);
}

#[test]
fn verify_exit_code_tracks_mismatches() {
    let doc = json(&["verify", "star-product", "--n", "1..4", "--m", "1..3"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["agreement"] != "MISMATCH"));
    assert!(rows.iter().any(|r| r["agreement"] == "solver-arbitrated"));
    json(&["verify", "mdegree", "--family", "power2", "--n", "2..5", "--m", "2..5"]);

    let out = bchroma(&["verify", "counts", "--text"]);
    assert_eq!(out.status.code(), Some(4));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("MISMATCH").count(), 2, "{text}");
    assert!(text.contains("11384") && text.contains("570240"));
}

#[test]
fn export_formats() {
    let table = json(&["export", "table", "--max", "3"]);
    assert!(!table["phi"].as_array().unwrap().is_empty());
    let edges = bchroma(&["export", "graph", "prod(star:2,star:2)", "--format", "edges"]);
    assert!(String::from_utf8_lossy(&edges.stdout).starts_with("9 12\n"));
    let grid = bchroma(&["export", "grid", "4", "--text"]);
    assert!(String::from_utf8_lossy(&grid.stdout).starts_with(" (1)   5   4\n"));
    let g = bchroma(&["export", "graph", "total(star:2)"]);
    assert!(g.status.success());
}
