//! End-to-end tests of the `graphsym` binary: output formats, exit
//! codes, file output, and the claim-verification workflow.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use graphsym::{canonical_form, FamilySpec, Graph};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_graphsym");

/// Repository root, so `file:` specs resolve against `data/`.
fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(repo_root())
        .output()
        .expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("stdout should be JSON")
}

#[test]
fn construct_writes_a_loadable_file_with_matching_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("j52.edges");
    let out = run(&["construct", "johnson:5,2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("10 vertices, 30 edges, valency 6"));

    let text = std::fs::read_to_string(&path).unwrap();
    let loaded = Graph::from_edge_list(&text).unwrap();
    let direct = "johnson:5,2".parse::<FamilySpec>().unwrap().build().unwrap();
    assert_eq!(loaded.edges(), direct.edges());
    assert_eq!(
        canonical_form(&loaded).unwrap().certificate,
        canonical_form(&direct).unwrap().certificate
    );
}

#[test]
fn construct_without_out_prints_edges_on_stdout_summary_on_stderr() {
    let out = run(&["construct", "cycle:5"]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout(&out);
    let first_data_line = body.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(first_data_line.trim(), "5");
    assert!(Graph::from_edge_list(&body).is_ok());
    assert!(stderr(&out).contains("5 vertices, 5 edges"));
}

#[test]
fn construct_json_embeds_the_edge_list() {
    let out = run(&["construct", "cycle:5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["family"], "cycle:5");
    assert_eq!(v["order"], 5);
    assert_eq!(v["size"], 5);
    assert_eq!(v["valency"], 2);
    assert_eq!(v["out"], Value::Null);
    let embedded = Graph::from_edge_list(v["edge_list"].as_str().unwrap()).unwrap();
    assert_eq!(embedded.order(), 5);
}

#[test]
fn construct_rejects_bad_specs_with_exit_2() {
    for bad in ["johnson:2", "nosuch:3", "paley:7", "taylor:11"] {
        let out = run(&["construct", bad]);
        assert_eq!(out.status.code(), Some(2), "spec {bad} should be refused");
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn analyze_json_matches_the_published_schema() {
    let out = run(&["analyze", "odd:2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    for key in
        ["family", "order", "valency", "girth", "diameter", "aut_order", "profile", "antipodal", "claims"]
    {
        assert!(v.get(key).is_some(), "missing report key {key}");
    }
    assert_eq!(v["family"], "odd:2");
    assert_eq!(v["order"], 10);
    assert_eq!(v["valency"], 3);
    assert_eq!(v["girth"], 5);
    assert_eq!(v["diameter"], 2);
    assert_eq!(v["aut_order"], 120);
    assert_eq!(v["profile"]["max_s_arc"], 3);
    assert_eq!(v["profile"]["max_s_geodesic"], 2);
    assert_eq!(v["profile"]["distance_transitive"], true);
    assert_eq!(v["profile"]["geodesic_transitive"], true);
    assert_eq!(v["profile"]["arc_cap_exceeded"], false);
    assert_eq!(v["antipodal"]["is_antipodal"], false);
    assert_eq!(v["antipodal"]["fibre_size"], Value::Null);
    assert_eq!(v["claims"], Value::Array(vec![]));
}

#[test]
fn analyze_acyclic_graph_reports_null_girth() {
    // A 4-vertex path: connected, no cycle.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.edges");
    std::fs::write(&path, "4\n0 1\n1 2\n2 3\n").unwrap();
    let out = run(&["analyze", &format!("file:{}", path.display()), "--json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v = json_stdout(&out);
    assert_eq!(v["girth"], Value::Null);
    assert_eq!(v["diameter"], 3);
    assert_eq!(v["aut_order"], 2);
}

#[test]
fn analyze_disconnected_graph_warns_and_restricts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("twotriangles.edges");
    std::fs::write(&path, "6\n0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n").unwrap();
    let out = run(&["analyze", &format!("file:{}", path.display()), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("disconnected"));
    let v = json_stdout(&out);
    assert_eq!(v["order"], 6);
    assert_eq!(v["valency"], 2);
    assert_eq!(v["girth"], Value::Null);
    assert_eq!(v["diameter"], Value::Null);
    assert_eq!(v["aut_order"], Value::Null);
    assert_eq!(v["profile"], Value::Null);
}

#[test]
fn analyze_refuses_graphs_beyond_the_scale_bound() {
    // hamming:5,3 has 243 vertices, over the 200-vertex search bound.
    let out = run(&["analyze", "hamming:5,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("200"), "stderr: {}", stderr(&out));
}

#[test]
fn analyze_data_files_resolve_from_the_repository_root() {
    let out = run(&["analyze", "file:foster.edges", "--json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v = json_stdout(&out);
    assert_eq!(v["order"], 90);
    assert_eq!(v["profile"]["max_s_arc"], 5);
    assert_eq!(v["diameter"], 8);
}

#[test]
fn analyze_human_output_mentions_antipodal_fibres() {
    let out = run(&["analyze", "kmb:3,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("antipodal"));
    assert!(text.contains("3 fibres of size 2"), "got: {text}");
}

#[test]
fn iso_alternative_involutions_give_isomorphic_covers() {
    for i in ["1", "2"] {
        let out = run(&["iso", "taylor:13", "taylor:13", "--alt-g", i, "--json"]);
        assert_eq!(out.status.code(), Some(0));
        let v = json_stdout(&out);
        assert_eq!(v["isomorphic"], true);
        assert_eq!(v["mapping"].as_array().unwrap().len(), 28);
    }
}

#[test]
fn iso_reports_non_isomorphic_with_exit_1() {
    let out = run(&["iso", "odd:2", "johnson:5,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("non-isomorphic"));
}

#[test]
fn iso_quadratic_residue_graph_matches_its_complement() {
    let out = run(&["iso", "paley:13", "complement(paley:13)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("isomorphic"));
}

#[test]
fn verify_default_manifest_passes_and_reports_schema_fields() {
    let out = run(&["verify", "--json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v = json_stdout(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["skipped"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() >= 150);
    assert!(v["version"].is_string());
    assert!(v["runtime_seconds"].is_number());
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.len() >= 20);
    for report in reports {
        for key in ["family", "order", "valency", "girth", "diameter", "aut_order", "profile", "antipodal", "claims"] {
            assert!(report.get(key).is_some(), "missing report key {key}");
        }
        for claim in report["claims"].as_array().unwrap() {
            assert_eq!(claim["status"], "pass");
            for key in ["citation", "field", "expected", "measured", "status"] {
                assert!(claim.get(key).is_some(), "missing claim key {key}");
            }
        }
    }
}

#[test]
fn verify_reports_failures_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wrong.json");
    std::fs::write(
        &path,
        r#"[{"spec": "odd:2", "citation": "deliberately wrong", "expected": {"max_s_arc": 4}}]"#,
    )
    .unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    assert!(stdout(&out).contains("expected 4, measured 3"));

    let json_run = run(&["verify", path.to_str().unwrap(), "--json"]);
    assert_eq!(json_run.status.code(), Some(1));
    let v = json_stdout(&json_run);
    assert_eq!(v["summary"]["fail"], 1);
    assert_eq!(v["reports"][0]["claims"][0]["measured"], 3);
    assert_eq!(v["reports"][0]["claims"][0]["status"], "fail");
}

#[test]
fn verify_empty_manifest_warns_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, "[]").unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("no claims"));
    assert!(stdout(&out).contains("0 pass, 0 fail"));
}

#[test]
fn verify_malformed_manifests_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{not json").unwrap();
    assert_eq!(run(&["verify", garbled.to_str().unwrap()]).status.code(), Some(2));

    // A claim without expected fields violates the manifest contract.
    let hollow = dir.path().join("hollow.json");
    std::fs::write(&hollow, r#"[{"spec": "cycle:5", "citation": "x", "expected": {}}]"#).unwrap();
    assert_eq!(run(&["verify", hollow.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&["verify", "/nonexistent/manifest.json"]).status.code(), Some(2));
}

#[test]
fn verify_unknown_fields_are_skipped_not_failed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unknown.json");
    std::fs::write(
        &path,
        r#"[{"spec": "cycle:5", "citation": "tbd", "expected": {"chromatic_number": 3}}]"#,
    )
    .unwrap();
    let out = run(&["verify", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("unknown field"));
    let v = json_stdout(&out);
    assert_eq!(v["summary"]["skipped"], 1);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["reports"][0]["claims"][0]["status"], "skipped");
}

#[test]
fn out_flag_writes_json_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["analyze", "kmb:3,2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["family"], "kmb:3,2");
    assert_eq!(v["antipodal"]["fibre_size"], 2);
    // Human summary still lands on stdout.
    assert!(stdout(&out).contains("geodesic transitive"));
}

#[test]
fn seedless_flag_is_accepted_everywhere() {
    let out = run(&["analyze", "cycle:5", "--seedless", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["profile"]["arc_cap_exceeded"], true);
}
