use std::process::{Command, Output};

use serde_json::Value;

fn kunum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kunum")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = kunum(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["-f", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

fn error_of(args: &[&str]) -> (i32, Value) {
    let out = kunum(args);
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is one JSON object");
    (out.status.code().unwrap(), err)
}

#[test]
fn pick_text() {
    assert_eq!(stdout(&["pick", "3", "2"]), "v- = (2,1), v+ = (1,1)\nsin^2(pi delta) = 1/10\n");
}

#[test]
fn pick_json_and_oracle() {
    let v = json(&["pick", "13", "8", "--oracle"]);
    assert_eq!(v["oracle_checked"], true);
    let (m, p) = (&v["v_minus"], &v["v_plus"]);
    assert_eq!(m["a"].as_i64().unwrap() + p["a"].as_i64().unwrap(), 13);
    assert_eq!(m["b"].as_i64().unwrap() + p["b"].as_i64().unwrap(), 8);
}

#[test]
fn hilbert_map_examples() {
    assert_eq!(stdout(&["hilbert-map", "4", "1", "2"]).trim(), "-α");
    assert_eq!(stdout(&["hilbert-map", "3", "1", "2"]).trim(), "0");
    assert_eq!(stdout(&["hilbert-map", "7", "2", "3"]).trim(), "-α-3β");
    let v = json(&["hilbert-map", "7", "2", "3"]);
    assert_eq!((v["class"]["n"].as_i64(), v["class"]["m"].as_i64()), (Some(-1), Some(-3)));
    let table = stdout(&["hilbert-map", "--table"]);
    assert_eq!(table.lines().count(), 17);
}

#[test]
fn pairing_accepts_every_class_spelling() {
    for args in [&["pairing", "2", "1", "0", "1"][..], &["pairing", "2a+b", "b"], &["pairing", "2,1", "β"]] {
        assert_eq!(stdout(args).trim(), stdout(&["pairing", "2α+β", "0,1"]).trim(), "{args:?}");
    }
}

#[test]
fn birgraph_dot_has_special_edge() {
    let dot = stdout(&["-f", "dot", "birgraph"]);
    assert!(dot.starts_with("graph"));
    assert!(dot.contains("\"5,4\" -- \"7,1\""));
}

#[test]
fn birgraph_path_walks_between_endpoints() {
    let out = stdout(&["birgraph", "--sum-bound", "20", "--path", "5,4", "11,2"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.first().unwrap().starts_with("(5,4)"));
    assert!(lines.last().unwrap().contains("(11,2)"));
}

#[test]
fn certificate_formats() {
    let v = json(&["certify", "2,3", "5", "3"]);
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.last().unwrap()["v"], serde_json::json!({"a": 5, "b": 3}));
    let dot = stdout(&["-f", "dot", "certify", "2,1", "7", "-4"]);
    assert!(dot.starts_with("digraph"));
    let report = json(&["certify-all", "2,3", "--norm-bound", "200"]);
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);
    assert_eq!(report["certified"], report["total"]);
}

#[test]
fn json_outputs_parse() {
    for args in [
        &["catalog"][..],
        &["catalog", "1,16"],
        &["moduli-info", "5", "3"],
        &["strata", "2", "1"],
        &["strata-beta", "3"],
        &["fano-check", "3", "1"],
        &["quiver-degree", "0", "0", "1", "2"],
        &["phase-gap", "a", "b"],
        &["ext-locus", "a", "b"],
        &["classify-form", "--matrix", "[[-1,0],[-1,-1]]", "--serre", "[[1,1],[-1,0]]"],
        &["prime-witness", "40"],
        &["birgraph", "--sum-bound", "12"],
        &["oracle", "--suite", "exceptional", "--bound", "100"],
    ] {
        let v = json(args);
        assert!(v.is_object() || v.is_array(), "{args:?}");
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v);
    }
}

#[test]
fn svg_is_well_formed_with_one_circle_per_point() {
    let svg = stdout(&["render-lattice", "--window", "-2:2,-1:3"]);
    let doc = roxmltree::Document::parse(&svg).expect("well-formed XML");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let points: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("circle") && n.attribute("class") == Some("point"))
        .collect();
    assert_eq!(points.len(), 25);
    assert!(points.iter().any(|p| p.attribute("data-n") == Some("0") && p.attribute("data-m") == Some("1")));
    let bare = stdout(&["render-lattice", "--mode", "euclidean", "--no-labels"]);
    roxmltree::Document::parse(&bare).expect("well-formed XML");
}

#[test]
fn exit_codes() {
    let out = kunum(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let (code, err) = error_of(&["pick", "3"]);
    assert_eq!((code, err["error"].as_str()), (2, Some("usage")));
    let (code, _) = error_of(&["-f", "svg", "pick", "3", "2"]);
    assert_eq!(code, 2);
    let (code, _) = error_of(&["pairing", "2x+b", "b"]);
    assert_eq!(code, 2);
    let (code, err) = error_of(&["pick", "2", "4"]);
    assert_eq!((code, err["exit"].as_i64()), (3, Some(3)));
    let (code, _) = error_of(&["moduli-info", "0", "0"]);
    assert_eq!(code, 3);
    let (code, _) = error_of(&["certify", "2,5", "1", "1"]);
    assert_eq!(code, 3);
    let (code, _) = error_of(&["classify-form", "--matrix", "-1,-1,-1,-2", "--serre", "1,0,0,1"]);
    assert_eq!(code, 3);
    let (code, _) = error_of(&["prime-witness", "8"]);
    assert_eq!(code, 3);
    let (code, _) = error_of(&["quiver-degree", "0", "0", "1", "1"]);
    assert_eq!(code, 3);
}
