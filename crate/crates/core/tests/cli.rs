mod common;

use std::path::PathBuf;
use std::process::Command;

use coxeter_core::cli::{parse_graph_text, run_with, serialize_graph};
use coxeter_core::{canonical_form, connected_graphs, free_trees, paper_figure, Figure};
use jsonschema::JSONSchema;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["coxeter"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn schema() -> JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(schema: &JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
}

#[test]
fn classify_text_output() {
    let (code, out, err) = run(&["classify", &fixture("fig2.txt")]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("HigherRank\n"));
    assert!(out.contains("signature: (12, 2, 0)"));
    assert!(out.contains("exact: true"));
    let (code, out, _) = run(&["classify", &fixture("fig1.txt")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("StronglyHyperbolic\n"));
    let (_, out, _) = run(&["classify", &fixture("labeled.txt"), "--tol", "1e-6"]);
    assert!(out.contains("approximate: false"));
    assert!(out.contains("exact: false"));
}

#[test]
fn json_reports_validate_and_are_deterministic() {
    let schema = schema();
    let cases: Vec<Vec<String>> = vec![
        vec!["classify".into(), fixture("fig1.txt"), "--json".into()],
        vec!["classify".into(), fixture("labeled.txt"), "--json".into()],
        vec!["classify".into(), fixture("fig3_example.txt"), "--json".into()],
        vec!["decompose".into(), fixture("fig2.txt"), "--json".into()],
        vec!["decompose".into(), fixture("k4.txt"), "--json".into()],
        vec!["search-separated".into(), fixture("fig2.txt"), "--json".into()],
        vec!["search-separated".into(), fixture("planted.txt"), "--json".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, first, err) = run(&args);
        let (_, second, _) = run(&args);
        assert_eq!(first, second, "reports must be byte-identical");
        if args[0] == "decompose" && args[1].ends_with("k4.txt") {
            assert_eq!(code, 2, "{err}");
            continue;
        }
        assert_eq!(code, 0, "{args:?}: {err}");
        let doc: Value = serde_json::from_str(&first).unwrap();
        assert_valid(&schema, &doc);
        assert_eq!(doc["command"], args[0]);
    }
}

#[test]
fn decomposition_report_contents() {
    let (code, out, _) = run(&["decompose", &fixture("fig2.txt"), "--json"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let cert = &doc["certificate"];
    assert_eq!(cert["kind"], "decomposition");
    assert!(cert["lambda2"].as_f64().unwrap() > 2.0);
    for side in ["positive", "negative"] {
        let part = &cert[side];
        assert_eq!(part["vertices"].as_array().unwrap().len(), 7);
        for r in part["residuals"].as_array().unwrap() {
            assert!(r["value"].as_f64().unwrap() >= -1e-8);
        }
        assert!(part["lambda_max"].as_f64().unwrap() >= cert["lambda2"].as_f64().unwrap() - 1e-8);
    }
    let (code, out, _) = run(&["search-separated", &fixture("planted.txt"), "--json"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["certificate"]["first"], serde_json::json!(["a1", "a2", "a3", "a4"]));
    assert_eq!(doc["certificate"]["conclusion"], "HigherRank");
    let (_, out, _) = run(&["search-separated", &fixture("fig2.txt"), "--json"]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert!(doc["certificate"].is_null());
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["decompose", &fixture("a3.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("HigherRank"));
    let (code, _, err) = run(&["decompose", &fixture("two_k4.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("connected"));
    let (code, _, err) = run(&["classify", &fixture("bad_self_loop.txt")]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"));
    let (code, _, err) = run(&["classify", &fixture("bad_label_two.txt")]);
    assert_eq!(code, 1);
    assert!(err.contains("omit the edge"));
    let (code, _, _) = run(&["classify", &fixture("missing.txt")]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["classify", &fixture("a3.txt"), "--tol=-1"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["search-separated", &fixture("fig1.txt"), "--max-n", "10"]);
    assert_eq!(code, 3);
    assert!(err.contains("bound"));
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
    let (code, _, _) = run(&["enumerate", "graphs", "--n", "9"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "triples", "--component-size", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_commands() {
    let (code, out, _) = run(&["verify", "graphs", "--max-n", "7"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("996 graphs, 0 higher-rank witnesses, PASS\n"), "{out}");
    let (code, out, _) = run(&["verify", "trees", "--max-n", "11"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("436 trees, 0 higher-rank witnesses, PASS\n"));
    assert!(out.contains("n=11: 235"));
    let (code, out, _) = run(&["verify", "triples", "--component-size", "2"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("PASS"));
}

#[test]
fn enumerate_output_formats() {
    let (code, out, _) = run(&["enumerate", "graphs", "--n", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, ["canonical_form", "n", "edge_list", "class", "p", "q", "r", "lambda1", "lambda2", "exact"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    let forms: Vec<String> = connected_graphs(4).unwrap().iter().map(|g| canonical_form(g).to_hex()).collect();
    assert_eq!(rows.iter().map(|r| r[0].to_string()).collect::<Vec<_>>(), forms);

    let (code, out, _) = run(&["enumerate", "trees", "--n", "7", "--format", "jsonl"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 11);
    assert!(lines.iter().all(|v| v["n"] == 7 && v["exact"] == true));
}

#[test]
fn figure_command_round_trips() {
    for (name, figure) in [("fig1", Figure::Fig1), ("fig2", Figure::Fig2), ("fig3_example", Figure::Fig3Example)] {
        let (code, out, _) = run(&["figure", name]);
        assert_eq!(code, 0);
        assert_eq!(parse_graph_text(&out).unwrap().graph, paper_figure(figure));
        let stored = std::fs::read_to_string(fixture(&format!("{name}.txt"))).unwrap();
        assert_eq!(out, stored);
    }
    let (code, _, _) = run(&["figure", "fig4"]);
    assert_eq!(code, 1);
}

#[test]
fn parse_serialize_round_trip_on_fixtures_and_corpus() {
    for entry in std::fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        if let Ok(doc) = parse_graph_text(&text) {
            let again = parse_graph_text(&serialize_graph(&doc.graph)).unwrap();
            assert_eq!(again.graph, doc.graph, "{}", path.display());
        }
    }
    let mut corpus: Vec<_> = (1..=7).flat_map(|n| connected_graphs(n).unwrap()).collect();
    corpus.extend((1..=11).flat_map(|n| free_trees(n).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let labels = [
        coxeter_core::BondLabel::THREE,
        coxeter_core::BondLabel::finite(7).unwrap(),
        coxeter_core::BondLabel::INFINITY,
    ];
    for _ in 0..200 {
        let n = rand::Rng::gen_range(&mut rng, 1..=12);
        corpus.push(common::random_graph(&mut rng, n, 0.4, &labels));
    }
    corpus.shuffle(&mut rng);
    assert!(corpus.len() >= 1000);
    for g in &corpus {
        let text = serialize_graph(g);
        let doc = parse_graph_text(&text).unwrap();
        assert_eq!(&doc.graph, g);
        assert_eq!(serialize_graph(&doc.graph), text);
    }
}

#[test]
fn parse_positions() {
    let doc = parse_graph_text("# c\nvertices: a b c\n\nedge a b\nedge c b inf\n").unwrap();
    assert_eq!(doc.vertices_line, 2);
    assert_eq!(doc.edge_lines[&(0, 1)], 4);
    assert_eq!(doc.edge_lines[&(1, 2)], 5);
}

#[test]
fn binary_uses_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_coxeter");
    let ok = Command::new(bin).args(["classify", &fixture("fig2.txt")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("HigherRank"));
    assert!(ok.stderr.is_empty());
    let bad = Command::new(bin).args(["decompose", &fixture("a3.txt")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("precondition"));
    let parse = Command::new(bin).args(["classify", &fixture("bad_self_loop.txt")]).output().unwrap();
    assert_eq!(parse.status.code(), Some(1));
}
