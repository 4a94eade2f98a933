use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pfol(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfol")).args(args).current_dir(dir).output().expect("binary runs")
}

fn validator() -> jsonschema::Validator {
    let text = include_str!("../schema/run-report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).expect("schema compiles")
}

fn parse_valid(bytes: &[u8]) -> Value {
    let v: Value = serde_json::from_slice(bytes).expect("report is JSON");
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "schema violations {errors:?} in {v}");
    v
}

/// Runs a command expected to succeed and returns its validated report.
fn ok(args: &[&str], dir: &Path) -> Value {
    let out = pfol(args, dir);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    parse_valid(&out.stdout)
}

#[test]
fn exceptional_construct_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["construct", "--family", "exceptional", "--p", "5", "--out", "ex.json"], dir.path());
    let r = ok(&["classify", "ex.json"], dir.path());
    assert_eq!(r["result"]["label"], "Exceptional");
    // The zero locus of d omega at p = 5 contains the twisted cubic.
    assert_eq!(r["result"]["kupka_codim"], 2);
    assert_eq!(r["inputs"][0]["path"], "ex.json");
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn census_degree0_char2_full() {
    let dir = tempfile::tempdir().unwrap();
    let r = ok(&["census", "--p", "2", "--n", "3", "--degree", "0", "--mode", "full"], dir.path());
    let t = &r["result"]["tally"];
    assert_eq!(t["unclassified"], 0);
    assert_eq!(t["examined"], 63);
    assert_eq!(t["labels"]["Closed"], 63);
}

#[test]
fn census_worker_counts_agree() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["census", "--p", "3", "--n", "3", "--degree", "1", "--mode", "sample", "--n-samples", "300", "--seed", "9"];
    let mut seq = ok(&[&base[..], &["--workers", "1"]].concat(), dir.path());
    let mut par = ok(&[&base[..], &["--workers", "4"]].concat(), dir.path());
    assert_eq!(seq["result"]["tally"], par["result"]["tally"]);
    assert_eq!(seq["result"]["seed"], 9);
    seq["result"]["workers"] = Value::Null;
    par["result"]["workers"] = Value::Null;
    assert_eq!(seq["result"], par["result"]);
}

#[test]
fn nc2_node_triple() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("h.txt"), "x0^2*x1 + x0*x1^2\n").unwrap();
    let r = ok(&["nc2", "h.txt", "--p", "5"], dir.path());
    assert_eq!(r["result"]["nc2"], false);
    std::fs::write(dir.path().join("g.txt"), "x0*x1\n").unwrap();
    let r = ok(&["nc2", "g.txt", "--p", "5", "--nvars", "3"], dir.path());
    assert_eq!(r["result"]["nc2"], true);
}

#[test]
fn check_pencil_and_exceptional() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["construct", "--family", "pencil", "--p", "3", "--n", "3", "--out", "pen.json"], dir.path());
    let r = ok(&["check", "pen.json"], dir.path());
    assert_eq!(r["result"]["is_integrable"], true);
    assert_eq!(r["result"]["degree"], 0);
    ok(&["construct", "--family", "exceptional", "--p", "3", "--out", "ex.json"], dir.path());
    let r = ok(&["check", "ex.json"], dir.path());
    assert_eq!(r["result"]["is_integrable"], true);
    assert_eq!(r["result"]["degree"], 2);
}

#[test]
fn malformed_json_fails_with_report() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\n  \"field\": \n").unwrap();
    let out = pfol(&["check", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let r = parse_valid(&out.stderr);
    assert_eq!(r["error"]["kind"], "parse");
    assert!(r["error"]["message"].as_str().unwrap().contains("line"));
    let out = pfol(&["check", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    parse_valid(&out.stderr);
}

#[test]
fn precondition_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // deg F = 2 is not divisible by p = 5.
    let out = pfol(&["construct", "--family", "closed", "--p", "5", "--poly", "x0*x1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(parse_valid(&out.stderr)["error"]["kind"], "precondition");
    let out = pfol(&["census", "--p", "2", "--n", "3", "--degree", "7"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = pfol(&["census", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["--family", "closed", "--p", "3", "--n", "3"],
        &["--family", "log", "--p", "5", "--n", "3", "--seed", "4"],
        &["--family", "log", "--p", "3", "--k", "2", "--n", "3", "--factors", "x0;x1;x2", "--lambdas", "1;1;1"],
        &["--family", "pullback", "--p", "2", "--degree", "2", "--seed", "3"],
        &["--family", "exceptional", "--p", "7"],
        &["--family", "pencil", "--p", "5", "--n", "4", "--q", "2"],
    ];
    for (i, c) in cases.iter().enumerate() {
        let a = format!("a{i}.json");
        let r = ok(&[&["construct"], *c, &["--out", &a]].concat(), dir.path());
        let text = std::fs::read_to_string(dir.path().join(&a)).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), r["result"]["form"]);
        // Feeding the file through an identity operation must reproduce it.
        let form = pfol::io::form_from_json(&text).unwrap();
        assert_eq!(pfol::io::form_to_json(&form), text, "case {c:?}");
        let check = ok(&["check", &a], dir.path());
        assert_eq!(check["result"]["is_integrable"], true, "case {c:?}");
        assert_eq!(check["result"]["is_projective"], true, "case {c:?}");
    }
}

#[test]
fn construct_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["construct", "--family", "log", "--p", "5", "--n", "3", "--degrees", "1,2", "--seed", "11"];
    assert_eq!(pfol(&args, dir.path()).stdout, pfol(&args, dir.path()).stdout);
}

#[test]
fn pcurvature_and_cartier_reports() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["construct", "--family", "pencil", "--p", "2", "--n", "3", "--out", "pen.json"], dir.path());
    let r = ok(&["pcurvature", "pen.json", "--max-degree", "3"], dir.path());
    assert_eq!(r["result"]["p_closed_up_to_degree"], true);

    ok(&["construct", "--family", "closed", "--p", "3", "--n", "3", "--out", "c.json"], dir.path());
    let r = ok(&["cartier", "c.json"], dir.path());
    assert_eq!(r["result"]["is_zero"], true);

    let spec = r#"{"field":{"p":3,"k":1},"nvars":3,"lambdas":["1","2"],"factors":["x0","x1"]}"#;
    std::fs::write(dir.path().join("l.json"), spec).unwrap();
    let r = ok(&["cartier", "l.json"], dir.path());
    assert_eq!(r["result"]["input"], "log-spec");
    assert_eq!(r["result"]["cartier_log"]["lambdas"], serde_json::json!(["1", "2"]));

    // Non-closed input to the Cartier operator is a precondition failure.
    ok(&["construct", "--family", "pencil", "--p", "3", "--n", "3", "--out", "pen3.json"], dir.path());
    let out = pfol(&["cartier", "pen3.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    parse_valid(&out.stderr);
}

#[test]
fn schema_rejects_malformed_reports() {
    let dir = tempfile::tempdir().unwrap();
    let good = ok(&["census", "--p", "2", "--n", "3", "--degree", "0"], dir.path());
    let v = validator();
    let mut bad = good.clone();
    bad["schema"] = "pfol-run-report/0".into();
    assert!(!v.is_valid(&bad));
    let mut bad = good.clone();
    bad["result"]["tally"]["extra"] = 1.into();
    assert!(!v.is_valid(&bad));
    let mut bad = good;
    bad["error"] = serde_json::json!({"kind": "parse", "message": "", "exit_code": 2});
    assert!(!v.is_valid(&bad));
}
