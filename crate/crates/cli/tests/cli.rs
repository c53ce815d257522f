mod common;

use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use binedge_cli::census::CensusRecord;
use binedge_cli::{AnalysisReport, GinListing};
use binedge_core::{PosetJson, VerificationReport, VerificationStatus};

fn binedge(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_binedge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    common::fixture(name).display().to_string()
}

const K5: &str = "5\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n";

#[test]
fn analyze_json_round_trips() {
    let out = binedge(&["analyze", &fixture("k35.txt"), "--format", "json", "--zn", "--truncate", "3"], "");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let report: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
    report.check_consistency().unwrap();
    assert_eq!(report.hilbert_z.iter().map(|s| s.r).collect::<Vec<_>>(), [5, 6, 7, 9, 10]);
    assert_eq!((report.depth, report.dim), (5, 10));
    assert!(report.hilbert_zn.unwrap().iter().all(|row| row.coefficients.is_some()));
}

#[test]
fn analyze_is_deterministic() {
    let a = binedge(&["analyze", "--format", "json"], K5);
    let b = binedge(&["analyze", "--format", "json"], K5);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn principal_ideal_from_stdin() {
    let out = binedge(&["analyze", "--format", "json"], "2\n1 2\n");
    let report: AnalysisReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((report.depth, report.dim, report.cm), (3, 3, true));

    let table = stdout(&binedge(&["analyze", "-"], "2\n1 2\n"));
    assert!(table.contains("depth      3\n"), "{table}");
    assert!(table.contains("CM         yes\n"), "{table}");
}

#[test]
fn five_path_has_seventeen_poset_elements() {
    let out = binedge(&["analyze", &fixture("path5.txt"), "--format", "json"], "");
    let report: AnalysisReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.poset.nodes.len(), 17);
    assert!(report.cm);
}

#[test]
fn field_flag_tags_the_output() {
    let out = binedge(&["analyze", &fixture("k35.txt"), "--format", "json", "--field", "fp:2"], "");
    let report: AnalysisReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.field.to_string(), "fp:2");
    assert!(report.field_disagreements.is_empty());
    assert!(stdout(&binedge(&["analyze", &fixture("k35.txt"), "--field", "fp:3"], "")).contains("field      fp:3"));
}

#[test]
fn analyze_with_verification() {
    let out = binedge(&["analyze", "--format", "json", "--verify", "--truncate", "4"], K5);
    assert_eq!(out.status.code(), Some(0));
    let report: AnalysisReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.verification.unwrap().status, VerificationStatus::Pass);
}

#[test]
fn bad_input_exits_2() {
    for input in ["3\n1 4\n", "not a graph", "2\n1 1\n"] {
        let out = binedge(&["analyze"], input);
        assert_eq!(out.status.code(), Some(2), "{input:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(binedge(&["gin", "/nonexistent/graph.txt"], "").status.code(), Some(2));
    assert_eq!(binedge(&["analyze", "--field", "fp:4"], K5).status.code(), Some(2));
    assert_eq!(binedge(&["verify", "--truncate", "0"], K5).status.code(), Some(2));
}

#[test]
fn verify_passes_on_the_worked_examples() {
    let out = binedge(&["verify", &fixture("k35.txt"), "--truncate", "6", "--format", "json"], "");
    assert_eq!(out.status.code(), Some(0));
    let report: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.passed());
    assert_eq!(report.truncation, 6);
    assert_eq!(report.checked_degrees, 7u64.pow(8) * 17);
    assert!(!stdout(&out).contains("first_mismatch"));

    let out = binedge(&["verify", "--truncate", "8"], K5);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn poset_of_k35_has_six_nodes() {
    let out = binedge(&["poset", &fixture("k35.txt"), "--format", "json"], "");
    let poset: PosetJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(poset.nodes.len(), 6);
    assert_eq!(poset.covers.len(), 6);

    let dot = stdout(&binedge(&["poset", &fixture("k35.txt")], ""));
    assert!(dot.starts_with("digraph"), "{dot}");
    assert_eq!(dot.matches(" -> ").count(), 6);
    assert!(dot.contains("Δ67"));
}

#[test]
fn gin_listings() {
    let k3 = stdout(&binedge(&["gin"], "3\n1 2\n1 3\n2 3\n"));
    assert_eq!(k3, "x1x2\nx1x3\nx2x3\n");

    let out = binedge(&["gin", "--format", "json"], "3\n1 2\n2 3\n");
    let listing: GinListing = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(listing.generators.contains(&"x1x3y2".to_string()));
    assert_eq!(listing.generators.len(), 3);
    assert!(listing.path_generators_agree);

    assert_eq!(stdout(&binedge(&["gin"], "3\n")), "\n");
}

fn census(args: &[&str]) -> Output {
    let mut full = vec!["census"];
    full.extend_from_slice(args);
    binedge(&full, "")
}

fn records(out: &Output) -> Vec<CensusRecord> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn census_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_arg = cache.display().to_string();
    let input = fixture("connected_4.g6");

    let first = census(&[&input, "--cache", &cache_arg, "--truncate", "6"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let recs = records(&first);
    assert_eq!(recs.len(), 6);
    assert!(recs.iter().all(|r| r.body.verify == "pass" && r.is_intact()));
    assert!(String::from_utf8_lossy(&first.stderr).contains("6 computed, 0 cached"));
    let written = fs::read_to_string(&cache).unwrap();
    assert_eq!(written.lines().count(), 6);

    let second = census(&[&input, "--cache", &cache_arg, "--truncate", "6"]);
    assert_eq!(second.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&second.stderr).contains("0 computed, 6 cached"));
    assert_eq!(second.stdout, first.stdout);
    assert_eq!(fs::read_to_string(&cache).unwrap(), written);

    let other_field = census(&[&input, "--cache", &cache_arg, "--truncate", "6", "--field", "fp:2"]);
    assert!(String::from_utf8_lossy(&other_field.stderr).contains("6 computed, 0 cached"));
    assert_eq!(fs::read_to_string(&cache).unwrap().lines().count(), 12);
}

#[test]
fn census_records_satisfy_depth_at_most_dim() {
    let out = census(&[&fixture("connected_le5.g6"), "--truncate", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 31);
    assert!(recs.iter().all(|r| r.body.depth <= r.body.dim && r.body.verify == "pass"));
    assert!(recs.iter().all(|r| r.body.cm == (r.body.depth == r.body.dim)));
}

#[test]
fn corrupt_cache_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_arg = cache.display().to_string();
    let input = fixture("connected_4.g6");
    assert_eq!(census(&[&input, "--cache", &cache_arg, "--truncate", "3"]).status.code(), Some(0));

    let good = fs::read_to_string(&cache).unwrap();
    let tampered = good.replacen("\"depth\":", "\"depth\":1", 1);
    assert_ne!(tampered, good);
    fs::write(&cache, &tampered).unwrap();
    let out = census(&[&input, "--cache", &cache_arg]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("checksum"));
    assert_eq!(fs::read_to_string(&cache).unwrap(), tampered);

    fs::write(&cache, format!("{good}{{\"graph\":\n")).unwrap();
    assert_eq!(census(&[&input, "--cache", &cache_arg]).status.code(), Some(4));
}

#[test]
fn census_rejects_bad_graph6() {
    let out = binedge(&["census"], "C~\n!!!\n");
    assert_eq!(out.status.code(), Some(2));
}
