use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn nsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsq")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn formula_prints_exact_value() {
    let out = nsq(&["formula", "4", "3", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("144\nstatus: exact\n"), "{text}");
}

#[test]
fn girth45_prints_value_and_edges() {
    let out = nsq(&["girth45", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("5"));
    let edges = lines.next().unwrap().strip_prefix("edges: ").unwrap();
    assert_eq!(edges.split(' ').count(), 5);
}

#[test]
fn classify_uncovered() {
    let out = nsq(&["classify", "4", "15"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("Uncovered"));
    let rec = nsq(&["--format", "records", "classify", "4", "6"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&rec).trim()).unwrap();
    assert_eq!(v["regime"], "CaseI");
}

#[test]
fn search_certificate_records() {
    let out = nsq(&["--format", "records", "search", "product", "4", "3", "6", "--all-witnesses"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["value"], "64");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
    assert_eq!(v["witness_count_labeled"], 1);
}

#[test]
fn count_and_sum() {
    assert_eq!(stdout(&nsq(&["count", "3", "3", "3"])).trim(), "20");
    let out = nsq(&["search", "sum", "5", "3", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("20"));
}

#[test]
fn construct_check_isocheck_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let out = nsq(&["construct", "T:2,2", "4", "--out", path(&a)]);
    assert!(out.status.success(), "{}", stderr(&out));

    let check = nsq(&["check", "--spec", "3", "5", path(&a)]);
    assert!(check.status.success());
    assert!(stdout(&check).starts_with("member\nviolations: 0"));
    let tight = nsq(&["check", "--spec", "3", "4", path(&a)]);
    assert!(stdout(&tight).starts_with("not a member"));

    let b = dir.path().join("b.json");
    fs::write(&b, r#"{"n":4,"default":2,"edges":[[0,2,1],[1,3,1]]}"#).unwrap();
    assert_eq!(stdout(&nsq(&["isocheck", path(&a), path(&b)])).trim(), "isomorphic");
    fs::write(&b, r#"{"n":4,"default":2,"edges":[]}"#).unwrap();
    assert_eq!(stdout(&nsq(&["isocheck", path(&a), path(&b)])).trim(), "not isomorphic");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"n\":4,\n\"default\":x}").unwrap();
    let out = nsq(&["check", "--spec", "3", "5", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let suite = dir.path().join("suite.txt");
    fs::write(&suite, "4 3 6\n4 three 6\n").unwrap();
    let out = nsq(&["validate", "--suite", path(&suite)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn usage_errors() {
    assert_eq!(nsq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nsq(&["formula", "4", "3"]).status.code(), Some(2));
    assert_eq!(nsq(&["--max-nodes", "0", "count", "3", "3", "3"]).status.code(), Some(2));
    assert_eq!(nsq(&["--max-seconds", "-1", "count", "3", "3", "3"]).status.code(), Some(2));
    assert_eq!(nsq(&["construct", "V:3", "4"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded() {
    let out = nsq(&["--max-nodes", "10", "search", "product", "6", "4", "9"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert_eq!(nsq(&["girth45", "40"]).status.code(), Some(3));
}

#[test]
fn validate_golden_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.txt");
    fs::write(&suite, "# small grid\n4 3 6\n4 3 5\n").unwrap();
    let golden = dir.path().join("golden.jsonl");
    let run = |extra: &[&str]| {
        let mut args = vec!["validate", "--suite", path(&suite), "--golden", path(&golden)];
        args.extend_from_slice(extra);
        nsq(&args)
    };
    assert_eq!(run(&["--regen-golden"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(0));

    let text = fs::read_to_string(&golden).unwrap().replace("\"64\"", "\"65\"");
    fs::write(&golden, text).unwrap();
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("differs"));
}

#[test]
fn validate_csv_header() {
    let out = nsq(&["--format", "csv", "validate"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("n,s,q,regime,formula,oracle,agree,family,time_ms\n"));
    assert_eq!(text.lines().count(), 15);
}

#[test]
fn output_is_independent_of_threads() {
    let cases: [&[&str]; 4] = [
        &["--format", "records", "validate"],
        &["--format", "records", "search", "product", "6", "4", "9", "--all-witnesses"],
        &["--format", "records", "girth45", "8"],
        &["stability", "4", "3", "6", "--eps", "0,1/5,0.3"],
    ];
    for args in cases {
        let runs: Vec<Vec<u8>> = ["1", "2", "8"]
            .iter()
            .map(|t| {
                let mut a = vec!["--threads", t];
                a.extend_from_slice(args);
                let out = nsq(&a);
                assert!(out.status.success(), "{args:?}: {}", stderr(&out));
                out.stdout
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}
