mod support;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn onebridge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onebridge"))
        .args(args)
        .env_remove("ONEBRIDGE_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str], definition: &str) -> Value {
    let out = onebridge(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    support::validate(&doc, definition).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    doc
}

#[test]
fn fillings_text() {
    let out = onebridge(&["fillings", "7", "2", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let slopes: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(slopes, ["3/2", "5/3", "8/5"]);

    let text = stdout(&onebridge(&["fillings", "8", "3", "6"]));
    assert_eq!(text, "K(8, 3, 6): knot\n(none)\n");

    let text = stdout(&onebridge(&["fillings", "6", "2", "2"]));
    assert!(text.starts_with("K(6, 2, 2): closure is a link"), "{text}");
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["fillings", "3", "0", "1"][..],
        &["fillings", "3", "2", "1"],
        &["fillings", "2", "1", "1"],
        &["knots", "4", "6", "--max-w", "10"],
        &["knots", "4", "2", "--max-w", "10"],
        &["knots", "3", "2", "--max-w", "2"],
        &["tuple", "5", "3", "0", "1", "-1"],
        &["tuple", "5", "3", "1", "5", "1"],
        &["verify", "--max-w", "2"],
        &["verify", "--max-w", "201"],
        &["census", "--max-w", "1001"],
        &["table1", "--max-w", "3"],
        &["tuple", "3", "2", "1", "1", "1", "--format", "csv"],
        &["--jobs", "0", "census", "--max-w", "5"],
        &["frobnicate"],
    ] {
        let out = onebridge(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let err = String::from_utf8(onebridge(&["tuple", "5", "3", "0", "1", "-1"]).stderr).unwrap();
    assert!(err.contains("(4)"), "{err}");
}

#[test]
fn json_outputs_match_schema() {
    let doc = json(
        &["fillings", "7", "2", "4", "--format", "json"],
        "fillings_output",
    );
    assert_eq!(doc["fillings"].as_array().unwrap().len(), 3);
    json(
        &["fillings", "6", "2", "2", "--format", "json"],
        "fillings_output",
    );
    json(
        &["knots", "3", "2", "--max-w", "20", "--format", "json"],
        "knots_output",
    );
    let doc = json(
        &["tuple", "3", "2", "2", "2", "-1", "--format", "json"],
        "tuple_output",
    );
    assert_eq!(
        doc["image"]["braid"],
        serde_json::json!({"w": 7, "b": 2, "t": 4})
    );
    let doc = json(
        &["tuple", "3", "1", "0", "0", "1", "--format", "json"],
        "tuple_output",
    );
    assert_eq!(doc["image"]["kind"], "degenerate");
    let doc = json(
        &["census", "--max-w", "8", "--list", "--format", "json"],
        "census_output",
    );
    for r in doc["records"].as_array().unwrap() {
        support::validate(r, "census_record").unwrap();
    }
    let doc = json(&["table1", "--format", "json"], "table1_output");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 36);
    let doc = json(
        &["verify", "--max-w", "12", "--format", "json"],
        "verify_output",
    );
    assert_eq!(doc["passed"], true);
}

#[test]
fn census_counts_and_dedup() {
    let text = stdout(&onebridge(&["census", "--max-w", "10"]));
    assert!(
        text.contains("knots: 72, admitting: 60, fillings: 86"),
        "{text}"
    );
    let text = stdout(&onebridge(&[
        "census",
        "--max-w",
        "10",
        "--dedup",
        "canonical",
    ]));
    assert!(
        text.contains("knots: 36, admitting: 30, fillings: 43"),
        "{text}"
    );
    let text = stdout(&onebridge(&["census", "--max-w", "3"]));
    assert!(
        text.contains("knots: 0, admitting: 0, fillings: 0"),
        "{text}"
    );
    let text = stdout(&onebridge(&["census", "--max-w", "4", "--list"]));
    assert!(
        text.contains("K(4, 1, 2)") && text.contains("K(4, 2, 1)"),
        "{text}"
    );
}

#[test]
fn census_csv() {
    let text = stdout(&onebridge(&["census", "--max-w", "10", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("w,b,t,is_knot,is_canonical,fillings"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 240);
    assert!(rows.contains(&"7,2,4,true,true,3/2;5/3;8/5"));
    assert!(rows.contains(&"8,3,6,true,true,"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["census", "--max-w", "12", "--list", "--format", "json"][..],
        &["table1"],
        &["verify", "--max-w", "10"],
    ] {
        let a = onebridge(args);
        let b = onebridge(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let single = onebridge(&["census", "--max-w", "20", "--list", "--format", "json"]);
    let multi = onebridge(&[
        "--jobs", "4", "census", "--max-w", "20", "--list", "--format", "json",
    ]);
    assert_eq!(single.stdout, multi.stdout);
}

#[test]
fn table1_check_passes() {
    let out = onebridge(&["table1", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 36);
    let golden =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/table1.txt"))
            .unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn word_subcommand() {
    let out = onebridge(&["word", "4", "1", "2"]);
    let word: Vec<i64> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(word, [1, 3, 2, 1, 3, 2, 1]);
}

#[test]
fn cache_dir_from_env_and_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_onebridge"))
            .args(["census", "--max-w", "9"])
            .args(extra)
            .env("ONEBRIDGE_CACHE_DIR", env_dir.path())
            .output()
            .unwrap()
    };
    let first = run(&[]);
    assert_eq!(first.status.code(), Some(0));
    assert!(env_dir.path().join("census-w9.jsonl").exists());
    let second = run(&[]);
    assert_eq!(first.stdout, second.stdout);

    let flag = flag_dir.path().to_str().unwrap();
    run(&["--cache-dir", flag]);
    assert!(flag_dir.path().join("census-w9.jsonl").exists());
}

#[test]
fn corrupt_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census-w9.jsonl");
    std::fs::write(&path, "not json\n").unwrap();
    let d = dir.path().to_str().unwrap();
    let out = onebridge(&["census", "--max-w", "9", "--cache-dir", d]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        stdout(&onebridge(&["census", "--max-w", "9"]))
    );
    let header = std::fs::read_to_string(&path).unwrap();
    assert!(header.starts_with('{'));
}
