//! End-to-end runs of the `trace-forge` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_trace-forge"));
    cmd.env_remove("TRACE_FORGE_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let value: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&value).expect("schema compiles")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn survey(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["survey", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

/// Every file in `dir` except `run.json`, plus `run.json` without `meta`.
fn snapshot(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let text = if name == "run.json" {
                let mut v = read_json(&p);
                v.as_object_mut().unwrap().remove("meta");
                v.to_string()
            } else {
                fs::read_to_string(&p).unwrap()
            };
            (name, text)
        })
        .collect();
    files.sort();
    files
}

#[test]
fn info_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("info.json");
    let out = run(&["sgp", "info", "4,5,11", "--json", json.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Frobenius number 7, conductor 8"), "{text}");
    let v = read_json(&json);
    assert_eq!(v["frobenius"], 7);
    assert_eq!(v["genus"], 5);
}

#[test]
fn trace_enum_lists_five_ideals() {
    for p in ["2", "3"] {
        let out = run(&["trace", "enum", "4,5,11", "--p", p]);
        assert!(out.status.success());
        let text = stdout(&out);
        for label in ["c + (t^5)", "c + (t^4, t^5)"] {
            assert!(text.contains(label), "p = {p}: {text}");
        }
    }
}

#[test]
fn bijection_and_probe() {
    let out = run(&["trace", "bijection", "3,7,8", "--p", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("OK"));
    let out = run(&["trace", "probe", "4,5,6", "--n", "2", "--samples", "0,1,2,-1,5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("5/5 distinct"), "{}", stdout(&out));
}

#[test]
fn artin_presets() {
    let out = run(&["artin", "sq0", "--p", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("Tr = {0, m, R}"), "{}", stdout(&out));
    let out = run(&["artin", "gor", "--samples", "0,1,2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("3 distinct"), "{}", stdout(&out));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["sgp", "info", "4,6"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "enum", "4,5,11", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "enum", "2,41", "--p", "2"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(survey(dir.path(), &["--max-genus", "11"]).status.code(), Some(2));
    assert_eq!(survey(dir.path(), &[]).status.code(), Some(2));
    // clap usage errors
    assert_eq!(run(&["nope"]).status.code(), Some(2));
}

#[test]
fn genus_zero_survey_is_one_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = survey(dir.path(), &["--max-genus", "0"]);
    assert!(out.status.success());
    let run = read_json(&dir.path().join("run.json"));
    assert_eq!(run["semigroups"], 1);
    let rec = read_json(&dir.path().join("H_1.json"));
    assert_eq!(rec["genus"], 0);
    assert_eq!(rec["n_trace"], 2);
}

#[test]
fn survey_records_validate_against_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let out = survey(dir.path(), &["--max-genus", "4", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let record_schema = schema("survey_record.schema.json");
    let mut records = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if name.starts_with("H_") {
            let v = read_json(&path);
            if let Err(errs) = record_schema.validate(&v) {
                let msgs: Vec<String> = errs.map(|e| e.to_string()).collect();
                panic!("{name}: {msgs:?}");
            }
            assert!(v["violations"].as_array().unwrap().is_empty(), "{name}");
            records += 1;
        }
    }
    assert_eq!(records, 15);

    let run_json = read_json(&dir.path().join("run.json"));
    assert!(schema("run.schema.json").is_valid(&run_json));
    assert_eq!(run_json["semigroups"], 15);

    let csv = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("gens,genus,mult,edim,arf,kunz_class,vs_condition,n_trace_p,bijection_ok,family_witness")
    );
    assert_eq!(lines.count(), 15);
}

#[test]
fn survey_is_deterministic_across_runs_and_threads() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();
    let args = ["--max-genus", "5", "--seed", "42", "--p", "3"];
    assert!(survey(a.path(), &args).status.success());
    assert!(survey(b.path(), &args).status.success());
    let out = bin()
        .env("TRACE_FORGE_THREADS", "2")
        .args(["survey", "--out", c.path().to_str().unwrap()])
        .args(args)
        .output()
        .unwrap();
    assert!(out.status.success());
    let first = snapshot(a.path());
    assert_eq!(first, snapshot(b.path()));
    assert_eq!(first, snapshot(c.path()));
    assert_eq!(read_json(&c.path().join("run.json"))["meta"]["threads"], 2);

    // a different seed changes only the probe samples
    let d = tempfile::tempdir().unwrap();
    assert!(survey(d.path(), &["--max-genus", "5", "--seed", "43", "--p", "3"]).status.success());
    assert_ne!(first, snapshot(d.path()));
}

#[test]
fn corpus_file_with_comments() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.txt");
    fs::write(&corpus, "# two entries\n4,5,11\n\n3,7,8  # minimal multiplicity\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "survey",
        "--corpus",
        corpus.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rec = read_json(&out_dir.join("H_3_7_8.json"));
    assert_eq!(rec["bijection"]["ok"], true);
    let rec = read_json(&out_dir.join("H_4_5_11.json"));
    assert_eq!(rec["n_trace"], 5);
}
