use std::process::{Command, Output};

use serde_json::{json, Value};

fn singlet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singlet")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn fuse_simple_doublets() {
    let out = singlet(&["fuse", "--p", "2", "M:1,2", "M:1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["terms"], json!([{"kind": "P", "r": 1, "s": 1, "mult": 1}]));
}

#[test]
fn unit_fixes_projectives() {
    let out = singlet(&["fuse", "--p", "3", "M:1,1", "P:0,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["terms"], json!([{"kind": "P", "r": 0, "s": 2, "mult": 1}]));
}

#[test]
fn both_engines_report_a_match() {
    let out = singlet(&["fuse", "--p", "3", "P:1,1", "P:2,2", "--engine", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["match"], json!(true));
    assert_eq!(v["schema"], json!(1));
    assert!(v.get("closed").is_none());
}

#[test]
fn tsv_fuse_line() {
    let out = singlet(&["--format", "tsv", "fuse", "--p", "2", "M:1,2", "M:1,2", "--engine", "both"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "M:1,2\tM:1,2\tP:1,1\tmatch\n");
}

#[test]
fn table_default_window() {
    let out = singlet(&["table", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["labels"].as_array().unwrap().len(), 9);
    assert_eq!(v["rows"].as_array().unwrap().len(), 81);
}

#[test]
fn empty_table_succeeds() {
    let out = singlet(&["table", "--p", "3", "--rmin", "2", "--rmax", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["rows"], json!([]));
}

#[test]
fn table_engines_agree() {
    let out = singlet(&["table", "--p", "3", "--rmin", "-2", "--rmax", "2", "--engine", "both", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["match"], json!(true));
}

#[test]
fn induction_examples() {
    let w = json_of(&singlet(&["induce", "--p", "3", "M:4,2"]));
    assert_eq!((&w["kind"], &w["rbar"], &w["s"]), (&json!("W"), &json!(2), &json!(2)));
    assert!(w.get("extended").is_none());

    let r = json_of(&singlet(&["induce", "--p", "3", "P:1,2"]));
    assert_eq!(r["kind"], json!("R"));
    assert!(r.get("extended").is_none());

    let e = json_of(&singlet(&["induce", "--p", "3", "P:1,1"]));
    assert_eq!(e["kind"], json!("R"));
    assert_eq!(e["extended"], json!(true));

    let v = json_of(&singlet(&["induce", "--p", "2", "F:1,1"]));
    assert_eq!(v["kind"], json!("V"));
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["fuse", "--p", "3", "Q:1,1", "M:1,1"][..],
        &["fuse", "--p", "3", "M:1,4", "M:1,1"],
        &["fuse", "--p", "1", "M:1,1", "M:1,1"],
        &["induce", "--p", "2", "FJ:1,2,2"],
        &["verify", "--rwin", "-1"],
        &["--jobs", "0", "table", "--p", "2"],
        &["frobnicate"],
    ] {
        let out = singlet(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(singlet(&["--help"]).status.code(), Some(0));
}

#[test]
fn fusion_suite_passes() {
    let out = singlet(&["verify", "--suite", "fusion", "--p", "2", "--rwin", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["passed"], json!(true));
    assert!(v["checks"].as_u64().unwrap() > 0);
}

#[test]
fn catalog_and_triplet_suites_pass() {
    for suite in ["catalog", "triplet"] {
        let out = singlet(&["verify", "--suite", suite, "--p", "2,3,4,5"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn bpz_suite_reports_the_p2_mismatch() {
    let out = singlet(&["verify", "--suite", "bpz", "--p", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json_of(&out);
    assert_eq!(v["passed"], json!(false));
    assert_eq!(v["suites"][0]["values"]["numeric"][0][1], json!(-0.318309886184));
}

#[test]
fn bpz_suite_passes_for_p_at_least_3() {
    let out = singlet(&["verify", "--suite", "bpz", "--p", "3,4,5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_byte_stable() {
    for args in [&["table", "--p", "3", "--engine", "both"][..], &["verify", "--p", "3,4"]] {
        let a = singlet(args);
        let mut with_jobs = vec!["--jobs", "1"];
        with_jobs.extend_from_slice(args);
        let b = singlet(&with_jobs);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, singlet(args).stdout);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fuse.json");
    let out = singlet(&["--out", path.to_str().unwrap(), "fuse", "--p", "2", "M:1,2", "M:1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, singlet(&["fuse", "--p", "2", "M:1,2", "M:1,2"]).stdout);
}
