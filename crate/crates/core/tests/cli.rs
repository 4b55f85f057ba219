use std::process::Command;

use glring::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("glring").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn sym_paper_lines() {
    let (code, out, _) = call(&["sym", "--n", "4", "--max-k", "4", "--format", "paper"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.first(), Some(&"s_0 = 1(0)"));
    assert_eq!(lines.last(), Some(&"s_4 = (1)+(2)+(2,1)+(4)"));
}

#[test]
fn sym_mod2_and_csv() {
    let (code, out, _) = call(&["sym", "--n", "4", "--max-k", "8", "--mod2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().count() >= 9);
    let (code, out, _) = call(&["sym", "--n", "2", "--max-k", "2", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.headers().unwrap().len(), 5);
    assert_eq!(rdr.records().count(), 3);
}

#[test]
fn tau_json_entries() {
    let (code, out, _) = call(&["tau", "--n", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["entries"], serde_json::json!([[2, 2], [1, 3]]));
    assert_eq!(v["mode"], "GL");
}

#[test]
fn tmat_blocks_and_eigen() {
    let (code, out, _) = call(&["tmat", "--n", "3", "--blocks"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = call(&["eigen", "--n", "4", "--kernel-at-1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["kernel_at_one_dim"], 8);
}

#[test]
fn rank_sym_profile() {
    let (code, out, _) = call(&["rank-sym", "--n", "2", "--max-k", "4", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains('4'));
}

#[test]
fn series_commands() {
    let (code, out, _) = call(&["series", "connectivity", "--lambda", "5,2,1"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "13"));
    let (code, out, _) = call(&["series", "connectivity", "--lambda", "5,4"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "13"));
    let (code, out, _) = call(&["series", "pole-order", "--num", "1", "--den", "1,1,3"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "3"));
    let (code, _, _) = call(&["series", "chi", "--j", "3", "--order", "40"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = call(&["series", "steinberg", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn simple_dim() {
    let (code, out, _) = call(&["simple-dim", "--lambda", "1", "--dim", "1,2,3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains('3'));
}

#[test]
fn verify_embedded_tables() {
    let (code, out, _) = call(&["verify-paper-tables"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["sym"]).0, EXIT_USAGE);
    assert_eq!(call(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
    assert_eq!(call(&["series", "chi", "--j", "4"]).0, EXIT_USAGE);
    assert_eq!(call(&["series", "connectivity", "--lambda", "2,2"]).0, EXIT_USAGE);
    let (code, _, err) = call(&["simple-dim", "--lambda", "5,4", "--dim", "2"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(!err.is_empty());
    let (code, _, _) = call(&["verify-paper-tables", "--data", "/nonexistent/dir"]);
    assert_eq!(code, EXIT_FAILED);
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_glring");
    let runs: Vec<_> = (0..2)
        .map(|_| Command::new(bin).args(["tau", "--n", "4", "--format", "csv"]).output().unwrap())
        .collect();
    assert!(runs[0].status.success());
    assert_eq!(runs[0].stdout, runs[1].stdout);
    let bad = Command::new(bin).args(["tau", "--n", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
