use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dynmatch::harness::{read_sequence, RunReport};

fn dynmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynmatch"))
        .args(args)
        .env_remove("DYNMATCH_SEED")
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_run_verifies_each_update() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("w.seq");
    let json = dir.path().join("r.json");
    let out = dynmatch(&[
        "gen", "--kind", "random", "--n", "40", "--len", "300", "--p-insert", "0.6", "--seed", "5", "--out",
        path_str(&seq),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (n, events) = read_sequence(fs::read(&seq).unwrap().as_slice()).unwrap();
    assert_eq!((n, events.len()), (40, 300));

    for engine in ["full", "boot", "naive"] {
        let out = dynmatch(&[
            "run", "--engine", engine, "--in", path_str(&seq), "--verify", "each", "--json-out", path_str(&json),
        ]);
        assert!(out.status.success(), "{}: {}", engine, String::from_utf8_lossy(&out.stderr));
        let report = RunReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(report.engine, engine);
        assert_eq!(report.updates_applied, 300);
        assert!(report.verified);
    }
}

#[test]
fn adaptive_gen_records_the_realized_trace() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("a.seq");
    let out = dynmatch(&[
        "gen", "--kind", "adaptive_matched_attack", "--n", "32", "--len", "200", "--seed", "2", "--out",
        path_str(&seq),
    ]);
    assert!(out.status.success());
    let (_, events) = read_sequence(fs::read(&seq).unwrap().as_slice()).unwrap();
    assert_eq!(events.len(), 200);
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let gen = |name: &str, seed: &str| {
        let p = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_dynmatch"))
            .args(["gen", "--kind", "random", "--n", "20", "--len", "50", "--out", path_str(&p)])
            .env("DYNMATCH_SEED", seed)
            .output()
            .unwrap();
        assert!(out.status.success());
        fs::read_to_string(p).unwrap()
    };
    assert_eq!(gen("a.seq", "9"), gen("b.seq", "9"));
    assert_ne!(gen("c.seq", "9"), gen("d.seq", "10"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("bad.seq");
    fs::write(&seq, "n 4\n+ 0 1\n* 1 2\n").unwrap();
    let out = dynmatch(&["run", "--engine", "full", "--in", path_str(&seq)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    fs::write(&seq, "n 4\n- 0 1\n").unwrap();
    let out = dynmatch(&["run", "--engine", "full", "--in", path_str(&seq)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let out = dynmatch(&[
        "bench", "--engine", "naive", "--kind", "random", "--n-list", "16,32", "--seed", "1", "--csv-out",
        path_str(&csv),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].contains("ops_per_update"));
    assert_eq!(String::from_utf8_lossy(&out.stdout), text);
}

#[test]
fn fuzz_reports_clean_trials() {
    let dir = tempfile::tempdir().unwrap();
    let out = dynmatch(&["fuzz", "--trials", "10", "--seed", "3", "--fail-dir", path_str(dir.path())]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("10 trials"));
}
