//! Exit-code and file-format contract of the command-line binary.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tpart"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("tpart-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_writes_and_reads_back() {
    let path = tmp("gen.txt");
    let out = bin()
        .args(["gen", "paley", "7", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("tournament 7\n"));
    assert_eq!(text.lines().count(), 7);

    // bad generator specs are usage errors
    let out = bin().args(["gen", "paley", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().args(["gen", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn partition_success_and_verify_round_trip() {
    let input = tmp("part-input.txt");
    let cert = tmp("part-cert.json");
    assert_eq!(
        bin().args(["gen", "random", "450", "3", "--out", input.to_str().unwrap()])
            .status()
            .unwrap()
            .code(),
        Some(0)
    );
    let out = bin()
        .args([
            "partition",
            input.to_str().unwrap(),
            "--k",
            "1",
            "--seed",
            "3",
            "--out",
            cert.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // the emitted artifact verifies against its tournament
    let out = bin()
        .args(["verify", input.to_str().unwrap(), cert.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // and fails against a different tournament
    let other = tmp("part-other.txt");
    bin().args(["gen", "random", "450", "4", "--out", other.to_str().unwrap()])
        .status()
        .unwrap();
    let out = bin()
        .args(["verify", other.to_str().unwrap(), cert.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn partition_failure_names_stage() {
    let input = tmp("trans.txt");
    bin().args(["gen", "transitive", "60", "--out", input.to_str().unwrap()])
        .status()
        .unwrap();
    let out = bin()
        .args(["partition", input.to_str().unwrap(), "--k", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("stage"), "stderr: {}", stderr);
}

#[test]
fn strict_mode_refuses_and_cites_the_bound() {
    let input = tmp("strict.txt");
    bin().args(["gen", "random", "500", "5", "--out", input.to_str().unwrap()])
        .status()
        .unwrap();
    let out = bin()
        .args(["partition", input.to_str().unwrap(), "--mode", "strict"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("e8"), "bound missing from: {}", stderr);
}

#[test]
fn cycles_error_paths() {
    let input = tmp("cyc.txt");
    bin().args(["gen", "random", "100", "6", "--out", input.to_str().unwrap()])
        .status()
        .unwrap();
    // lengths that do not sum to n are a usage error
    let out = bin()
        .args(["cycles", input.to_str().unwrap(), "--lengths", "50,49"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // valid lengths fail at the partition stage at this size, exit 4
    let out = bin()
        .args(["cycles", input.to_str().unwrap(), "--lengths", "50,50"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn oracle_exit_codes() {
    let out = bin()
        .args(["oracle", "camion", "--n-max", "4", "--samples", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("\"checks\""));

    let out = bin().args(["oracle", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // a deliberately oversized removal enumeration exceeds its budget
    let out = bin()
        .args(["oracle", "connectivity", "--n-max", "60", "--k-max", "6", "--samples", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bench_emits_timings() {
    let out = bin().args(["bench", "--n", "120"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().count() >= 4);
    assert!(stdout.contains("\"kernel\""));
}
