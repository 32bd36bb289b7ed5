//! Black-box tests of the `cpfact` binary: exit-code contract, stream
//! separation, and pipeline composition.

use std::path::Path;
use std::process::{Command, Output};

fn cpfact(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpfact"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn generate_factorize_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();

    let out = cpfact(
        &["generate", "-n", "3", "--seed", "7", "-o", "a.txt"],
        p,
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let out = cpfact(&["factorize", "a.txt", "-o", "cert.txt"], p);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("success"));

    let out = cpfact(&["verify", "a.txt", "cert.txt"], p);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("valid"));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("a.txt"), "2\n2 1 2\n").unwrap();
    // Claims A = (1,1)(1,1)', which sums to the wrong matrix.
    std::fs::write(p.join("cert.txt"), "2 1\n1 1 1\n").unwrap();

    let out = cpfact(&["verify", "a.txt", "cert.txt"], p);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("invalid: sum mismatch"));
}

#[test]
fn dirichlet_prints_denominator_and_numerators() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpfact(&["dirichlet", "--alphas", "1/2", "--eps", "2/5"], dir.path());
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "q 2\np 1\n");
}

#[test]
fn separate_lists_violations_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("b.txt"), "2\n1/4 0 1/4\n").unwrap();
    let out = cpfact(&["separate", "b.txt"], p);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0 1\n1 0\n1 1\n");
}

#[test]
fn parse_error_reports_position_and_exits_64() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("bad.txt"), "2\n1 x\n1\n").unwrap();
    let out = cpfact(&["factorize", "bad.txt"], p);
    assert_eq!(out.status.code(), Some(64));
    let msg = stderr(&out);
    assert!(msg.contains("line 2"), "{msg}");
    assert!(msg.contains("column 3"), "{msg}");
}

#[test]
fn round_budget_exhaustion_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("a.txt"), "2\n2 1 2\n").unwrap();
    let out = cpfact(&["factorize", "a.txt", "--max-rounds", "1"], p);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bound exceeded"));
}

#[test]
fn non_interior_matrix_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("a.txt"), "2\n1 -1 1\n").unwrap();
    let out = cpfact(&["factorize", "a.txt"], p);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("not interior"));
}

#[test]
fn factorize_reads_stdin_and_writes_stdout() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_cpfact"))
        .args(["factorize", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2\n2 1 2\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let cert = String::from_utf8_lossy(&out.stdout);
    assert!(cert.starts_with("2 "), "{cert}");
}
