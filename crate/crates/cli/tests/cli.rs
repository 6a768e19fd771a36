//! End-to-end checks of the binary: exit codes, file round trips and the
//! report formats.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn leibniz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("leibniz-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn build_check_and_invariants_pipeline() {
    let file = tmp("remark34.alg");
    let out = leibniz(&[
        "build",
        "--family",
        "remark21",
        "--n",
        "3",
        "--partition",
        "4",
        "-o",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.contains("prod x1 y1 = 1/2 y2"));

    let out = leibniz(&["check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("grading: holds"));
    assert!(stdout.contains("leibniz-super: holds"));

    let out = leibniz(&["nilindex", file.to_str().unwrap()]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "8");

    let out = leibniz(&["charseq", file.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(3 | 4)");

    let out = leibniz(&["series", file.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("dims: 7, 6, 5, 4, 3, 2, 1, 0"));

    let out = leibniz(&["rann", file.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("dim 5"));

    fs::remove_file(&file).ok();
}

#[test]
fn parse_errors_exit_with_two() {
    let file = tmp("bad.alg");
    fs::write(&file, "dim_even 1\ndim_odd 1\nprod x1 x1 = y1\n").unwrap();
    let out = leibniz(&["check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 3"), "{stderr}");
    assert!(stderr.contains("grading"), "{stderr}");
    fs::remove_file(&file).ok();

    let out = leibniz(&["nilindex", "/nonexistent/path.alg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identity_violations_exit_with_one() {
    let file = tmp("broken.alg");
    // a chain with an extra product that breaks the superidentity
    fs::write(
        &file,
        "dim_even 3\ndim_odd 0\nprod x1 x1 = x2\nprod x2 x1 = x3\nprod x3 x2 = x1\n",
    )
    .unwrap();
    let out = leibniz(&["check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("violation"));
    fs::remove_file(&file).ok();
}

#[test]
fn change_applies_lemma_case() {
    let file = tmp("classa.alg");
    let out = leibniz(&[
        "build",
        "--family",
        "thm22-a",
        "--n",
        "5",
        "--partition",
        "2,1",
        "--param",
        "alpha4=1",
        "--param",
        "theta=1/2",
        "-o",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = leibniz(&[
        "change",
        file.to_str().unwrap(),
        "--lemma31",
        "a.1",
        "--A1",
        "1",
        "--A2",
        "-3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("preserved"));
    // the transported table is a valid algebra file
    let transported = String::from_utf8_lossy(&out.stdout).to_string();
    let roundtrip = tmp("transported.alg");
    fs::write(&roundtrip, &transported).unwrap();
    let out = leibniz(&["check", roundtrip.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // a premise-violating change is a reported violation
    let out = leibniz(&[
        "change",
        file.to_str().unwrap(),
        "--lemma31",
        "a.1",
        "--A1",
        "2",
        "--A2",
        "0",
        "--a",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));

    fs::remove_file(&file).ok();
    fs::remove_file(&roundtrip).ok();
}

#[test]
fn verify_writes_machine_report() {
    let report = tmp("report.txt");
    let out = leibniz(&[
        "verify",
        "--theorem",
        "3.2",
        "--n",
        "4",
        "--partition",
        "2,1",
        "--trials",
        "60",
        "--seed",
        "11",
        "--pool",
        "-1,0,1",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("theorem 3.2"));
    assert!(text.contains("counterexample_count 0"));
    assert!(text.contains("instances_tested 60"));
    fs::remove_file(&report).ok();

    // hypothesis gate: m2 = 0 is a usage error
    let out = leibniz(&[
        "verify", "--theorem", "3.1", "--n", "4", "--partition", "3", "--trials", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_max_nilindex_sweep() {
    let out = leibniz(&["verify", "--theorem", "2.1-max-nilindex", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS"));
    assert!(stdout.contains("instances tested 18, valid 18"));
}
