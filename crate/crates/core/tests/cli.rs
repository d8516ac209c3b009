use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voa-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn delta_suite_passes() {
    let o = run(&["check", "delta", "--window", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in ["delta-fundamental", "delta-two-term", "delta-three-term"] {
        assert!(out.contains(id), "{out}");
    }
    assert!(out.contains("3 pass, 0 fail"));
}

#[test]
fn jacobi_suite_passes() {
    let o = run(&["check", "jacobi", "--level", "6", "--window", "3", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().starts_with("jacobi jacobi level=6,window=3"));
}

#[test]
fn structured_records_have_five_fields() {
    let o = run(&["check", "skew", "--level", "3", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let fields: Vec<&str> = line.split(' ').collect();
        assert_eq!(fields.len(), 5, "{line}");
        assert!(["pass", "fail", "skipped-budget"].contains(&fields[3]), "{line}");
    }
}

#[test]
fn asymmetric_fusion_tensor_fails() {
    let o = run(&["fusion", "verify", &fixture("bad_s3.fus"), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("SymmetryViolation"));
}

#[test]
fn good_fusion_tensor_passes() {
    let o = run(&["fusion", "verify", &fixture("ising.fus")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn non_associative_tensor_fails() {
    let o = run(&["fusion", "verify", &fixture("non_associative.fus"), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verlinde-associativity"));
}

#[test]
fn malformed_fixture_is_a_configuration_error() {
    let dir = std::env::temp_dir().join(format!("voa-verify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.fus");
    std::fs::write(&path, "labels: 1 a\n1 1 1 1\n1 a b 1\n").unwrap();
    let o = run(&["fusion", "verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("broken.fus") && err.contains("line 3"), "{err}");
    let o = run(&["fusion", "verify", dir.join("missing.fus").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_bounds_are_configuration_errors() {
    assert_eq!(run(&["check", "delta", "--cutoffs", "8,4"]).status.code(), Some(2));
    assert_eq!(run(&["check", "delta", "--window", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["all", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn moduli_commands() {
    let o = run(&["moduli", "sew", &fixture("p2_p1.mod"), "--at", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("z: 3 2"));
    let o = run(&["moduli", "sew", &fixture("p2_p1.mod"), "--at", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("z: 2 1"));
    let o = run(&["moduli", "sew", &fixture("p2_p1.mod"), "--at", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["moduli", "sew", &fixture("sample.mod")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["moduli", "axioms", &fixture("sample.mod")]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["moduli", "nu", &fixture("p2_p1.mod"), "--vectors", "1;1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N=12: 1/4"));
    let o = run(&["moduli", "nu", &fixture("p2_p1.mod"), "--vectors", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn contragredient_commands() {
    let o = run(&["contragredient", "build", "--level", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("weight 2"));
    let o = run(&["contragredient", "verify", "--level", "3", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("direct-sum"));
}
