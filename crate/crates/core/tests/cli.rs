//! End-to-end tests of the `framered` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use framered::cli::{CheckReport, ComputeOutput, PartitionOutput};
use framered::framecore::{example_phi1, example_phi2, Frame};
use framered::io::{frame_to_json, from_json, read_frame_json, AnyFrame};
use framered::Complex64;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_framered"));
    cmd.env_remove("FRAMERED_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn frame_file<S: framered::Scalar>(dir: &TempDir, name: &str, f: &Frame<S>) -> PathBuf {
    write(dir, name, &frame_to_json(f))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_phi2_is_uniform() {
    let dir = TempDir::new().unwrap();
    let p = frame_file(&dir, "phi2.json", &example_phi2::<f64>(2).unwrap());
    let o = run(&["compute", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.starts_with(r#"{"lower":2.0000000000000000e0,"upper":2.0000000000000000e0"#),
        "{text}"
    );
    let out: ComputeOutput = from_json(&text).unwrap();
    assert!(out.report.uniform);
}

#[test]
fn compute_phi13_and_point_value() {
    let dir = TempDir::new().unwrap();
    let p = frame_file(&dir, "phi13.json", &example_phi1::<f64>(3, 3).unwrap());
    let o = run(&["compute", s(&p), "--at", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let out: ComputeOutput = from_json(&stdout(&o)).unwrap();
    assert!((out.report.lower - 1.0).abs() <= 1e-9 && (out.report.upper - 3.0).abs() <= 1e-9);
    assert!(out.at.is_some());
}

#[test]
fn compute_rejects_non_spanning_and_malformed_input() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "flat.json",
        r#"{"field":"real","dim":2,"vectors":[[1,0],[2,0]]}"#,
    );
    let o = run(&["compute", s(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let bad = write(&dir, "bad.json", "{not json");
    assert_eq!(run(&["compute", s(&bad)]).status.code(), Some(1));
    assert_eq!(run(&["compute"]).status.code(), Some(1));
}

#[test]
fn construct_examples() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r12.json");
    let o = run(&[
        "construct",
        "--redundancies",
        "1",
        "2",
        "--dim",
        "2",
        "--count",
        "3",
        "-o",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["compute", s(&out)]);
    let rep: ComputeOutput = from_json(&stdout(&o)).unwrap();
    assert!((rep.report.lower - 1.0).abs() <= 1e-8 && (rep.report.upper - 2.0).abs() <= 1e-8);

    let o = run(&[
        "construct",
        "--redundancies",
        "1.2",
        "2",
        "--dim",
        "2",
        "--count",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(n-1)*r1 + r2"));

    let tight = dir.path().join("tight.json");
    assert_eq!(
        run(&["construct", "--tight", "2", "4", "-o", s(&tight)])
            .status
            .code(),
        Some(0)
    );
    let rep: ComputeOutput = from_json(&stdout(&run(&["compute", s(&tight)]))).unwrap();
    assert!(rep.report.uniform && (rep.report.lower - 2.0).abs() <= 1e-9);

    assert_eq!(
        run(&["construct", "--spectrum", "1", "1", "--count", "3"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn construct_csv_output_is_readable() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("f.csv");
    let o = run(&[
        "construct",
        "--spectrum",
        "1",
        "2",
        "--count",
        "3",
        "--format",
        "csv",
        "-o",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["compute", "--format", "csv", s(&out)]);
    let rep: ComputeOutput = from_json(&stdout(&o)).unwrap();
    assert!((rep.report.lower - 1.0).abs() <= 1e-8 && (rep.report.upper - 2.0).abs() <= 1e-8);
}

#[test]
fn partition_examples() {
    let dir = TempDir::new().unwrap();
    let phi2 = frame_file(&dir, "phi2.json", &example_phi2::<f64>(2).unwrap());
    let o = run(&["partition", s(&phi2), "--mode", "independent"]);
    assert_eq!(o.status.code(), Some(0));
    let p: PartitionOutput = from_json(&stdout(&o)).unwrap();
    assert_eq!((p.partition.len(), p.bound), (2, Some(2)));

    let phi13 = frame_file(&dir, "phi13.json", &example_phi1::<f64>(3, 3).unwrap());
    let p: PartitionOutput = from_json(&stdout(&run(&[
        "partition",
        s(&phi13),
        "--mode",
        "spanning",
    ])))
    .unwrap();
    assert_eq!((p.partition.len(), p.bound), (1, Some(1)));

    let onb = frame_file(&dir, "onb.json", &Frame::<f64>::standard_basis(3).unwrap());
    let p: PartitionOutput = from_json(&stdout(&run(&[
        "partition",
        s(&onb),
        "--mode",
        "independent",
    ])))
    .unwrap();
    assert_eq!(p.partition.len(), 1);

    let zero = write(
        &dir,
        "zero.json",
        r#"{"field":"real","dim":2,"vectors":[[1,0],[0,0],[0,1]]}"#,
    );
    assert_eq!(
        run(&["partition", s(&zero), "--mode", "independent"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_and_equivalence() {
    let dir = TempDir::new().unwrap();
    let phi2 = frame_file(&dir, "phi2.json", &example_phi2::<f64>(2).unwrap());
    let o = run(&["check", s(&phi2)]);
    assert_eq!(o.status.code(), Some(0));
    let r: CheckReport = from_json(&stdout(&o)).unwrap();
    assert!(r.tight && r.all_pass && r.equivalent.is_none());

    let phi12 = frame_file(&dir, "phi12.json", &example_phi1::<f64>(2, 2).unwrap());
    let r: CheckReport = from_json(&stdout(&run(&["check", s(&phi12), s(&phi2)]))).unwrap();
    assert_eq!(r.equivalent, Some(false));

    let f = framered::framecore::random_frame::<Complex64>(3, 5, 11).unwrap();
    let scaled = f.scale_vectors(&[Complex64::new(5.0, 0.0); 5]).unwrap();
    let a = frame_file(&dir, "f.json", &f);
    let b = frame_file(&dir, "g.json", &scaled);
    let r: CheckReport = from_json(&stdout(&run(&["equiv", s(&a), s(&b)]))).unwrap();
    assert_eq!(r.equivalent, Some(true));

    assert_eq!(run(&["equiv", s(&a), s(&phi2)]).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let f = framered::framecore::random_frame::<f64>(3, 7, 4).unwrap();
    let p = frame_file(&dir, "f.json", &f);
    for args in [
        vec!["check", s(&p)],
        vec!["compute", s(&p)],
        vec!["partition", s(&p), "--mode", "spanning"],
        vec![
            "construct",
            "--redundancies",
            "0.8",
            "2.4",
            "--dim",
            "3",
            "--count",
            "5",
            "--field",
            "complex",
        ],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_environment_variable_overrides_flag() {
    let dir = TempDir::new().unwrap();
    let p = frame_file(
        &dir,
        "f.json",
        &framered::framecore::random_frame::<f64>(3, 6, 2).unwrap(),
    );
    let with_env = bin()
        .args(["check", "--seed", "1", s(&p)])
        .env("FRAMERED_SEED", "7")
        .output()
        .unwrap();
    let with_flag = run(&["check", "--seed", "7", s(&p)]);
    assert_eq!(with_env.stdout, with_flag.stdout);
    let bad = bin()
        .args(["check", s(&p)])
        .env("FRAMERED_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn csv_and_stdin_input() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "f.csv", "1,0\n0,1\n1,1\n");
    let from_csv = stdout(&run(&["--format", "csv", "compute", s(&p)]));
    let mut child = bin()
        .args(["compute", "--format", "csv", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"1,0\n0,1\n1,1\n")
        .unwrap();
    let piped = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(piped.stdout).unwrap(), from_csv);
}

#[test]
fn outputs_round_trip_through_readers() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.json");
    run(&[
        "construct",
        "--tight",
        "3",
        "5",
        "--field",
        "complex",
        "-o",
        s(&out),
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    let frame = read_frame_json(&text).unwrap();
    assert!(matches!(frame, AnyFrame::Complex(_)));
    assert_eq!(framered::io::any_frame_to_json(&frame), text.trim_end());

    let compute = stdout(&run(&["compute", s(&out)]));
    let parsed: ComputeOutput = from_json(&compute).unwrap();
    assert_eq!(framered::io::to_json(&parsed), compute.trim_end());
    let part = stdout(&run(&["partition", s(&out), "--mode", "spanning"]));
    let parsed: PartitionOutput = from_json(&part).unwrap();
    assert_eq!(framered::io::to_json(&parsed), part.trim_end());
    let check = stdout(&run(&["check", s(&out)]));
    let parsed: CheckReport = from_json(&check).unwrap();
    assert_eq!(framered::io::to_json(&parsed), check.trim_end());
}
