//! End-to-end checks of the tomokit binary: file formats, report lines,
//! exit codes, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn tomokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tomokit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("tomokit-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn optical_export_fidelity_pipeline() {
    let vac_path = tmp_path("vac.csv");
    let coh_path = tmp_path("coh1.csv");

    let out = tomokit(&[
        "tomo",
        "optical",
        "--state",
        "fock:n=0",
        "--thetas",
        "64",
        "--out",
        vac_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    // every reported row entropy is (1/2) ln(pi e)
    let expect = 0.5 * (std::f64::consts::PI * std::f64::consts::E).ln();
    for line in stdout_of(&out).lines() {
        let s: f64 = line
            .split_whitespace()
            .find_map(|tok| tok.strip_prefix("S=").map(|v| v.parse().unwrap()))
            .expect("entropy field");
        assert!((s - expect).abs() < 1e-4, "row entropy {s}");
    }
    let text = std::fs::read_to_string(&vac_path).unwrap();
    assert!(text.starts_with("#tomokit optical v1 nx=1024 ntheta=64 xmin=-8 xmax=8"));

    let out = tomokit(&[
        "tomo",
        "optical",
        "--state",
        "coherent:re=1,im=0",
        "--thetas",
        "64",
        "--out",
        coh_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = tomokit(&[
        "fidelity",
        "--a",
        vac_path.to_str().unwrap(),
        "--b",
        coh_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let line = stdout_of(&out);
    let f: f64 = line
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix("F=").map(|v| v.parse().unwrap()))
        .expect("F field");
    assert!((f - (-1.0f64).exp()).abs() < 1e-3, "F = {f}");
    assert!(line.contains("bounds_ok=true"));

    std::fs::remove_file(&vac_path).ok();
    std::fs::remove_file(&coh_path).ok();
}

#[test]
fn classify_reports_the_machine_readable_record() {
    let out = tomokit(&["classify", "--state", "fock:n=1"]);
    assert!(out.status.success(), "{out:?}");
    let line = stdout_of(&out);
    assert!(
        line.starts_with("classical=false quantum=true min_f="),
        "{line}"
    );
}

#[test]
fn spin_inequality_commands_pass_on_fixtures() {
    let out = tomokit(&[
        "ineq",
        "ssa",
        "--state",
        "ghz",
        "--samples",
        "200",
        "--seed",
        "7",
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout_of(&out).contains("pass=true"));

    let out = tomokit(&[
        "ineq",
        "subadd",
        "--state",
        "bell",
        "--samples",
        "100",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());

    let out = tomokit(&[
        "ineq",
        "bounds",
        "--dim",
        "4",
        "--samples",
        "100",
        "--seed",
        "1",
    ]);
    assert!(out.status.success());
}

#[test]
fn classical_state_violates_the_quantum_bound_with_exit_2() {
    let out = tomokit(&[
        "ineq",
        "ur",
        "--state",
        "cgauss:sq=0.01,sp=0.01",
        "--thetas",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert!(stdout_of(&out).contains("pass=false"));
}

#[test]
fn usage_errors_exit_1() {
    let out = tomokit(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = tomokit(&["classify", "--state", "nope:x=1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["entropy", "cv", "--state", "fock:n=1", "--thetas", "8"],
        vec![
            "haar",
            "avg",
            "--state",
            "pure:1,0",
            "--samples",
            "2000",
            "--seed",
            "5",
        ],
        vec![
            "ineq",
            "spin-qft",
            "--state",
            "mixhaar:N=3,seed=2",
            "--samples",
            "50",
            "--seed",
            "9",
        ],
    ] {
        let a = tomokit(&args);
        let b = tomokit(&args);
        assert!(a.status.success(), "{args:?}: {a:?}");
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn json_mirror_carries_the_same_fields() {
    let out = tomokit(&["state", "--state", "coherent:re=1,im=0", "--json"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("\"kind\": \"pure\""));
    assert!(text.contains("\"mean_q\""));
}
