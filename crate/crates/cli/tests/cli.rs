use std::fs;
use std::process::{Command, Output};

use cayley_ci_core::ci::{Certificate, CertificateKind};
use cayley_ci_core::digraph::{ColoredDigraph, Digraph};
use cayley_ci_core::schur::SRingPartition;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-ci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn failing(report: &Value) -> Vec<String> {
    report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !c["pass"].as_bool().unwrap())
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn orbits_report_schema() {
    let out = run(&["orbits", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["command"], "orbits");
    assert_eq!(r["parameters"]["q"], 5);
    assert!(r["runtime_ms"].is_u64());
    assert!(r["artifact_paths"].as_array().unwrap().is_empty());
    let claims = r["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| c["pass"] == true));
    let by_name = |n: &str| claims.iter().find(|c| c["name"] == n).unwrap()["actual"].clone();
    assert_eq!(by_name("singleton orbits"), "5");
    assert_eq!(by_name("coset-class orbits"), "2");
    assert_eq!(by_name("parabolic orbits"), "5");
}

#[test]
fn orbit_mass_and_pairing() {
    let r = report(&run(&["orbits", "--q", "3"]));
    let mass = r["claims"].as_array().unwrap().iter().find(|c| c["name"] == "total orbit mass").unwrap();
    assert_eq!(mass["actual"], "18");
    let r = report(&run(&["orbits", "--q", "7"]));
    let single = r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "self-paired singleton orbits")
        .unwrap();
    assert_eq!(single["actual"], "S_0");
}

#[test]
fn repeated_runs_are_identical() {
    let a = run(&["non-ci", "--q", "3", "--no-timing"]);
    let b = run(&["non-ci", "--q", "3", "--no-timing"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["runtime_ms"], 0);
}

#[test]
fn schur_gen_writes_partitions() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let out = run(&["schur-gen", "--q", "3", "--out", out_dir]);
    assert_eq!(out.status.code(), Some(0));
    let paths: Vec<String> = report(&out)["artifact_paths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_str().unwrap().to_string())
        .collect();
    assert_eq!(paths.len(), 2);
    let parts: Vec<SRingPartition> =
        paths.iter().map(|p| SRingPartition::from_text(&fs::read_to_string(p).unwrap()).unwrap()).collect();
    assert_eq!(parts[0], parts[1]);
    assert_eq!(parts[0].len(), 7);
}

#[test]
fn schur_gen_at_q5_reports_the_mismatch() {
    let out = run(&["schur-gen", "--q", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(
        failing(&r),
        ["basic sets of <<T>>", "<<T>> = V(H,G_e) class by class"]
    );
    assert_eq!(r["claims"][0]["expected"], "12");
    assert_eq!(r["claims"][0]["actual"], "11");
}

#[test]
fn non_ci_q7_certificate_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["non-ci", "--q", "7", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["parameters"]["x"], 3);
    let cert: Certificate = serde_json::from_str(&fs::read_to_string(dir.path().join("non-ci-q7.json")).unwrap()).unwrap();
    assert_eq!(cert.kind, CertificateKind::NonCI);
    assert!(cert.verify().unwrap());
    let s = Digraph::from_text(&fs::read_to_string(dir.path().join("non-ci-q7-S.digraph")).unwrap()).unwrap();
    let t = Digraph::from_text(&fs::read_to_string(dir.path().join("non-ci-q7-T.digraph")).unwrap()).unwrap();
    assert_eq!(s.order(), 98);
    assert!(s.is_symmetric());
    assert_eq!(s.arc_count(), t.arc_count());
}

#[test]
fn non_ci_q5_only_conjugacy_fails() {
    let out = run(&["non-ci", "--q", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(failing(&r), ["images of H and K are not conjugate in Aut"]);
    let order = r["claims"].as_array().unwrap().iter().find(|c| c["name"] == "|Aut(Cay(R,S))| = 4|G|").unwrap();
    assert_eq!(order["actual"], "2000");
}

#[test]
fn two_closed_writes_orbital_colors() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["two-closed", "--q", "3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let cd = ColoredDigraph::from_text(&fs::read_to_string(dir.path().join("orbitals-q3.colored")).unwrap()).unwrap();
    assert_eq!(cd.order(), 18);
    assert_eq!(cd.color_count(), 7);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["orbits"][..],
        &["orbits", "--q", "9"],
        &["orbits", "--q", "17"],
        &["frobnicate"],
        &["schur-gen", "--q", "5", "--x", "2"],
        &["alpha", "--q", "5", "--x", "2"],
        &["z27", "--q", "5"],
        &["all", "--jobs", "0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(64), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn budget_abort_exits_2() {
    let out = run(&["non-ci", "--q", "3", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let out = run(&["z27", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn phi_and_alpha_pass() {
    let r = report(&run(&["phi", "--q", "7"]));
    let last = r["claims"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["name"], "values of t passing");
    assert_eq!(last["actual"], "6");
    let out = run(&["alpha", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["claims"].as_array().unwrap().len(), 8);
}

#[test]
fn all_sweep_is_deterministic_across_jobs() {
    let one = run(&["all", "--no-timing"]);
    let four = run(&["all", "--no-timing", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(1));
    assert_eq!(one.stdout, four.stdout);
    let r = report(&one);
    assert_eq!(r["parameters"]["q_sweep"], serde_json::json!([3, 5, 7, 11]));
    assert_eq!(
        failing(&r),
        [
            "[schur-gen q=5] basic sets of <<T>>",
            "[schur-gen q=5] <<T>> = V(H,G_e) class by class",
            "[non-ci q=5] images of H and K are not conjugate in Aut",
            "[schur-gen q=7] basic sets of <<T>>",
            "[schur-gen q=7] <<T>> = V(H,G_e) class by class",
        ]
    );
}
