use std::process::{Command, Output};

use sg_cli::report::RunReport;

fn sgedge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgedge"))
        .args(args)
        .env_remove("SG_MAX_LEVEL")
        .output()
        .expect("run sgedge")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> RunReport {
    let o = sgedge(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn restrict_csv_row_count() {
    let o = sgedge(&["restrict", "--family", "2", "--n", "0", "--edge", "cell=0;from=0;to=1", "--level", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("param,value"));
    assert_eq!(lines.count(), 4097);
}

#[test]
fn restrict_harmonic_midpoint() {
    let o = sgedge(&["restrict", "--harmonic", "0,1,0", "--edge", "cell=;from=0;to=1", "--level", "3"]);
    let out = stdout(&o);
    let row = out.lines().find(|l| l.starts_with("0.5,")).unwrap();
    let v: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - 0.4).abs() < 1e-15);
}

#[test]
fn restrict_constant_edge_is_fine() {
    let o = sgedge(&["restrict", "--family", "2", "--n", "1", "--edge", "cell=1;from=0;to=2", "--level", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<f64> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 17);
    assert!(values.iter().all(|v| (v - values[0]).abs() < 1e-12));
}

#[test]
fn restrict_json_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let p = path.to_str().unwrap();
    let o = sgedge(&["restrict", "--harmonic", "1,0,0", "--edge", "cell=;from=0;to=1", "--level", "4", "--format", "json", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: RunReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let s = r.results.samples.unwrap();
    assert_eq!(s.len(), 17);
    assert_eq!((s[0].param, s[0].value), (0.0, 1.0));
    assert_eq!((s[16].param, s[16].value), (1.0, 0.0));
}

#[test]
fn classify_harmonic_monotone() {
    let r = json(&["classify", "--harmonic", "0,1,0", "--edge", "cell=;from=0;to=1", "--format", "json"]);
    assert_eq!(r.results.kind.as_deref(), Some("StrictlyMonotone"));
    let ratio = r.results.ratio.unwrap();
    assert_eq!((ratio.num.as_str(), ratio.den.as_str()), ("3", "2"));
    assert!(r.oracle.unwrap().agrees);
}

#[test]
fn classify_five_series_midpoint() {
    let r = json(&["classify", "--family", "5", "--n", "0", "--edge", "cell=0;from=0;to=1", "--format", "json"]);
    assert_eq!(r.results.kind.as_deref(), Some("SingleExtremum"));
    let t = r.results.theta.unwrap();
    assert!(t.exact);
    assert_eq!(t.value, 0.5);
    assert_eq!(r.oracle.unwrap().positions, vec![0.5]);
    let ratio = r.results.ratio.unwrap();
    assert_eq!((ratio.num.as_str(), ratio.den.as_str()), ("-1", "1"));
}

#[test]
fn classify_coarse_edge() {
    // Vanishes at both ends and the midpoint of the bottom edge.
    let r = json(&["classify", "--family", "5", "--edge", "cell=;from=0;to=1", "--format", "json"]);
    assert_eq!(r.results.extremum_count, Some(2));
    assert!(r.oracle.unwrap().agrees);
}

#[test]
fn classify_two_series_endpoint_branch() {
    let r = json(&["classify", "--family", "2", "--n", "4", "--edge", "cell=0;from=0;to=1", "--format", "json"]);
    assert_eq!(r.results.kind.as_deref(), Some("MultiExtremum"));
    assert_eq!(r.results.extremum_count, Some(4));
    let t3 = r.results.branch_count.unwrap();
    assert_eq!(t3.n, 4);
    assert!(r.oracle.unwrap().agrees);
}

#[test]
fn classify_text() {
    let o = sgedge(&["classify", "--family", "5", "--n", "1", "--edge", "cell=;from=0;to=2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("kind: "), "{out}");
    assert!(out.contains("(agrees)"), "{out}");
}

#[test]
fn no_meta_is_reproducible() {
    let args = ["classify", "--family", "6", "--n", "1", "--edge", "cell=;from=0;to=1", "--format", "json", "--no-meta"];
    let a = sgedge(&args);
    let b = sgedge(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: RunReport = serde_json::from_slice(&a.stdout).unwrap();
    assert!(r.meta.is_none());
    let with_meta = json(&["classify", "--family", "6", "--n", "1", "--edge", "cell=;from=0;to=1", "--format", "json"]);
    assert!(with_meta.meta.is_some());
}

#[test]
fn verify_suites() {
    for suite in ["thm4", "lemma35", "decimation"] {
        let o = sgedge(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
    let r = json(&["verify", "thm4", "--format", "json"]);
    assert_eq!(r.results.passed, Some(true));
    assert!(r.results.cases.unwrap().iter().all(|c| c.pass));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| sgedge(args).status.code();
    assert_eq!(code(&["verify", "nope"]), Some(2));
    assert_eq!(code(&["restrict", "--family", "3", "--edge", "cell=;from=0;to=1"]), Some(2));
    assert_eq!(code(&["restrict", "--harmonic", "0,1", "--edge", "cell=;from=0;to=1"]), Some(2));
    assert_eq!(code(&["restrict", "--harmonic", "0,1,0", "--edge", "cell=3;from=0;to=1"]), Some(2));
    assert_eq!(code(&["restrict", "--harmonic", "0,1,0", "--family", "2", "--edge", "cell=;from=0;to=1"]), Some(2));
    assert_eq!(code(&["classify", "--harmonic", "1,1,1", "--edge", "cell=;from=0;to=1"]), Some(4));
    assert_eq!(code(&["classify", "--family", "2", "--edge", "cell=1;from=0;to=2"]), Some(4));
    assert_eq!(code(&["restrict", "--family", "2", "--edge", "cell=;from=0;to=1", "--level", "13"]), Some(5));
}

#[test]
fn max_level_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sgedge"))
        .args(["restrict", "--harmonic", "0,1,0", "--edge", "cell=;from=0;to=1", "--level", "13"])
        .env("SG_MAX_LEVEL", "14")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), (1 << 13) + 2);
}

#[test]
fn fixture_file_matches_family() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/two_series.sgf");
    let edge = "cell=0;from=0;to=1";
    let a = sgedge(&["restrict", "--spec", path, "--edge", edge, "--level", "6"]);
    let b = sgedge(&["restrict", "--family", "2", "--edge", edge, "--level", "6"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let missing = sgedge(&["restrict", "--spec", "/nonexistent.sgf", "--edge", edge]);
    assert_ne!(missing.status.code(), Some(0));
}
