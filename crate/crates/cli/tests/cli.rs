//! End-to-end checks of the `rivote` binary: exit codes, validation
//! reporting, CSV output, and rerun determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rivote"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rivote-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn solve_succeeds_and_reports_the_signal() {
    let out = run(&["solve", "--v1", "0.24", "--i1", "0.1", "--cost", "quadratic"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("x=0.636988665"), "{text}");
    assert!(text.contains("y=0.156988665"), "{text}");
    assert!(text.contains("kind=interior"), "{text}");
}

#[test]
fn validation_errors_exit_one_and_list_everything() {
    let dir = tmp_dir("validation");
    let config = write_config(
        &dir,
        "bad.conf",
        "mode = sweep\n[sweep]\nparameter = v1\nfrom = 0.9\nto = 0.1\nsteps = 1\n",
    );
    let out = run(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("sweep range is empty"), "{err}");
    assert!(err.contains("must be at least 2"), "{err}");
    assert!(err.contains("missing required value"), "{err}");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tmp_dir("parse");
    let config = write_config(&dir, "broken.conf", "[cost]\nkind == quadratic\nwhat\n");
    let out = run(&["solve", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn mode_mismatch_is_a_validation_error() {
    let dir = tmp_dir("mode");
    let config = write_config(&dir, "solve.conf", "mode = solve\n[electorate]\nv1 = 0.2\ni1 = 0.1\n");
    let out = run(&["lp", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("mode = solve"), "{}", stderr(&out));
}

#[test]
fn unknown_flags_exit_one() {
    let out = run(&["solve", "--nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn io_failures_exit_two() {
    let out = run(&[
        "solve",
        "--v1",
        "0.2",
        "--i1",
        "0.1",
        "--out",
        "/proc/version/cannot/write/here.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("io failure"), "{}", stderr(&out));
}

#[test]
fn sweep_csv_has_monotone_power_and_disagreement() {
    let dir = tmp_dir("sweep");
    let csv = dir.join("sweep.csv");
    let out = run(&[
        "sweep",
        "--param",
        "v1",
        "--from",
        "0",
        "--to",
        "0.9",
        "--steps",
        "46",
        "--f0",
        "0.3",
        "--i0",
        "0.1",
        "--i1",
        "0.1",
        "--cost",
        "quadratic",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let body = fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(
        lines.next().unwrap(),
        "v1,x,y,z,P1,D,P0,xi,sustainable,status"
    );
    let mut prev: Option<(f64, f64)> = None;
    let mut rows = 0;
    let mut xis: Vec<f64> = Vec::new();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.last().copied(), Some("ok"), "row failed: {line}");
        assert_eq!(cells[8], "na", "no primitives were supplied");
        let x: f64 = cells[1].parse().unwrap();
        let y: f64 = cells[2].parse().unwrap();
        let z: f64 = cells[3].parse().unwrap();
        assert!((z - 1.0 / (x + y)).abs() < 1e-7, "z column mismatch: {line}");
        let p1: f64 = cells[4].parse().unwrap();
        let d: f64 = cells[5].parse().unwrap();
        if let Some((p1_prev, d_prev)) = prev {
            assert!(p1 <= p1_prev + 1e-9, "P1 must fall along the sweep: {line}");
            assert!(d >= d_prev - 1e-9, "D must rise along the sweep: {line}");
        }
        prev = Some((p1, d));
        xis.push(cells[7].parse().unwrap());
        rows += 1;
    }
    assert_eq!(rows, 46);
    // this configuration places the xi maximizer strictly inside the sweep:
    // the curve rises, peaks, and falls to a flat corner tail
    let (argmax, &peak) = xis.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    assert!(argmax > 0 && argmax + 1 < xis.len());
    assert!(peak > xis[0] + 1e-9 && peak > *xis.last().unwrap() + 1e-9);
}

#[test]
fn lp_reports_both_optimum_and_cited_value() {
    let dir = tmp_dir("lp");
    let csv = dir.join("lp.csv");
    let out = run(&[
        "lp", "--f0", "0.3", "--v1", "0.24", "--i0", "0.1", "--i1", "0.1", "--cost", "quadratic",
        "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("xi_independent=0.457765452"), "{text}");
    assert!(text.contains("xi_correlated=0.910010244"), "{text}");
    assert!(text.contains("xi_correlated_cited=0.908"), "{text}");
    assert!(text.contains("note="), "{text}");
    let body = fs::read_to_string(&csv).unwrap();
    assert_eq!(body.lines().count(), 1 + 32, "header plus 4 blocks of 8 profiles");
}

#[test]
fn continuous_csv_matches_grid_size() {
    let dir = tmp_dir("continuous");
    let csv = dir.join("m.csv");
    let out = run(&[
        "continuous",
        "--v",
        "0.3",
        "--capacity",
        "0.05",
        "--grid-points",
        "201",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("units=nats"), "nats is the default scale");
    let body = fs::read_to_string(&csv).unwrap();
    assert_eq!(body.lines().count(), 202);
    assert_eq!(body.lines().next().unwrap(), "omega,m,p1,p0,pbar");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tmp_dir("deterministic");
    let first = dir.join("first.csv");
    let second = dir.join("second.csv");
    let args = |path: &Path| {
        vec![
            "sweep".to_string(),
            "--param".into(),
            "i1".into(),
            "--from".into(),
            "0.02".into(),
            "--to".into(),
            "0.6".into(),
            "--steps".into(),
            "40".into(),
            "--f0".into(),
            "0.3".into(),
            "--v1".into(),
            "0.24".into(),
            "--i0".into(),
            "0.1".into(),
            "--cost".into(),
            "entropy".into(),
            "--out".into(),
            path.to_str().unwrap().to_string(),
        ]
    };
    let a = bin().args(args(&first)).output().unwrap();
    let b = bin().args(args(&second)).output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn xi_without_primitives_omits_the_verdict() {
    let out = run(&["xi", "--f0", "0.6", "--v1", "0.3", "--i0", "0.1", "--i1", "0.2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("regime=centrist-only"), "{text}");
    assert!(text.contains("xi=0.316227766"), "{text}");
    assert!(!text.contains("sustainable="), "{text}");
    assert!(!text.contains("c_hat="), "{text}");
}

#[test]
fn benchmark_reports_the_threshold_verdict() {
    let out = run(&["benchmark", "--alpha", "0.5", "--h-ability", "2", "--c", "0.6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("c_hat=1.2"), "{text}");
    assert!(text.contains("sustainable=false"), "{text}");
    assert!(text.contains("selection=0"), "{text}");
}
