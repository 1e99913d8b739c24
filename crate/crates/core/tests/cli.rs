use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn repscan(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repscan"))
        .args(args)
        .current_dir(dir)
        .env_remove("REPSCAN_THREADS")
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = repscan(dir, args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn verify_iso_on_gaussian() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        dir.path(),
        &["state", "gaussian", "--sigma2", "1", "--out", "g.grid.json"],
    );
    let out = ok(
        dir.path(),
        &[
            "verify",
            "--in",
            "g.grid.json",
            "--suite",
            "iso",
            "--q",
            "2",
        ],
    );
    let v: Value = serde_json::from_str(&out).unwrap();
    for r in v.as_array().unwrap() {
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 6);
        for k in ["name", "lhs", "rhs", "satisfied", "slack", "saturated"] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(r["satisfied"], Value::Bool(true));
    }
}

#[test]
fn scan_report_on_ucs() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        dir.path(),
        &[
            "state",
            "cat",
            "--nu",
            "0.97",
            "--alpha",
            "10",
            "--out",
            "u.grid.json",
        ],
    );
    ok(
        dir.path(),
        &[
            "scan",
            "--in",
            "u.grid.json",
            "--delta",
            "0.01",
            "--m",
            "5",
            "--method",
            "edgeworth",
            "--out",
            "recon.csv",
            "--truth",
            "g.csv",
            "--report",
            "scan.json",
        ],
    );
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("scan.json")).unwrap())
            .unwrap();
    assert_eq!(v["kappa"].as_array().unwrap().len(), 5);
    for k in ["a", "alpha", "beta"] {
        assert!(v["reference"][k].is_f64());
    }
    assert!(v["l1"].is_f64() && v["l1_reference_only"].is_f64());
    let recon = std::fs::read_to_string(dir.path().join("recon.csv")).unwrap();
    assert!(recon.starts_with("center_bits,density\n"));
    assert_eq!(recon.lines().count(), 257);
}

#[test]
fn csv_outputs_have_expected_columns() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        dir.path(),
        &[
            "state",
            "uniform",
            "--lo",
            "-1",
            "--hi",
            "1",
            "--out",
            "u.grid.json",
        ],
    );
    ok(
        dir.path(),
        &[
            "power-curve",
            "--in",
            "u.grid.json",
            "--delta",
            "0.01",
            "--m",
            "6",
            "--out",
            "c.csv",
        ],
    );
    let c = std::fs::read_to_string(dir.path().join("c.csv")).unwrap();
    let lines: Vec<&str> = c.lines().collect();
    assert_eq!(lines[0], "k,order,N");
    assert_eq!(lines.len(), 7);
    // box of width w: N_p = p^{1/(1−p)} w²/(2π), with e^{−1} at p = 1
    for l in &lines[1..] {
        let cols: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
        let p = cols[1];
        let prefactor = if (p - 1.0).abs() < 1e-12 {
            (-1.0f64).exp()
        } else {
            p.powf(1.0 / (1.0 - p))
        };
        let expected = prefactor * 4.0 / (2.0 * std::f64::consts::PI);
        assert!((cols[2] / expected - 1.0).abs() < 1e-2, "{l}");
    }
    let point_mass = repscan(
        dir.path(),
        &["infodist", "--in", "u.grid.json", "--out", "g.csv"],
    );
    assert_eq!(point_mass.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&point_mass.stderr).contains("DegenerateSupport"));
    ok(dir.path(), &["state", "gaussian", "--out", "n.grid.json"]);
    ok(
        dir.path(),
        &[
            "infodist",
            "--in",
            "n.grid.json",
            "--bins",
            "64",
            "--out",
            "g.csv",
        ],
    );
    let g = std::fs::read_to_string(dir.path().join("g.csv")).unwrap();
    assert!(g.starts_with("center_bits,density\n"));
    assert_eq!(g.lines().count(), 65);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    ok(p, &["state", "gaussian", "--out", "g.grid.json"]);
    assert_eq!(
        repscan(p, &["entropy", "--in", "nope.grid.json"])
            .status
            .code(),
        Some(1)
    );
    let out = repscan(p, &["entropy", "--in", "nope.grid.json"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Io"));
    assert_eq!(
        repscan(p, &["cumulants", "--in", "g.grid.json", "--m", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        repscan(p, &["entropy", "--in", "g.grid.json", "--q", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        repscan(p, &["verify", "--in", "g.grid.json", "--suite", "nonsense"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(repscan(p, &["scan"]).status.code(), Some(2));
    // a 2-wide box on a 1-wide grid cannot be normalized
    std::fs::write(
        p.join("bad.grid.json"),
        r#"{"dim":1,"axes":[{"min":0,"max":1,"count":8}],"values":[2,2,2,2,2,2,2,2],"kind":"density"}"#,
    )
    .unwrap();
    let out = repscan(p, &["entropy", "--in", "bad.grid.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotNormalized"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    ok(p, &["state", "gaussian", "--out", "g.grid.json"]);
    std::fs::write(p.join("run.cfg"), "q = 2\nbase = bits\n").unwrap();
    let from_file: Value = serde_json::from_str(&ok(
        p,
        &["entropy", "--config", "run.cfg", "--in", "g.grid.json"],
    ))
    .unwrap();
    assert_eq!(from_file["q"], 2.0);
    assert_eq!(from_file["base"], "bits");
    let from_flag: Value = serde_json::from_str(&ok(
        p,
        &[
            "entropy",
            "--config",
            "run.cfg",
            "--in",
            "g.grid.json",
            "--q",
            "3",
        ],
    ))
    .unwrap();
    assert_eq!(from_flag["q"], 3.0);
    let defaults: Value =
        serde_json::from_str(&ok(p, &["entropy", "--in", "g.grid.json"])).unwrap();
    assert_eq!(defaults["q"], 1.0);
    assert_eq!(defaults["base"], "nats");
    std::fs::write(p.join("bad.cfg"), "speed = 3\n").unwrap();
    assert_eq!(
        repscan(
            p,
            &["entropy", "--config", "bad.cfg", "--in", "g.grid.json"]
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    ok(p, &["state", "cat", "--out", "b.grid.json"]);
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_repscan"))
            .args(["cumulants", "--in", "b.grid.json", "--m", "5"])
            .current_dir(p)
            .env("REPSCAN_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run("1"), run("0"));
    let bad = Command::new(env!("CARGO_BIN_EXE_repscan"))
        .args(["cumulants", "--in", "b.grid.json"])
        .current_dir(p)
        .env("REPSCAN_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
