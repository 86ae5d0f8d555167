//! End-to-end checks of the `mirrorwell` binary: output formats,
//! determinism, exit codes and environment handling.

use std::process::{Command, Output};

fn mirrorwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrorwell"))
        .args(args)
        .env_remove("MIRRORWELL_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = mirrorwell(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn tables_text_reproduces_reference_values() {
    let t1 = stdout_of(&["tables", "--which", "1"]);
    assert!(t1.contains("1.58114"), "n=2 even entry:\n{t1}");
    assert!(t1.contains("0.602114") && t1.contains("2.03407"), "n=3 row:\n{t1}");

    let t2 = stdout_of(&["tables", "--which", "2"]);
    assert!(t2.contains("0.707107") && t2.contains("1.22474"), "odd rows:\n{t2}");
}

#[test]
fn tables_parallel_matches_serial() {
    let serial = stdout_of(&["tables", "--which", "3"]);
    let parallel = stdout_of(&["tables", "--which", "3", "--parallel"]);
    assert_eq!(serial, parallel, "row threading must not change the output");
    assert!(serial.contains("0.618919"), "d=1 ground level:\n{serial}");
    assert!(serial.contains("0.999999") && serial.contains("1.00000"), "d=4 near-degenerate pair");
}

#[test]
fn spectrum_json_has_flat_records() {
    let body = stdout_of(&["spectrum", "-p", "S", "-d", "1", "-n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&body).expect("valid json");
    let arr = v.as_array().expect("array of records");
    assert_eq!(arr.len(), 3);
    for key in ["kind", "sector", "index", "d", "energy", "residual", "method"] {
        assert!(arr[0].get(key).is_some(), "missing key {key}");
    }
    let e0 = arr[0]["energy"].as_f64().unwrap();
    assert!((e0 - 3.0).abs() < 1e-8, "single-well ground level at d=1: {e0}");
    assert_eq!(arr[0]["sector"], "even");
}

#[test]
fn spectrum_oracle_families_work() {
    let body = stdout_of(&["spectrum", "-p", "KA", "-n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&body).expect("valid json");
    let energies: Vec<f64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["energy"].as_f64().unwrap())
        .collect();
    for (got, want) in energies.iter().zip([0.0, 6.0, 8.0, 10.0]) {
        assert!((got - want).abs() < 1e-4, "{energies:?}");
    }
}

#[test]
fn poly_json_lists_both_sectors() {
    let body = stdout_of(&["poly", "-n", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&body).expect("valid json");
    assert_eq!(v["energy"], 13);
    assert_eq!(v["even"].as_array().unwrap().len(), 3);
    assert_eq!(v["odd"].as_array().unwrap().len(), 3);
    let d1 = v["odd"][0].as_f64().unwrap();
    assert!((d1 - 0.436077).abs() < 1e-5, "first odd separation: {d1}");
}

#[test]
fn wavefn_csv_is_deterministic() {
    let args = ["wavefn", "-p", "D", "-d", "1", "--index", "0", "--format", "csv"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second, "identical invocations must be byte-identical");
    assert!(first.starts_with("x,psi\n"), "csv header:\n{}", &first[..30]);
    assert!(!first.contains('\r'), "LF line endings only");
    let lines = first.lines().count();
    assert!(lines >= 801, "expected a full sample grid, got {lines} lines");
}

#[test]
fn wavefn_svg_draws_each_well_in_its_color() {
    let svg = stdout_of(&["wavefn", "-p", "D", "-d", "1", "--index", "0,1", "--format", "svg"]);
    assert!(svg.starts_with("<svg"), "svg root element");
    assert!(svg.contains("#1f4fd8"), "double-well polyline color");
    assert!(svg.contains("double well, d = 1"), "caption");

    let svg = stdout_of(&["wavefn", "-p", "S", "-d", "1", "--index", "0", "--format", "svg"]);
    assert!(svg.contains("#d82f2f"), "single-well polyline color");
}

#[test]
fn wavefn_text_reports_nodes_and_norm() {
    let body = stdout_of(&["wavefn", "-p", "D", "-d", "2", "--index", "0,1,2,3"]);
    let mut nodes = Vec::new();
    for line in body.lines().skip(1) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        nodes.push(cols[4].parse::<usize>().expect("node column"));
        // the column reports the pre-scaling L² norm
        let norm: f64 = cols.last().unwrap().parse().expect("norm column");
        assert!(norm.is_finite() && norm > 0.0, "recorded norm: {line}");
    }
    assert_eq!(nodes, vec![0, 1, 2, 3], "oscillation theorem ordering");
}

#[test]
fn verify_passes_for_both_wells() {
    for (p, d) in [("D", "1"), ("S", "2"), ("D", "0")] {
        let out = mirrorwell(&["verify", "-p", p, "-d", d, "-n", "7"]);
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        assert!(out.status.success(), "verify {p} d={d}:\n{text}");
        assert!(text.contains("PASS"), "verify {p} d={d}:\n{text}");
    }
}

#[test]
fn usage_errors_exit_with_code_2() {
    for args in [
        &["spectrum", "-p", "Q"][..],
        &["wavefn", "-p", "KA", "--index", "0"][..],
        &["wavefn", "-p", "D", "-E", "3.0"][..], // --energy without a sector
        &["wavefn", "-p", "D", "--index", "0", "--energy", "3.0", "--sector", "even"][..],
    ] {
        let out = mirrorwell(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {:?}", out.status);
    }
}

#[test]
fn precision_env_overrides_tol_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_mirrorwell"))
        .args(["spectrum", "-p", "D", "-d", "1", "-n", "2", "--tol", "1e-6"])
        .env("MIRRORWELL_PRECISION", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2), "bad env value is a usage error");

    let out = Command::new(env!("CARGO_BIN_EXE_mirrorwell"))
        .args(["spectrum", "-p", "D", "-d", "1", "-n", "2", "--format", "json"])
        .env("MIRRORWELL_PRECISION", "1e-8")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid json under env override");
    let e0 = v[0]["energy"].as_f64().unwrap();
    assert!((e0 - 0.618919).abs() < 1e-5, "d=1 ground level: {e0}");
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join("mirrorwell-cli-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("t1.csv");
    let _ = std::fs::remove_file(&path);
    let out = mirrorwell(&["tables", "--which", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "--out should suppress stdout");
    let written = std::fs::read_to_string(&path).expect("output file");
    assert!(written.starts_with("row,values\n"));
    assert!(written.contains("1.58114"));
}
