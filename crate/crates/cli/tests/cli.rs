mod common;

use common::*;
use spinon_dcf_cli::table::{Cell, Table};
use std::io::Write;

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn constants_prints_four_labeled_values() {
    let t = Table::from_csv(&stdout(&["constants"])).unwrap();
    let names: Vec<_> = t.rows.iter().map(|r| r[0].clone()).collect();
    assert_eq!(
        names,
        ["gamma_ratio", "a_plus_sq_half", "a_minus_sq_half", "prefactor"].map(|s| Cell::Text(s.into()))
    );
}

#[test]
fn constants_stable_under_tolerance() {
    let a = Table::from_csv(&stdout(&["constants", "--quad-tol", "1e-8"])).unwrap();
    let b = Table::from_csv(&stdout(&["constants", "--quad-tol", "1e-10"])).unwrap();
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        assert!((ra[1].as_f64().unwrap() - rb[1].as_f64().unwrap()).abs() < 1e-8);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["constants", "--quad-tol", "0"]).status.code(), Some(1));
    assert_eq!(run(&["constants", "--quad-tol", "-1e-3"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "--k", "1", "--omega", "abc"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "--k", "1", "--omega", "-2"]).status.code(), Some(1));
    assert_eq!(run(&["scan", "--k-points", "1"]).status.code(), Some(1));
    assert_eq!(run(&["ed", "--sites", "5"]).status.code(), Some(1));
    assert_eq!(run(&["ed", "--sites", "16"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let out = run(&[
        "scan",
        "--k-points",
        "2",
        "--omega-points",
        "2",
        "-o",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        run(&["constants", "--config", "/nonexistent/cfg.json"]).status.code(),
        Some(3)
    );
    // Δ = +1: ferromagnetic multiplet, degenerate ground state
    assert_eq!(run(&["ed", "--sites", "6", "--delta", "1"]).status.code(), Some(2));
}

#[test]
#[allow(clippy::approx_constant)] // the same truncated π the command line receives
fn eval_points() {
    let above = Table::from_csv(&stdout(&["eval", "--k", "3.14159", "--omega", "7.0"])).unwrap();
    let col = |t: &Table, n: &str| t.rows[0][t.column(n).unwrap()].clone();
    assert_eq!(col(&above, "region"), Cell::Text("ABOVE".into()));
    assert_eq!(col(&above, "s_zz").as_f64(), Some(0.0));

    let empty = Table::from_csv(&stdout(&["eval", "--k", "0", "--omega", "1"])).unwrap();
    assert_eq!(col(&empty, "s_zz").as_f64(), Some(0.0));

    let inside = Table::from_csv(&stdout(&["eval", "--k", "3.14159", "--omega", "3.14159"])).unwrap();
    let lib = spinon_dcf::dcf::s2_pm(3.14159, 3.14159, &Default::default()).unwrap();
    assert_eq!(col(&inside, "s_zz").as_f64(), Some(lib.s_zz));
    assert!(lib.s_zz > 0.0);
}

#[test]
fn scan_shape_and_zeros() {
    let text = stdout(&["scan", "--k-points", "3", "--omega-points", "3"]);
    assert!(text.starts_with("k,omega,s_zz,region,edge_flag\n"));
    let t = Table::from_csv(&text).unwrap();
    assert_eq!(t.rows.len(), 9);
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[3] != "INSIDE" {
            assert_eq!(f[2], "0", "{line}");
        }
    }
}

#[test]
fn scan_round_trips_in_both_formats() {
    let csv = stdout(&["scan", "--k-points", "5", "--omega-points", "4"]);
    assert_eq!(Table::from_csv(&csv).unwrap().to_csv(), csv);
    let json = stdout(&["scan", "--k-points", "5", "--omega-points", "4", "--format", "json"]);
    let parsed = Table::from_json(&json).unwrap();
    assert_eq!(parsed.to_json(), json);
    assert_eq!(parsed.to_csv(), csv);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = stdout(&["scan", "--k-points", "6", "--omega-points", "6", "--threads", "1"]);
    let four = stdout(&["scan", "--k-points", "6", "--omega-points", "6", "--threads", "4"]);
    assert_eq!(one, four);
    let env = bin()
        .args(["scan", "--k-points", "6", "--omega-points", "6"])
        .env("SPINON_DCF_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), one);
    assert_eq!(run(&["constants", "--threads", "0"]).status.code(), Some(1));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("scan.json");
    let cfg = dir.path().join("cfg.json");
    let mut f = std::fs::File::create(&cfg).unwrap();
    write!(
        f,
        r#"{{"output_format": "json", "output_path": {:?}, "quadrature": {{"split_point": 30.0}}}}"#,
        target.to_str().unwrap()
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = run(&["scan", "--k-points", "2", "--omega-points", "3", "--config", cfg]);
    assert!(out.status.success() && out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(Table::from_json(&written).unwrap().rows.len(), 6);
    // flags win
    let csv = stdout(&[
        "scan",
        "--k-points",
        "2",
        "--omega-points",
        "3",
        "--config",
        cfg,
        "--format",
        "csv",
        "-o",
        "-",
    ]);
    assert!(csv.starts_with("k,omega"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"threads": "many"}"#).unwrap();
    assert_eq!(
        run(&["constants", "--config", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn sumrule_reports_refinement() {
    let t = Table::from_csv(&stdout(&["sumrule", "--k-points", "32", "--omega-points", "32"])).unwrap();
    let value = t.rows[0][t.column("value").unwrap()].as_f64().unwrap();
    let delta = t.rows[0][t.column("refinement_delta").unwrap()].as_f64().unwrap();
    assert!(value > 0.0 && value < 1.0);
    assert!(delta < 1e-3);
}

#[test]
fn ed_matches_golden() {
    // By hand at N = 4: all weight 4/3 at ω = 2 for j = 0 and 1/3 at ω = 4
    // for j = 1, 3; j = 2 carries none.
    matches_golden(&stdout(&["ed", "--sites", "4"]), "ed_sites4.csv", 1e-10).unwrap();
}

#[test]
fn compare_reports_labeling() {
    let out = run(&["compare", "--sites", "12", "--omega-points", "32"]);
    assert!(out.status.success());
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("labeling: shifted"), "{summary}");
    let t = Table::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 10);
    assert!(t.rows.iter().all(|r| r[0] == Cell::Text("shifted".into())));
}
