#![allow(dead_code)]

use spinon_dcf_cli::table::{Cell, Table};
use std::path::PathBuf;
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_spinon-dcf"));
    c.env_remove("SPINON_DCF_THREADS");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn spinon-dcf")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Same header, same text cells, numbers equal to `tol` absolute. Exact bits
/// of eigensolver and quadrature output are not portable; their values are.
pub fn matches_golden(actual: &str, name: &str, tol: f64) -> Result<(), String> {
    let expected = std::fs::read_to_string(golden_path(name)).map_err(|e| e.to_string())?;
    let a = Table::from_csv(actual).map_err(|e| e.to_string())?;
    let e = Table::from_csv(&expected).map_err(|e| e.to_string())?;
    if a.columns != e.columns || a.rows.len() != e.rows.len() {
        return Err(format!("shape differs:\n{actual}\nvs\n{expected}"));
    }
    for (ra, re) in a.rows.iter().zip(&e.rows) {
        for (ca, ce) in ra.iter().zip(re) {
            let same = match (ca, ce) {
                (Cell::Text(x), Cell::Text(y)) => x == y,
                _ => match (ca.as_f64(), ce.as_f64()) {
                    (Some(x), Some(y)) => (x - y).abs() <= tol,
                    _ => false,
                },
            };
            if !same {
                return Err(format!("{ca:?} != {ce:?} in {name}"));
            }
        }
    }
    Ok(())
}
