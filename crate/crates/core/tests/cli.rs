use std::path::Path;
use std::process::{Command, Output};

use mhd_blowup::algebra::Point;
use mhd_blowup::catalog::{family_one, Family, FamilyParams};

fn run(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mhd-blowup"));
    cmd.args(args).env_remove("MHD_BLOWUP_OUT_DIR");
    if let Some(dir) = out_dir {
        cmd.env("MHD_BLOWUP_OUT_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args, None).status.code().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args, None);
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "--family", "one"]), 0);
    assert_eq!(code(&["verify", "--family", "one", "--a", "-1/2"]), 2);
    assert_eq!(code(&["verify", "--family", "two", "--abar", "0"]), 2);
    assert_eq!(code(&["verify", "--family", "two", "--nse"]), 0);
    assert_eq!(code(&["verify", "--family", "one", "--tstar", "0"]), 2);
    assert_eq!(code(&["verify", "--family", "one", "--a", "x/2"]), 2);
}

#[test]
fn verify_report_lists_twelve_zero_entries() {
    let v = json(&["verify", "--family", "one"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 12);
    assert!(entries.iter().all(|e| e["symbolic_zero"] == true));
}

#[test]
fn ansatz_traces() {
    let v = json(&["ansatz", "--family", "one"]);
    let steps = v["theta"]["trace"].as_array().unwrap();
    let last = steps.last().unwrap()["result"].as_str().unwrap();
    assert!(
        last.contains("2*abar*k") && last.contains("2*a + 1"),
        "{last}"
    );
    assert_eq!(v["theta"]["p"], "-1");

    let out = run(&["ansatz", "--family", "one", "--a", "-1/2"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2*a + 1"));
}

#[test]
fn diagnose_fits_velocity_rate() {
    let v = json(&["diagnose", "--family", "one", "--a", "1", "--n", "400"]);
    let e = v["series"]["fitted_exponents"]["v"].as_f64().unwrap();
    assert!((e + 1.0).abs() <= 0.02, "{e}");
}

#[test]
fn export_rows_match_direct_evaluation() {
    let out = run(
        &["export", "--family", "one", "--t", "0", "--n", "10"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let b = family_one(&FamilyParams::unit(Family::One)).unwrap();
    let params = b.values(0.0).unwrap();
    let mut rows = 0;
    for rec in rdr.records() {
        let r: Vec<f64> = rec.unwrap().iter().map(|v| v.parse().unwrap()).collect();
        let pt = Point::new(r[0], r[1], r[2], r[3]);
        for (i, f) in b.scalars().iter().enumerate() {
            assert_eq!(f.eval(&pt, &params).unwrap(), r[4 + i]);
        }
        rows += 1;
    }
    assert_eq!(rows, 10);
}

#[test]
fn outputs_are_byte_stable_and_honor_the_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "diagnose", "--family", "two", "--a", "-1", "--n", "200", "--seed", "5",
    ];
    assert_eq!(run(&args, Some(dir.path())).status.code(), Some(0));
    let first = std::fs::read(dir.path().join("diagnose_two.json")).unwrap();
    assert!(dir.path().join("diagnose_two.loglog.csv").exists());
    assert!(dir.path().join("diagnose_two.energy.csv").exists());
    assert_eq!(run(&args, Some(dir.path())).status.code(), Some(0));
    assert_eq!(
        first,
        std::fs::read(dir.path().join("diagnose_two.json")).unwrap()
    );

    let file = dir.path().join("nested").join("verify.json");
    let out = run(&["verify", "--out", file.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty() && file.exists());
}

#[test]
fn converge_domain_errors_exit_two() {
    assert_eq!(code(&["converge", "--family", "one", "--box", "-1,1"]), 2);
    assert_eq!(code(&["converge", "--family", "one", "--grids", "4,6"]), 2);
    assert_eq!(code(&["export", "--family", "one", "--t", "1"]), 2);
}

#[test]
fn converge_family_one_is_second_order() {
    assert_eq!(
        code(&["converge", "--family", "one", "--grids", "16,32"]),
        0
    );
}
