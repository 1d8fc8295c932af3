use std::process::{Command, Output};

use horn_lab_core::hermitian_core::Flag;
use horn_lab_core::horn_flow::{FeasibilityReport, FeasibilityStatus, WitnessTriple};
use horn_lab_core::lr_invariants::LrTableau;
use horn_lab_core::matrix_json::MatrixJson;
use horn_lab_core::polygon_spaces::{EdgeLengths, PolygonConfig};
use horn_lab_core::quotient_examples::{LevelReport, QuotientStatus};
use horn_lab_core::schur_horn::Permutohedron;
use serde_json::Value;

fn horn_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horn-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = horn_lab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn feasible_example() {
    let v = ok_json(&["horn", "feasible", "--lambda", "1,0", "--mu", "1,0", "--nu", "-1,-1"]);
    let report: FeasibilityReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(report.status, FeasibilityStatus::Feasible);
    assert_eq!(report.lr_crosscheck, Some(1));
    assert_eq!(v["nu"], serde_json::json!([-1.0, -1.0]));
}

#[test]
fn infeasible_integral_example() {
    let v = ok_json(&["horn", "feasible", "--lambda", "1,0", "--mu", "1,0", "--nu", "1,-3", "--restarts", "4"]);
    assert_eq!(v["status"], "numerically-infeasible");
}

#[test]
fn schur_horn_and_polygon_checks() {
    assert_eq!(ok_json(&["schur-horn", "check", "--lambda", "3,2,1", "--diag", "2,2,2"])["member"], true);
    assert_eq!(ok_json(&["polygon", "check", "--lengths", "3,1,1"])["nonempty"], false);
    let p: Permutohedron = serde_json::from_value(ok_json(&["schur-horn", "vertices", "--lambda", "2,1,1"])).unwrap();
    assert_eq!(p.vertices.len(), 3);
}

#[test]
fn malformed_spectrum_exits_two_with_field() {
    let out = horn_lab(&["horn", "feasible", "--lambda", "0,1", "--mu", "1,0", "--nu", "-1,-1"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "domain");
    assert_eq!(v["field"], "lambda");

    let out = horn_lab(&["polygon", "check", "--lengths", "1,-1"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["field"], "lengths");

    let out = horn_lab(&["flag", "moment", "--lambda", "2,2,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_round_trips() {
    let v = ok_json(&["horn", "witness", "--lambda", "1,0", "--mu", "1,0", "--nu", "-0.5,-1.5", "--seed", "3"]);
    let w: WitnessTriple = serde_json::from_value(v.clone()).unwrap();
    assert!(w.recompute_residual() < 1e-7);
    assert!(v["spectrum_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn sweep_reports_every_point() {
    let v = ok_json(&["horn", "sweep", "--lambda", "1,0", "--mu", "1,0", "--tops", "1.2,2.5", "--restarts", "3"]);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert!(points[0]["best_residual"].as_f64().unwrap() < 1e-7);
    assert!(points[1]["best_residual"].as_f64().unwrap() > 0.5);
}

#[test]
fn lr_subcommands() {
    let v = ok_json(&["lr", "coeff", "--alpha", "2,1", "--beta", "2,1", "--gamma", "3,2,1", "--certificates"]);
    assert_eq!(v["coefficient"], 2);
    let t: Vec<LrTableau> = serde_json::from_value(v["tableaux"].clone()).unwrap();
    assert!(t.iter().all(LrTableau::is_valid));
    assert_eq!(ok_json(&["lr", "invdim", "--lambda", "1,0", "--mu", "1,0", "--nu", "0,-2"])["dimension"], 1);
    assert_eq!(ok_json(&["lr", "saturate", "--lambda", "1,0", "--mu", "1,0", "--nu", "1,-3"])["k"], Value::Null);
}

#[test]
fn flag_subcommands() {
    let v = ok_json(&["flag", "moment", "--lambda", "3,1,0", "--seed", "5"]);
    assert_eq!(v["flag_recovered"], true);
    let _: Flag = serde_json::from_value(v["flag"].clone()).unwrap();
    let m: MatrixJson = serde_json::from_value(v["moment"].clone()).unwrap();
    assert_eq!(m.dim, 3);

    let v = ok_json(&["flag", "plucker", "--k", "2", "--n", "4", "--seed", "1"]);
    assert_eq!(v["coords"].as_array().unwrap().len(), 6);
    assert!(v["three_term_residual"].as_f64().unwrap() < 1e-10);

    let dir = std::env::temp_dir().join(format!("horn-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dependent.json");
    std::fs::write(&path, r#"{"rows":2,"cols":3,"entries":[[1,0],[2,0],[3,0],[2,0],[4,0],[6,0]]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(ok_json(&["flag", "unstable", "--matrix", p])["unstable"], true);
    let out = horn_lab(&["flag", "plucker", "--matrix", p]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "rank");
}

#[test]
fn polygon_sample_round_trips() {
    let v = ok_json(&["polygon", "sample", "--lengths", "1,1,1,1", "--count", "5"]);
    let ps: Vec<PolygonConfig> = serde_json::from_value(v["polygons"].clone()).unwrap();
    let a = EdgeLengths::new(vec![1.0; 4]).unwrap();
    assert_eq!(ps.len(), 5);
    for p in ps {
        assert!(p.closure_residual() < 1e-9);
        assert!(p.length_defect(&a) < 1e-12);
    }
}

#[test]
fn example_subcommands() {
    let h: LevelReport<Value> = serde_json::from_value(ok_json(&["examples", "hopf", "--n", "2", "--k", "-1"])).unwrap();
    assert_eq!(h.status, QuotientStatus::Empty);
    let h = ok_json(&["examples", "hopf", "--n", "3", "--k", "0"]);
    assert_eq!(h["status"], "point");

    let c = ok_json(&["examples", "cpn", "--n", "3", "--count", "2000"]);
    assert_eq!(c["in_simplex"], true);

    let f = ok_json(&["examples", "fiber", "--lambda", "1,0", "--mu", "2,-1"]);
    assert_eq!(f["status"], "empty");
    let f = ok_json(&["examples", "fiber", "--lambda", "2,1,0", "--mu", "1,1,1", "--samples", "2"]);
    assert_eq!(f["status"], "positive-dimensional");

    let t = ok_json(&["examples", "two-row", "--n", "5"]);
    assert!(t["trace_defect"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(t["right_moment"].as_array().unwrap().len(), 5);
}

#[test]
fn csv_output() {
    let out = horn_lab(&["schur-horn", "vertices", "--lambda", "1,0", "--output", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "x1,x2\n1.0000000000000000e0,0.0000000000000000e0\n0.0000000000000000e0,1.0000000000000000e0\n"
    );
}

#[test]
fn output_independent_of_thread_count() {
    let args = ["schur-horn", "sample", "--lambda", "3,2,1", "--count", "500", "--seed", "9"];
    let one = Command::new(env!("CARGO_BIN_EXE_horn-lab"))
        .args(args)
        .env("HORN_LAB_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_horn-lab"))
        .args(args)
        .env("HORN_LAB_THREADS", "4")
        .output()
        .unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}
