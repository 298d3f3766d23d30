use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use corona::io::write_field;
use corona::oracles::multi_bezout;
use corona::{Demo, PolarGrid, ScalarField};

fn corona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corona")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .parse()
        .unwrap()
}

#[test]
fn solve_demo_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = corona(&["solve", "--demo", "wolff-trivial", "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(value(&report, "residual_sup") <= 1e-10);
    assert_eq!(value(&report, "n_r"), 128.0);
    assert!(!report.contains('\r'));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), report);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.txt");
    fs::write(&cfg, "functions = poly:0,1 | poly:1,-1\nepsilon = -1\n").unwrap();
    let out = corona(&["solve", "--config", path(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon"));

    fs::write(&cfg, "functions = poly:0,1 | poly:1,-1\nepsilon = 0.5\nn_r = 32\nn_theta = 64\n").unwrap();
    let out = corona(&["solve", "--config", path(&cfg), "--out", path(&dir.path().join("o"))]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    let point: corona::FunctionSpec = err.split("at z = ").nth(1).unwrap().split(':').next().unwrap().parse().unwrap();
    let z = point.eval(Default::default()).unwrap();
    assert!((z - 0.5).norm() <= 0.1, "{err}");

    assert_eq!(corona(&["solve"]).status.code(), Some(1));
    assert_eq!(corona(&["sweep", "--demo", "single", "--resolutions", "8x16"]).status.code(), Some(1));
    assert_eq!(corona(&["--help"]).status.code(), Some(0));
}

#[test]
fn dump_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("triple.txt");
    fs::write(&cfg, "demo = triple\nn_r = 48\nn_theta = 96\ndump_fields = true\n").unwrap();
    let out_dir = dir.path().join("out");
    let solved = corona(&["solve", "--config", path(&cfg), "--out", path(&out_dir)]);
    assert_eq!(solved.status.code(), Some(0));
    for j in 1..=3 {
        for stem in ["h", "rho", "g"] {
            assert!(out_dir.join(format!("{stem}_{j}.csv")).exists());
        }
    }
    let report = fs::read_to_string(out_dir.join("report.txt")).unwrap();
    let verified = corona(&["verify", "--config", path(&cfg), "--fields", path(&out_dir)]);
    assert_eq!(verified.status.code(), Some(0));
    let text = String::from_utf8(verified.stdout).unwrap();
    assert!((value(&text, "residual_sup") - value(&report, "residual_sup")).abs() <= 1e-12);
    assert_eq!(value(&text, "max_holo_defect"), value(&report, "max_holo_defect"));
}

#[test]
fn verify_reports_load_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("w.txt");
    fs::write(&cfg, "demo = wolff-trivial\nn_r = 8\nn_theta = 16\n").unwrap();
    let grid = PolarGrid::new(8, 16).unwrap();
    let zero = ScalarField::zeros(&grid);
    write_field(&dir.path().join("h_1.csv"), &zero).unwrap();
    write_field(&dir.path().join("h_2.csv"), &zero).unwrap();
    let out = corona(&["verify", "--config", path(&cfg), "--fields", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value(&String::from_utf8(out.stdout).unwrap(), "residual_sup"), 1.0);

    let text = fs::read_to_string(dir.path().join("h_2.csv")).unwrap();
    let cut: String = text.lines().take(50).map(|l| format!("{l}\n")).collect();
    fs::write(dir.path().join("h_2.csv"), cut).unwrap();
    let out = corona(&["verify", "--config", path(&cfg), "--fields", path(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("h_2.csv:51:"), "{err}");

    let other = PolarGrid::new(4, 16).unwrap();
    write_field(&dir.path().join("h_2.csv"), &ScalarField::zeros(&other)).unwrap();
    let out = corona(&["verify", "--config", path(&cfg), "--fields", path(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 8x16"));
}

#[test]
fn bezout_oracle_passes_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sq.txt");
    fs::write(&cfg, "demo = squares\nn_r = 64\nn_theta = 128\n").unwrap();
    let grid = PolarGrid::new(64, 128).unwrap();
    let cert = multi_bezout(&Demo::Squares.polynomials()).unwrap();
    for (j, spec) in cert.cofactor_specs().iter().enumerate() {
        write_field(&dir.path().join(format!("h_{}.csv", j + 1)), &spec.sample(&grid).unwrap()).unwrap();
    }
    let out = corona(&["verify", "--config", path(&cfg), "--fields", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    assert!(value(&String::from_utf8(out.stdout).unwrap(), "residual_sup") <= 1e-13);
}

#[test]
fn sweep_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = corona(&[
        "sweep",
        "--demo",
        "wolff-trivial",
        "--resolutions",
        "64x128,128x256,256x512",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(csv.lines().next(), Some("resolution,residual_sup,max_holo_defect,solver_sup_ratio"));
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2][0], "256x512");
    let holo: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(holo[0] > holo[1] && holo[1] > holo[2], "{holo:?}");
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() <= 1e-10));
}
