use std::path::Path;
use std::process::{Command, Output};

use helastica::{read_curve_csv, read_diagnostics_csv, read_jsonl, CatalogEntry};
use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helastica"))
        .args(args)
        .current_dir(dir)
        .env_remove(helastica::OUT_DIR_ENV)
        .output()
        .expect("spawn helastica")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(stdout.lines().count(), 1, "{stdout}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn classify_cases_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["classify", "--lambda", "0", "--kappa0-sq", "4"]));
    assert_eq!(v["case"], "asymptotically-geodesic");
    let v = json(&run(dir.path(), &["classify", "--lambda", "0", "--c", "-0.0635"]));
    assert_eq!(v["case"], "orbitlike");
    let out = run(dir.path(), &["classify", "--lambda", "0", "--kappa0-sq", "4.0000000001"]);
    let v = json(&out);
    assert_eq!(v["case"], "wavelike");
    assert_eq!(v["p_near_one"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("within 1e-9 of 1"));

    assert_eq!(run(dir.path(), &["classify", "--lambda", "0", "--kappa0-sq", "1"]).status.code(), Some(2));
    // κ₀² = λ + 4 with λ = 0.5
    assert_eq!(run(dir.path(), &["classify", "--lambda", "0.5", "--kappa0-sq", "4.5"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["classify", "--lambda", "0"]).status.code(), Some(64));
    assert_eq!(run(dir.path(), &["classify", "--lambda", "0", "--kappa0-sq", "2", "--c", "1"]).status.code(), Some(64));
}

#[test]
fn help_documents_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Exit codes:") && text.contains("stiffness"));
}

#[test]
fn figure_eight_caption_value() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["figure-eight", "--lambda", "0.6", "--svg"]));
    assert!((v["params"]["C"].as_f64().unwrap() - 0.36).abs() < 0.01, "{v}");
    assert_eq!(v["simple"], false);
    assert_eq!(v["total_curvature"], 0);
    let csv = dir.path().join("figure_eight_l0.6.csv");
    assert!(csv.exists() && csv.with_extension("svg").exists());
    let (_, c) = read_curve_csv(&csv).unwrap();
    assert_eq!(c.len(), 4096);
}

#[test]
fn figure_eight_sweep_table() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["figure-eight", "--sweep"]));
    let e: Vec<f64> = v["sweep"].as_array().unwrap().iter().map(|r| r["energy"].as_f64().unwrap()).collect();
    assert_eq!(e.len(), 5);
    assert!(e.windows(2).all(|w| w[0] > w[1]) && e.iter().all(|&e| e > 16.0), "{e:?}");
    assert!(e[4] <= 16.5);
}

#[test]
fn close_caption_value_and_missing_root() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["close", "--lambda", "0", "--n", "5", "--out-dir", "out"]));
    assert!((v["params"]["C"].as_f64().unwrap() + 0.0635).abs() < 1e-2, "{v}");
    assert!(Path::new(v["curve"].as_str().unwrap()).starts_with("out"));

    let out = run(dir.path(), &["close", "--lambda", "0", "--n", "1", "--out-dir", "none"]);
    assert_eq!(out.status.code(), Some(5));
    // nothing left behind
    let none = dir.path().join("none");
    assert!(!none.exists() || std::fs::read_dir(none).unwrap().count() == 0);
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_helastica"))
        .args(["close", "--lambda", "0", "--n", "3", "--samples", "256"])
        .current_dir(dir.path())
        .env(helastica::OUT_DIR_ENV, dir.path().join("env"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path().join("env")).unwrap().count(), 1);
}

#[test]
fn flow_from_circle_csv_reaches_clifford_curvature() {
    let dir = tempfile::tempdir().unwrap();
    // geodesic circle of radius 0.5 about i: κ = coth 0.5, well off the equilibrium
    let c = helastica_core::flow::geodesic_circle(0.5, 256).unwrap();
    helastica::write_curve_csv(&dir.path().join("circle.csv"), &helastica::chord_parameter(&c), &c).unwrap();
    let v = json(&run(dir.path(), &["flow", "--in", "circle.csv", "--lambda", "0", "--t-end", "5", "--out-dir", "f"]));
    assert_eq!(v["stop"], "end-time");
    assert_eq!(v["turning_constant"], true);
    let d = read_diagnostics_csv(&dir.path().join("f/diagnostics.csv")).unwrap();
    assert!((d[0].max_kappa - 1.0 / 0.5f64.tanh()).abs() < 1e-2);
    let k = d.last().unwrap().max_kappa;
    assert!((k - 2f64.sqrt()).abs() < 0.01 * 2f64.sqrt(), "{k}");
    assert!(d.windows(2).all(|w| w[1].energy <= w[0].energy + 1e-9));
    assert!(dir.path().join("f/final.csv").exists());
}

#[test]
fn flow_failure_leaves_only_the_dump() {
    let dir = tempfile::tempdir().unwrap();
    // steps of order one push a tiny circle through the axis, and dt may not shrink far
    let out = run(
        dir.path(),
        &[
            "flow", "--circle", "0.05", "--samples", "64", "--t-end", "1", "--dt0", "1", "--dt-max", "1",
            "--dt-min", "0.01", "--sample-every", "1", "--snapshot-every", "1", "--out-dir", "f",
        ],
    );
    assert_eq!(out.status.code(), Some(9), "{}", String::from_utf8_lossy(&out.stderr));
    let names: Vec<String> = std::fs::read_dir(dir.path().join("f"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, vec!["flow_failure_state.csv".to_string()]);
    let (_, c) = read_curve_csv(&dir.path().join("f/flow_failure_state.csv")).unwrap();
    assert_eq!(c.len(), 64);
}

#[test]
fn flow_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["flow", "--t-end", "1"]).status.code(), Some(64));
    assert_eq!(run(dir.path(), &["flow", "--circle", "1", "--t-end", "-1"]).status.code(), Some(64));
    assert_eq!(run(dir.path(), &["flow", "--circle", "1", "--dt-min", "1"]).status.code(), Some(64));
    assert_eq!(run(dir.path(), &["flow", "--in", "absent.csv"]).status.code(), Some(12));
    std::fs::write(dir.path().join("bad.csv"), "x,y\n").unwrap();
    assert_eq!(run(dir.path(), &["flow", "--in", "bad.csv"]).status.code(), Some(13));
}

#[test]
fn catalog_is_deterministic_and_feeds_reilly_scan() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["catalog", "--lambdas", "-0.5,0,0.3", "--n-max", "4", "--samples", "512", "--curves"];
    let mut a = args.to_vec();
    a.extend(["--out-dir", "a", "--jobs", "1"]);
    let mut b = args.to_vec();
    b.extend(["--out-dir", "b", "--jobs", "2"]);
    let va = json(&run(dir.path(), &a));
    json(&run(dir.path(), &b));
    let ta = std::fs::read(dir.path().join("a/catalog.jsonl")).unwrap();
    assert_eq!(ta, std::fs::read(dir.path().join("b/catalog.jsonl")).unwrap());

    let entries: Vec<CatalogEntry> = read_jsonl(&dir.path().join("a/catalog.jsonl")).unwrap();
    assert_eq!(entries.len() as u64, va["records"].as_u64().unwrap());
    for e in &entries {
        assert!(dir.path().join("a").join(e.curve.as_ref().unwrap()).exists());
    }

    let v = json(&run(dir.path(), &["reilly-scan", "--catalog", "a/catalog.jsonl", "--energy-cap", "15"]));
    assert!(v["min_ratio"].as_f64().unwrap() > 0.0);
    assert_eq!(v["count"].as_u64().unwrap() as usize, v["records"].as_array().unwrap().len());
    let out = run(dir.path(), &["reilly-scan", "--catalog", "a/catalog.jsonl", "--energy-cap", "1"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn sample_circular_and_wavelike() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["sample", "--lambda", "0", "--kappa0-sq", "2", "--samples", "128", "--svg"]));
    assert_eq!(v["case"], "circular");
    assert!((v["length"].as_f64().unwrap() - std::f64::consts::TAU).abs() < 1e-9);
    assert!(dir.path().join("sample.svg").exists());
    let v = json(&run(dir.path(), &["sample", "--lambda", "0", "--c", "0.2", "--samples", "128", "--out", "w.csv"]));
    assert_eq!(v["case"], "wavelike");
    let (t, c) = read_curve_csv(&dir.path().join("w.csv")).unwrap();
    assert_eq!((t.len(), c.len()), (128, 128));
    assert_eq!(run(dir.path(), &["sample", "--lambda", "0", "--kappa0-sq", "2", "--samples", "4"]).status.code(), Some(64));
}
