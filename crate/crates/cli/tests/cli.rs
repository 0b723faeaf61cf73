//! End-to-end tests of the binary: output contracts, exit codes, config
//! precedence, and determinism.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lambda-qed"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn parse_csv(text: &str) -> (String, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn phase_uncoupled_is_unity() {
    let out = run(&["phase", "--lambda", "0", "--n-points", "11"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, "k,re_phase,im_phase,abs_phase");
    assert_eq!(rows.len(), 11);
    for row in rows {
        assert_eq!(row[1], 1.0);
        assert_eq!(row[2], 0.0);
        assert_eq!(row[3], 1.0);
    }
}

#[test]
fn phase_lossy_value_at_resonance() {
    let out = run(&[
        "phase", "--lambda", "10", "--gamma", "0.5", "--k-min", "-1", "--k-max", "1",
        "--n-points", "3",
    ]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    let center = &rows[1];
    assert_eq!(center[0], 0.0);
    assert!((center[1] - (-0.995012)).abs() < 1e-6);
    assert!(center[2].abs() < 1e-12);
    assert!((center[3] - 0.995012).abs() < 1e-6);
}

#[test]
fn phase_with_pi_root_row() {
    let out = run(&["phase", "--lambda", "3", "--k-min", "-2", "--k-max", "2", "--n-points", "5"]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    let center = &rows[2];
    assert!((center[1] + 1.0).abs() < 1e-12);
    assert!((center[3] - 1.0).abs() < 1e-12);
}

#[test]
fn swap_report_lossless_roots() {
    let out = run(&["swap", "--lambda", "10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"], "exact-cubic");
    let roots: Vec<f64> = v["roots"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let r = 199.0f64.sqrt();
    assert_eq!(roots.len(), 3);
    assert!((roots[0] + r).abs() < 1e-9);
    assert!(roots[1].abs() < 1e-9);
    assert!((roots[2] - r).abs() < 1e-9);
    assert!(v.get("warning").is_none());
}

#[test]
fn swap_report_showcase_fidelity() {
    let out = run(&["swap", "--lambda", "10", "--gamma", "0.5", "--kin", "0.1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["F_min"].as_f64().unwrap() - 0.985359).abs() < 1e-5);
    assert_eq!(v["method"], "numeric-minimization");
    assert!(v["xi"]["re"].as_f64().is_some());
}

#[test]
fn swap_report_flags_complex_pair() {
    let out = run(&["swap", "--lambda", "0.5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert!(v["warning"].as_str().unwrap().contains("complex"));
}

#[test]
fn entangle_report_strong_coupling() {
    let out = run(&["entangle", "--lambda", "100"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    let half_pi = std::f64::consts::FRAC_PI_2;
    assert!((points[0]["k"].as_f64().unwrap() + 1.0).abs() < 1e-3);
    assert!((points[0]["theta"].as_f64().unwrap() - half_pi).abs() < 1e-6);
    assert!((points[1]["k"].as_f64().unwrap() - 1.0).abs() < 1e-3);
    assert!((points[1]["theta"].as_f64().unwrap() + half_pi).abs() < 1e-6);
    let p = v["P"].as_f64().unwrap();
    assert!(p > 0.9 && p <= 1.0);
}

#[test]
fn entangle_report_no_balance_without_coupling() {
    let out = run(&["entangle", "--lambda", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["points"].as_array().unwrap().is_empty());
    assert_eq!(v["warning"], "no balanced point");
    assert!((v["P"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn entangle_showcase_probability() {
    let out = run(&["entangle", "--lambda", "10", "--gamma", "0.5", "--kin", "0.1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["P"].as_f64().unwrap() - 0.992485).abs() < 1e-5);
}

#[test]
fn sweep_csv_contract_and_determinism() {
    let args = [
        "sweep", "--lambdas", "2,3,4,5,6,7,8,9,10", "--gamma", "0.5", "--kin", "0.1",
    ];
    let out = run(&args);
    assert!(out.status.success());
    let text = stdout(&out);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, "lambda_over_kappa,F_min,P");
    assert_eq!(rows.len(), 9);
    assert!(rows[8][1] > rows[0][1], "F_min must rise with coupling");
    assert!(rows[8][2] > rows[0][2], "P must rise with coupling");
    for row in &rows {
        assert!(row[1] >= 0.0 && row[1] <= 1.0);
        assert!(row[2] >= 0.0 && row[2] <= 1.0);
    }
    let again = run(&args);
    assert_eq!(out.stdout, again.stdout, "identical config must give identical bytes");
}

#[test]
fn sweep_rejects_descending_list() {
    let out = run(&["sweep", "--lambdas", "10,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_passes_at_tolerance_and_writes_audit() {
    let dir = tempfile::tempdir().unwrap();
    let audit = dir.path().join("audit.csv");
    let out = run(&[
        "oracle", "--lambda", "3", "--span", "20", "--n-modes", "1201",
        "--output", audit.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["max_abs_error"].as_f64().unwrap() < 1e-3);
    assert!(v["phase_error"].as_f64().unwrap() < 1e-3);
    assert!(v["transfer_error"].as_f64().unwrap() < 1e-3);

    let text = std::fs::read_to_string(&audit).unwrap();
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, "k,re_ratio,im_ratio,re_analytic,im_analytic,abs_error");
    assert!(!rows.is_empty());
    for row in &rows {
        assert!(row[5] < 1e-3);
    }
}

#[test]
fn oracle_breach_exits_3() {
    let out = run(&[
        "oracle", "--lambda", "3", "--span", "20", "--n-modes", "1201", "--tolerance", "1e-9",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["max_abs_error"].as_f64().unwrap() > 1e-9);
}

#[test]
fn oracle_invalid_grid_exits_2() {
    let out = run(&["oracle", "--lambda", "3", "--n-modes", "1200"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, r#"{{"lambda": 2.0, "gamma": 0.5, "kappa_in": 0.1}}"#).unwrap();

    // config alone
    let out = run(&["swap", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["F_min"].as_f64().unwrap() - 0.879397).abs() < 1e-5);

    // flag wins over config
    let out = run(&["swap", "--config", path.to_str().unwrap(), "--lambda", "10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["F_min"].as_f64().unwrap() - 0.985359).abs() < 1e-5);
}

#[test]
fn config_full_form_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("full.json");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(
        f,
        r#"{{"lambda_L": 10.0, "lambda_R": 10.0, "theta_L": 3.141592653589793, "theta_R": 0.0, "gamma": 0.5}}"#
    )
    .unwrap();
    let out = run(&["swap", "--config", path.to_str().unwrap(), "--kin", "0.1"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["F_min"].as_f64().unwrap() - 0.985359).abs() < 1e-5);
}

#[test]
fn config_errors_name_the_field() {
    // missing lambda entirely
    let out = run(&["swap"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda"));

    // unknown key
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, r#"{{"lambda": 2.0, "bogus": 1.0}}"#).unwrap();
    let out = run(&["swap", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));

    // invalid physical parameter
    let out = run(&["swap", "--lambda", "10", "--kappa", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kappa"));

    // non-swap configuration rejected for swap analyses
    let path2 = dir.path().join("nonswap.json");
    let mut f = std::fs::File::create(&path2).unwrap();
    writeln!(f, r#"{{"lambda_L": 1.0, "lambda_R": 2.0}}"#).unwrap();
    let out = run(&["swap", "--config", path2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("swap"));
}

#[test]
fn format_conflict_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fmt.json");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, r#"{{"lambda": 2.0, "format": "json"}}"#).unwrap();
    let out = run(&["phase", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("format"));
}

#[test]
fn sampled_packet_csv_feeds_swap() {
    // a sampled copy of the Gaussian showcase packet gives the same F_min
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("packet.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "k,re_f,im_f").unwrap();
    let n = 2001;
    for j in 0..n {
        let k = -0.8 + 1.6 * j as f64 / (n - 1) as f64;
        let amp = std::f64::consts::PI.powf(-0.25) / 0.1f64.sqrt()
            * (-0.5 * (k / 0.1) * (k / 0.1)).exp();
        writeln!(f, "{k},{amp},0.0").unwrap();
    }
    let out = run(&[
        "swap", "--lambda", "10", "--gamma", "0.5",
        "--packet-csv", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["F_min"].as_f64().unwrap() - 0.985359).abs() < 1e-4);

    // a denormalized packet is rejected, not silently rescaled
    let bad = dir.path().join("bad.csv");
    let mut f = std::fs::File::create(&bad).unwrap();
    writeln!(f, "0.0,1.0,0.0\n0.5,1.0,0.0\n1.0,0.5,0.0").unwrap();
    let out = run(&["swap", "--lambda", "10", "--packet-csv", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("norm"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phase.csv");
    let out = run(&[
        "phase", "--lambda", "3", "--n-points", "7", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("k,re_phase,im_phase,abs_phase\n"));
    assert_eq!(text.lines().count(), 8);
}
