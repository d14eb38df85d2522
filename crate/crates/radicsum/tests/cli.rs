//! End-to-end checks of the CLI surface: exit codes, CSV schemas, and
//! JSON schema versioning.

use std::process::{Command, Output};

fn radicsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radicsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn sum_both_prints_exact_approx_phi() {
    let out = radicsum(&["sum", "4", "2", "--both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("exact  6.1462643699419726e0"));
    assert!(text.contains("approx 6.3355259362494039e0"));
    assert!(text.contains("phi    1.89261566307431"));
}

#[test]
fn sum_r1_has_zero_phi() {
    let out = radicsum(&["sum", "4", "1", "--both", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,r,exact,approx,phi");
    let row = lines.next().unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "4");
    assert_eq!(fields[2].parse::<f64>().unwrap(), 10.0);
    assert!(fields[4].parse::<f64>().unwrap().abs() < 1e-9);
}

#[test]
fn sum_rejects_r_below_one_with_exit_2() {
    let out = radicsum(&["sum", "4", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("r >= 1"), "stderr: {err}");
}

#[test]
fn sum_json_carries_schema_version() {
    let out = radicsum(&["sum", "4", "2", "--format", "json"]);
    assert!(out.status.success());
    let body: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(body["schema_version"], 1);
    assert!((body["phi"].as_f64().unwrap() - 0.189_261_566_307_431_8).abs() < 1e-10);
}

#[test]
fn factorial_sqrt2pi_estimate() {
    let out = radicsum(&["factorial", "10", "--xi", "sqrt2pi", "--format", "json"]);
    assert!(out.status.success());
    let body: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((body["estimate_log"].as_f64().unwrap() - 15.096838897587565).abs() < 1e-9);
    assert!((body["exact_log"].as_f64().unwrap() - 15.104412573075515).abs() < 1e-9);
}

#[test]
fn factorial_identity_xi_reproduces_exact() {
    let out = radicsum(&["factorial", "1", "--xi", "identity", "--format", "json"]);
    assert!(out.status.success());
    let body: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(body["estimate_log"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn factorial_limit_xi_close_to_identity() {
    let limit = radicsum(&["factorial", "10", "--xi", "limit", "--format", "json"]);
    let ident = radicsum(&["factorial", "10", "--xi", "identity", "--format", "json"]);
    assert!(limit.status.success() && ident.status.success());
    let l: serde_json::Value = serde_json::from_str(&stdout(&limit)).unwrap();
    let i: serde_json::Value = serde_json::from_str(&stdout(&ident)).unwrap();
    let gap = (l["estimate_log"].as_f64().unwrap() - i["estimate_log"].as_f64().unwrap()).abs();
    assert!(gap < 1e-3, "gap = {gap}");
}

#[test]
fn verify_phi_bounds_passes_with_exit_0() {
    let out = radicsum(&[
        "verify",
        "--claim",
        "PHI_BOUNDS",
        "--grid",
        "n=1,2,5,10;r=1,2,64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PHI_BOUNDS"));
    assert!(stdout(&out).contains("pass"));
}

#[test]
fn verify_csv_schema_is_stable() {
    let out = radicsum(&[
        "verify",
        "--claim",
        "PHI_BOUNDS",
        "--grid",
        "n=4;r=2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "claim,n,r,value,target,abs_error,status"
    );
    let row = lines.next().unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "PHI_BOUNDS");
    assert_eq!(fields[1], "4");
    assert!((fields[3].parse::<f64>().unwrap() - 0.189_261_566_307_431_8).abs() < 1e-10);
    assert_eq!(fields[6], "pass");
}

#[test]
fn verify_hyperfact_residual_is_measured() {
    let out = radicsum(&[
        "verify",
        "--claim",
        "HYPERFACT_RESIDUAL",
        "--grid",
        "n=1,10,100;r=1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().skip(1).all(|l| l.ends_with("measured")));
}

#[test]
fn verify_writes_report_file() {
    let dir = std::env::temp_dir().join("radicsum_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = radicsum(&[
        "verify",
        "--claim",
        "XI_SQRT_2PI",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["schema_version"], 1);
    let rows = body["reports"][0]["rows"].as_array().unwrap();
    for row in rows {
        for field in ["claim", "n", "r", "value", "target", "abs_error", "status"] {
            assert!(row.get(field).is_some(), "missing field {field}");
        }
    }
}

#[test]
fn verify_rejects_unknown_claim() {
    let out = radicsum(&["verify", "--claim", "NOT_A_CLAIM"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_respects_grid_file_env() {
    let dir = std::env::temp_dir().join("radicsum_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.txt");
    std::fs::write(&path, "n = 1, 4\nr = 1, 2\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_radicsum"))
        .args(["verify", "--claim", "PHI_BOUNDS", "--format", "csv"])
        .env("RADICSUM_GRID_FILE", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // 2 n values x 2 r values = 4 rows after the header
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn bench_rejects_single_repetition() {
    let out = radicsum(&["bench", "--reps", "1", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_csv_schema_and_r1_exactness() {
    let out = radicsum(&[
        "bench",
        "--n-max",
        "10",
        "--r",
        "1",
        "--reps",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,r,exact,approx,phi,exact_ns,approx_ns");
    for row in lines {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert!(fields[4].parse::<f64>().unwrap().abs() < 1e-6);
    }
}

#[test]
fn oracle_cap_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_radicsum"))
        .args(["sum", "1000", "2", "--exact"])
        .env("RADICSUM_N_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}
