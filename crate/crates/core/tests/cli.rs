use std::path::Path;
use std::process::{Command, Output};

fn brillouin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brillouin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("scenario.toml");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn stokes_sweep_header_and_reference_row() {
    let o = brillouin(&["stokes-sweep"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("delta_s,omega_alpha,omega_beta,omega_0,cosh2,sinh2,r,entropy,status")
    );
    assert_eq!(text.lines().count(), 202);
    let mid = text.lines().find(|l| l.starts_with("0,")).unwrap();
    let cells: Vec<&str> = mid.split(',').collect();
    assert_eq!(cells[1], "9.94987437");
    assert_eq!(cells[3], "-0.0501256289");
}

#[test]
fn csv_is_byte_stable() {
    let a = brillouin(&["stokes-sweep", "--points", "57"]);
    let b = brillouin(&["stokes-sweep", "--points", "57"]);
    assert_eq!(a.stdout, b.stdout);
    let a = brillouin(&["antistokes-sweep", "--format", "json"]);
    let b = brillouin(&["antistokes-sweep", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unstable_rows_are_flagged_not_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[coupling]\ng_s_mhz = 8.0\n");
    let o = brillouin(&["--config", &cfg, "stokes-sweep", "--points", "11"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 12);
    assert_eq!(text.matches("stability_violation").count(), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("4 of 11 rows flagged"));
}

#[test]
fn antistokes_resonance_row() {
    let o = brillouin(&["antistokes-sweep", "--min", "-1", "--max", "1", "--points", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("delta_as,omega_plus,omega_minus,x_plus_sq,y_plus_sq,x_minus_sq,y_minus_sq,status")
    );
    assert!(text.contains("\n0,11,9,0.5,0.5,0.5,0.5,ok\n"));
    assert!(text.contains("\n1,12.4142136,9.58578644,0.146446609,0.853553391,0.853553391,0.146446609,ok\n"));
}

#[test]
fn json_mirrors_csv() {
    let o = brillouin(&["stokes-sweep", "--points", "5", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2]["delta_s"], 0.0);
    assert_eq!(rows[2]["omega_alpha"], 9.94987437);
    assert_eq!(rows[2]["status"], "ok");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("state.csv");
    let o = brillouin(&["state", "--squeeze", "0", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap(), "n,amplitude,probability,ratio\n0,1,1,\n");
}

#[test]
fn state_ratio_column_is_tanh_r() {
    let o = brillouin(&["state", "--squeeze", "0.0501676", "--truncation", "5"]);
    let text = stdout(&o);
    let ratios: Vec<f64> = text
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 5);
    let tanh = 0.0501676f64.tanh();
    assert!(ratios.iter().all(|r| ((r - tanh) / tanh).abs() < 1e-8), "{ratios:?}");
}

#[test]
fn thermal_table_defaults() {
    let o = brillouin(&["thermal"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("temperature_k,n_thermal"));
    assert_eq!(text.lines().count(), 201);
    assert!(text.lines().nth(1).unwrap().starts_with("0.001,"));
    assert!(text.ends_with("300,624.598707\n"));
}

#[test]
fn verify_passes_at_reference_point() {
    let o = brillouin(&["verify"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("PASS stokes_ground_energy"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_rejects_unstable_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[coupling]\ng_s_mhz = 20.0\n");
    let o = brillouin(&["--config", &cfg, "verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stability"));
}

#[test]
fn verify_warns_below_recommended_truncation() {
    let o = brillouin(&["verify", "--truncation", "10", "--format", "json"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["truncation"], 10);
    assert_eq!(report["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["[sweep]\npoints = 1\n", "[pump]\nu_mhz = -1.0\n", "garbage = = ="] {
        let cfg = write_config(dir.path(), text);
        let o = brillouin(&["--config", &cfg, "stokes-sweep"]);
        assert_eq!(o.status.code(), Some(1), "{text}");
    }
    assert_eq!(brillouin(&["stokes-sweep", "--min", "2", "--max", "1"]).status.code(), Some(1));
    assert_eq!(brillouin(&["verify", "--truncation", "61"]).status.code(), Some(1));
    assert_eq!(brillouin(&["state", "--squeeze", "-1"]).status.code(), Some(1));
    assert_eq!(brillouin(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(brillouin(&["--config", "/nonexistent.toml", "verify"]).status.code(), Some(1));
}
