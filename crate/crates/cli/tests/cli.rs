//! End-to-end checks of the command-line interface: file formats,
//! determinism, exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_su11"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

#[test]
fn sweep_is_byte_identical_and_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.cfg");
    std::fs::write(
        &cfg_path,
        "interferometer = su11\nscheme = parity\ng_start = 0.3\ng_stop = 1.2\ng_count = 7\nphi_start = 0.4\nphi_stop = 0.4\nphi_count = 1\n",
    )
    .unwrap();
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    for out in [&out1, &out2] {
        let status = bin()
            .arg("sweep")
            .arg(&cfg_path)
            .arg(format!("out={}", out.display()))
            .status()
            .unwrap();
        assert!(status.success());
    }
    let csv1 = read(&out1);
    assert_eq!(
        csv1,
        read(&out2),
        "identical config must give identical bytes"
    );
    assert!(csv1.starts_with("g,r,alpha_mag,phi,n_total,snl,hl,qcrb,delta_phi_parity,error"));
    assert_eq!(csv1.lines().count(), 8);
    let meta = read(&dir.path().join("a.csv.meta.txt"));
    assert!(meta.contains("tool = su11"));
    assert!(meta.contains("g_count = 7"));

    // every finite row satisfies the information inequality
    for line in csv1.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let qcrb: f64 = cells[7].parse().unwrap();
        let dp: f64 = cells[8].parse().unwrap();
        if qcrb.is_finite() && dp.is_finite() {
            assert!(qcrb <= dp + 1e-9, "{line}");
        }
    }
}

#[test]
fn sweep_override_wins_over_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.cfg");
    std::fs::write(&cfg_path, "g_start = 0.5\ng_stop = 0.5\ng_count = 1\n").unwrap();
    let out = dir.path().join("o.csv");
    let status = bin()
        .arg("sweep")
        .arg(&cfg_path)
        .arg("g_start=0.9")
        .arg("g_stop=0.9")
        .arg(format!("out={}", out.display()))
        .status()
        .unwrap();
    assert!(status.success());
    let csv = read(&out);
    let first = csv.lines().nth(1).unwrap();
    assert!(first.starts_with("9.0000000000000"), "{first}");
}

#[test]
fn sweep_rejects_bad_config_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("bad.cfg");
    std::fs::write(&cfg_path, "scheme = parity\nwat = 7\n").unwrap();
    let output = bin().arg("sweep").arg(&cfg_path).output().unwrap();
    assert!(!output.status.success());
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains(":2:"), "{err}");
}

#[test]
fn fig2a_csv_properties() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2a.csv");
    let status = bin().arg("fig2a").arg("--out").arg(&out).status().unwrap();
    assert!(status.success());
    let csv = read(&out);
    assert_eq!(csv.lines().count(), 101);
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let hl: f64 = cells[6].parse().unwrap();
        let dp: f64 = cells[8].parse().unwrap();
        assert!(dp < hl, "parity must beat the Heisenberg limit: {line}");
    }
}

#[test]
fn homodyne_vacuum_sweep_emits_inf_token() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("h.cfg");
    std::fs::write(
        &cfg_path,
        "scheme = homodyne\ng_start = 1.0\ng_stop = 1.0\ng_count = 1\n",
    )
    .unwrap();
    let out = dir.path().join("h.csv");
    let status = bin()
        .arg("sweep")
        .arg(&cfg_path)
        .arg(format!("out={}", out.display()))
        .status()
        .unwrap();
    assert!(status.success());
    let csv = read(&out);
    let row = csv.lines().nth(1).unwrap();
    assert_eq!(row.split(',').nth(8).unwrap(), "inf");
}

#[test]
fn tables_report_is_clean() {
    let output = bin().arg("tables").output().unwrap();
    assert!(output.status.success());
    let report = String::from_utf8_lossy(&output.stdout);
    assert!(report.contains("[su11-bounds]"), "{report}");
    assert!(report.contains("0 failures"), "{report}");
    assert!(report.contains("INF"), "{report}");
}

#[test]
fn verify_default_grid_passes() {
    let output = bin().arg("verify").output().unwrap();
    let report = String::from_utf8_lossy(&output.stdout);
    assert!(output.status.success(), "{report}");
    assert!(report.contains("PASS: oracle parity agreement"), "{report}");
    assert!(!report.contains("FAIL"), "{report}");
}
