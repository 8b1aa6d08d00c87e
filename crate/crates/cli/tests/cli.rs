//! End-to-end tests of the command line interface: schema strictness, exit
//! codes, and deterministic output files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sagnac"))
}

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

fn small_scenario() -> serde_json::Value {
    serde_json::json!({
        "fiber": {
            "length_m": 100.0,
            "beta_plus_ps_per_m": 2.1,
            "beta_minus_ps_per_m": 9.8,
            "mode_field_diameter_um": 10.0
        },
        "pump": {"energy_total_pj": 2500.0, "intensity_fwhm_ps": 5.0, "wavelength_nm": 1550.0},
        "signal": {"wavelength_nm": 1310.0, "fwhm_ps": 200.0},
        "environment": {"temperature_k": 300.0, "bandwidth_ghz": 4.883},
        "grid": {"n_samples": 2048, "t_span_ps": 4096.0},
        "study": {"kind": "energy_sweep", "energies_pj": [0.0, 1000.0, 2000.0], "mode": "analytic"}
    })
}

fn write_scenario(dir: &Path, value: &serde_json::Value) -> PathBuf {
    let path = dir.join("scenario.json");
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

#[test]
fn list_studies_names_all_five() {
    let out = bin().arg("list-studies").output().unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for kind in ["energy_sweep", "window_trace", "delay_scan", "pump_broadening", "noise_curve"] {
        assert!(text.contains(kind), "missing {kind} in:\n{text}");
    }
}

#[test]
fn validate_bundled_scenarios() {
    for name in
        ["fig2_100m", "fig2_500m", "fig4a", "fig4b", "fig5_smf28", "fig5_nzdsf", "fig3_noise"]
    {
        let path = scenarios_dir().join(format!("{name}.json"));
        let out = bin().arg("validate").arg(&path).output().unwrap();
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = bin().arg("validate").arg(scenarios_dir().join("fig2_100m.json")).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("OK") && text.contains("e_star"), "{text}");
}

#[test]
fn malformed_json_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = small_scenario();
    doc["fiber"]["attenuation_db_per_km"] = serde_json::json!(0.2);
    let path = write_scenario(dir.path(), &doc);
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("attenuation_db_per_km"), "{err}");
}

#[test]
fn missing_required_field_is_rejected_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = small_scenario();
    doc["fiber"].as_object_mut().unwrap().remove("length_m");
    let path = write_scenario(dir.path(), &doc);
    let out_dir = dir.path().join("results");
    let out = bin().arg("simulate").arg(&path).arg("--out").arg(&out_dir).output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(!out_dir.exists(), "no output files may be written on validation failure");
}

#[test]
fn stray_study_field_for_kind_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = small_scenario();
    doc["study"]["lengths_m"] = serde_json::json!([100.0]);
    let path = write_scenario(dir.path(), &doc);
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("lengths_m"), "{err}");
}

#[test]
fn simulate_writes_deterministic_results() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), &small_scenario());
    let (d1, d2) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&d1, &d2] {
        let out = bin()
            .arg("simulate")
            .arg(&path)
            .arg("--out")
            .arg(d)
            .arg("--json")
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["energy_sweep.csv", "energy_sweep.json", "metadata.json"] {
        let a = std::fs::read(d1.join(name)).unwrap();
        let b = std::fs::read(d2.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
    let csv = std::fs::read_to_string(d1.join("energy_sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("E_pJ,T_peak,R_peak"));
    assert_eq!(lines.count(), 3);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d1.join("metadata.json")).unwrap()).unwrap();
    assert_eq!(meta["study"], "energy_sweep");
    assert_eq!(meta["figure"], "fig2");
    assert_eq!(meta["scenario_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn solver_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = small_scenario();
    // absurd pump energy collapses the phase-bounded step below L * 1e-6
    doc["pump"]["energy_total_pj"] = serde_json::json!(1e12);
    doc["solver"] = serde_json::json!({"step_mode": "phase_bounded"});
    doc["study"] = serde_json::json!({"kind": "pump_broadening", "lengths_m": [100.0]});
    let path = write_scenario(dir.path(), &doc);
    let out_dir = dir.path().join("results");
    let out = bin().arg("simulate").arg(&path).arg("--out").arg(&out_dir).output().unwrap();
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}
