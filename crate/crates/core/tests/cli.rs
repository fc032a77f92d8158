//! The `patchy` binary and the library entry point behind it.

use std::path::Path;
use std::process::{Command, Output};

use patchy::cli::{run, Command as Sub};
use patchy::config::{parse_config, FeSource, RunConfig};

fn patchy(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patchy"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn steady_prints_reference_equilibrium() {
    let tmp = tempfile::tempdir().unwrap();
    let o = patchy(&["steady", "--out", "o"], tmp.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("beta_bar = 3.000000000e16"), "{text}");
    assert!(text.contains("gamma_bar = 3.000000000e15"), "{text}");
    assert!(tmp.path().join("o/manifest").is_file());
}

#[test]
fn stability_reports_turing() {
    let tmp = tempfile::tempdir().unwrap();
    let o = patchy(&["stability"], tmp.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("turing = true"));
    assert!(text.contains("ode_stable = true"));
    assert!(tmp.path().join("out/manifest").is_file());
}

#[test]
fn dispersion_writes_curve() {
    let tmp = tempfile::tempdir().unwrap();
    let o = patchy(&["dispersion", "--out", "d"], tmp.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("lambda_minus = 2.71"));
    let csv = std::fs::read_to_string(tmp.path().join("d/dispersion.csv")).unwrap();
    assert!(csv.starts_with("xi2,growth_rate\n"));
    assert!(csv.lines().count() > 100);
}

#[test]
fn reference_simulation_reports_band_hit() {
    let tmp = tempfile::tempdir().unwrap();
    let o = patchy(&["simulate", "--out", "s"], tmp.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = tmp.path().join("s");
    let snaps = std::fs::read_dir(&out)
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .file_name()
                .to_string_lossy()
                .starts_with("snap_t")
        })
        .count();
    assert!(snaps >= 3);
    let snap = std::fs::read_to_string(out.join("snap_t20160.csv")).unwrap();
    assert!(snap.starts_with("x,beta,gamma\n"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["in_predicted_band"], true);
    assert!(report["peak_count"].as_u64().unwrap() >= 3);
    for key in ["dominant_xi2", "dominant_wavelength_m", "spatial_variance"] {
        assert!(report[key].is_number(), "{key}");
    }
    let series = std::fs::read_to_string(out.join("series.csv")).unwrap();
    assert!(series.starts_with("t,beta_variance,gamma_variance,beta_max,peak_count\n"));
    assert!(series.contains("# in_predicted_band = true"));
}

#[test]
fn scan_writes_grid() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("c"), "scan_n_rc = 5\nscan_n_a = 7\n").unwrap();
    let o = patchy(&["scan", "--config", "c", "--out", "g"], tmp.path());
    assert!(o.status.success());
    let csv = std::fs::read_to_string(tmp.path().join("g/scan.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
    assert_eq!(csv.lines().next().unwrap().split(',').count(), 8);
}

#[test]
fn exit_codes_distinguish_input_from_runtime_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        ("r_b = -1\n", "steady", 1, "r_b"),
        ("colour = red\n", "steady", 1, "colour"),
        ("r_b 0.1\n", "steady", 1, "line 1"),
        ("dt = 48\n", "simulate", 1, "time step"),
        (
            "spot_amplitude = 1e30\nt_end = 10\nsnapshot_every = 10\n",
            "simulate",
            2,
            "negative",
        ),
    ];
    for (i, (cfg, cmd, code, needle)) in cases.iter().enumerate() {
        let path = tmp.path().join(format!("c{i}"));
        std::fs::write(&path, cfg).unwrap();
        let o = patchy(
            &[cmd, "--config", path.to_str().unwrap(), "--out", "x"],
            tmp.path(),
        );
        assert_eq!(o.status.code(), Some(*code), "{cfg}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(needle), "{err}");
    }
    assert_eq!(patchy(&["plot"], tmp.path()).status.code(), Some(1));
    assert_eq!(
        patchy(&["steady", "--config", "missing"], tmp.path())
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn manifest_reproduces_the_run() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = parse_config("n_points = 200\nlength = 0.002\nt_end = 600\nsnapshot_every = 300\ninitial = perturbed\ntheta_target = 0.4\nseed = 9\n").unwrap();
    assert!(matches!(cfg.fe_source, FeSource::Calibrated { .. }));
    let first = tmp.path().join("first");
    run(Sub::Simulate, &cfg, &first, &mut Vec::new()).unwrap();
    let manifest = std::fs::read_to_string(first.join("manifest")).unwrap();
    let again = parse_config(&manifest).unwrap();
    assert_eq!(again.params, cfg.params);
    let second = tmp.path().join("second");
    run(Sub::Simulate, &again, &second, &mut Vec::new()).unwrap();
    for f in ["series.csv", "snap_t600.csv", "report.json"] {
        assert_eq!(
            std::fs::read(first.join(f)).unwrap(),
            std::fs::read(second.join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn default_config_is_reference_set() {
    let cfg = parse_config("# nothing here\n\n").unwrap();
    let default = RunConfig::default();
    assert_eq!(cfg.params, default.params);
    assert!((cfg.params.f_e / 0.0856 - 1.0).abs() < 5e-3);
    assert_eq!(cfg.fe_source, FeSource::Given);
}
