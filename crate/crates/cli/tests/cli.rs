use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use isospec_lag::scenarios::registered_invariants;
use isospec_lag::{run, Format, Kind, ScenarioConfig, Status};
use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn invoke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isospec-lag"))
        .args(args)
        .env("ISOSPEC_LOG", "error")
        .output()
        .unwrap()
}

fn run_cli(kind: &str, config: &Path, out: &Path, extra: &[&str]) -> (i32, String) {
    let mut args = vec![kind, "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = invoke(&args);
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap())
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn every_shipped_scenario_runs_cleanly() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        ("heisenberg", "heisenberg_sx_sz.json"),
        ("lvn", "lvn_qubit.json"),
        ("sb2c", "sb2c_worked.json"),
        ("bloch", "bloch_y3.json"),
        ("verify", "verify_heisenberg.json"),
        ("verify", "verify_lvn.json"),
        ("verify", "verify_sb2c.json"),
        ("verify", "verify_oscillator.json"),
    ];
    for (kind, file) in cases {
        let out = tmp.path().join(file);
        let (code, stdout) = run_cli(kind, &scenario(file), &out, &[]);
        assert_eq!(code, 0, "{file}: {stdout}");
        let names = registered_invariants(kind.parse().unwrap());
        let lines: Vec<&str> = stdout.lines().collect();
        assert_eq!(lines.len(), names.len(), "{file}");
        for (line, name) in lines.iter().zip(names) {
            assert!(line.starts_with(&format!("{name} max=")) && line.ends_with(" PASS"), "{line}");
        }
        let rep = report(&out);
        assert_eq!(rep["status"], "ok");
        assert_eq!(rep["invariants"].as_array().unwrap().len(), names.len());
        assert!(out.join("trajectory.csv").exists());
    }
}

#[test]
fn heisenberg_csv_schema() {
    let tmp = tempfile::tempdir().unwrap();
    run_cli("heisenberg", &scenario("heisenberg_sx_sz.json"), tmp.path(), &[]);
    let text = std::fs::read_to_string(tmp.path().join("trajectory.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,A_re_0_0,A_im_0_0,A_re_1_0,A_im_1_0,A_re_0_1,A_im_0_1,A_re_1_1,A_im_1_1"
    );
    assert_eq!(lines.next().unwrap(), "0,0,0,1,0,1,0,0,0");
    assert_eq!(text.lines().count(), 1 + 1001);
    let last: Vec<f64> = text.lines().last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    // σ_x(t) = cos 2t σ_x − sin 2t σ_y
    assert!((last[3] - 2f64.cos()).abs() < 1e-10);
    assert!((last[4] + 2f64.sin()).abs() < 1e-10);
}

#[test]
fn json_trajectory_shape() {
    let tmp = tempfile::tempdir().unwrap();
    run_cli("sb2c", &scenario("sb2c_worked.json"), tmp.path(), &["--format", "json"]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(tmp.path().join("trajectory.json")).unwrap()).unwrap();
    assert_eq!(v["kind"], "sb2c");
    assert_eq!(v["columns"], serde_json::json!(["r", "x", "y"]));
    assert_eq!(v["matrix"], "A");
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 5001);
    assert_eq!(samples[0]["values"], serde_json::json!([4.0, -2.0 + 2.5 / 64.0, -1.0]));
    assert_eq!(samples[0]["matrix"].as_array().unwrap().len(), 2);
    assert!(report(tmp.path())["trajectory"].as_str().unwrap().ends_with("trajectory.json"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    for kind_file in [("lvn", "lvn_qubit.json"), ("sb2c", "sb2c_worked.json"), ("bloch", "bloch_y3.json")] {
        let a = tmp.path().join(format!("{}a", kind_file.0));
        let b = tmp.path().join(format!("{}b", kind_file.0));
        let (_, sa) = run_cli(kind_file.0, &scenario(kind_file.1), &a, &["--seed", "42"]);
        let (_, sb) = run_cli(kind_file.0, &scenario(kind_file.1), &b, &["--seed", "42"]);
        assert_eq!(sa, sb);
        assert_eq!(std::fs::read(a.join("trajectory.csv")).unwrap(), std::fs::read(b.join("trajectory.csv")).unwrap());
        let (ra, rb) = (report(&a), report(&b));
        assert_eq!(ra["invariants"], rb["invariants"]);
        assert_eq!(ra["seed"], 42);
    }
}

#[test]
fn seed_changes_only_property_samples() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    run_cli("lvn", &scenario("lvn_qubit.json"), &a, &["--seed", "1"]);
    run_cli("lvn", &scenario("lvn_qubit.json"), &b, &["--seed", "2"]);
    assert_eq!(std::fs::read(a.join("trajectory.csv")).unwrap(), std::fs::read(b.join("trajectory.csv")).unwrap());
    assert_ne!(report(&a)["invariants"][7], report(&b)["invariants"][7]);
}

#[test]
fn invariant_failure_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, stdout) =
        run_cli("heisenberg", &scenario("heisenberg_sx_sz.json"), tmp.path(), &["--tolerance", "rk4_vs_exact=1e-20"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("rk4_vs_exact max=") && stdout.contains("tol=1.000e-20 FAIL"));
    assert_eq!(report(tmp.path())["status"], "invariant_failure");
}

#[test]
fn config_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = tmp.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let ragged = write("ragged.json", r#"{"matrices": {"A0": [[[1, 0]], [[0, 0], [1, 0]]], "H": [[[1, 0]]]}, "times": {"t_final": 1, "step": 0.1}}"#);
    let not_json = write("broken.json", "{ matrices: ");
    let missing = write("missing.json", r#"{"matrices": {"H": [[[1, 0]]]}, "times": {"t_final": 1, "step": 0.1}}"#);
    let bad_step = write("step.json", r#"{"matrices": {"A0": [[[1, 0]]], "H": [[[1, 0]]]}, "times": {"t_final": 1, "step": 0}}"#);
    let non_hermitian = write(
        "nh.json",
        r#"{"matrices": {"A0": [[[1,0],[0,0]],[[0,0],[1,0]]], "H": [[[1,0],[1,0]],[[0,0],[1,0]]]}, "times": {"t_final": 1, "step": 0.1}}"#,
    );
    let out = tmp.path().join("out");
    for cfg in [&ragged, &not_json, &missing, &bad_step, &non_hermitian] {
        let (code, _) = run_cli("heisenberg", cfg, &out, &[]);
        assert_eq!(code, 2, "{}", cfg.display());
    }
    assert!(!out.join("report.json").exists());
    let heis = scenario("heisenberg_sx_sz.json");
    assert_eq!(run_cli("lvn", &heis, &out, &[]).0, 2);
    assert_eq!(run_cli("nonsense", &heis, &out, &[]).0, 2);
    assert_eq!(run_cli("heisenberg", &heis, &out, &["--format", "xml"]).0, 2);
    assert_eq!(run_cli("heisenberg", &heis, &out, &["--tolerance", "spectrum"]).0, 2);
    assert_eq!(invoke(&["heisenberg"]).status.code(), Some(2));
}

#[test]
fn bracketed_singularity_exits_three_with_partial_output() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, stdout) = run_cli("sb2c", &scenario("sb2c_singular.json"), tmp.path(), &[]);
    assert_eq!(code, 3);
    assert!(stdout.contains("SINGULARITY velocity_degeneracy"));
    let rep = report(tmp.path());
    assert_eq!(rep["status"], "singular");
    let (lo, hi) = (rep["singularity"]["t_lower"].as_f64().unwrap(), rep["singularity"]["t_upper"].as_f64().unwrap());
    assert!(lo < hi && hi - lo <= 1e-7 && (0.85..0.95).contains(&lo), "[{lo}, {hi}]");
    let rows = std::fs::read_to_string(tmp.path().join("trajectory.csv")).unwrap().lines().count();
    assert!(rows > 800 && rows < 1000, "{rows}");
    assert_eq!(rep["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn pole_start_exits_three() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, stdout) = run_cli("sb2c", &scenario("sb2c_pole.json"), tmp.path(), &[]);
    assert_eq!(code, 3);
    let rep = report(tmp.path());
    assert_eq!(rep["singularity"]["kind"], "initial_configuration");
    assert_eq!(rep["invariants"].as_array().unwrap().len(), registered_invariants(Kind::Sb2c).len());
    assert!(stdout.lines().filter(|l| l.ends_with("FAIL")).count() == registered_invariants(Kind::Sb2c).len());
}

#[test]
fn library_entry_point() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = ScenarioConfig::load(&scenario("bloch_y3.json")).unwrap();
    cfg.output.path = Some(tmp.path().to_path_buf());
    cfg.output.format = Some(Format::Json);
    let out = run(Kind::Bloch, &cfg).unwrap();
    assert_eq!(out.report.status, Status::Ok);
    assert_eq!(out.exit_code(), 0);
    assert!(out.report.observations["spectrum_motion"] > 1e-3);
    assert!(tmp.path().join("trajectory.json").exists());
}
