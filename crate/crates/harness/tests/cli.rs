use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn capillary(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capillary"))
        .args(args)
        .env("CAPILLARY_OUT_DIR", out)
        .output()
        .expect("binary runs")
}

fn stderr_error(output: &Output) -> Value {
    let text = String::from_utf8_lossy(&output.stderr);
    let value: Value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {text}"));
    value["error"].clone()
}

fn stdout_json(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn unknown_scenario_is_a_json_error() {
    let dir = TempDir::new().unwrap();
    let out = capillary(dir.path(), &["run", "no-such-scenario"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "unknown_scenario");
    assert!(err["message"].as_str().unwrap().contains("no-such-scenario"));
}

#[test]
fn bad_arguments_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    for args in [&["run", "accuracy", "--dt", "fast"][..], &["converge", "accuracy", "--orders", "third"], &["dae", "floating"]] {
        let out = capillary(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_error(&out)["kind"], "usage", "{args:?}");
    }
}

#[test]
fn invalid_parameters_exit_nonzero() {
    let dir = TempDir::new().unwrap();
    let out = capillary(dir.path(), &["run", "accuracy", "--beta=-1"]);
    assert_ne!(out.status.code(), Some(0));
    assert_eq!(stderr_error(&out)["kind"], "invalid_input");
}

#[test]
fn solver_failures_report_the_step() {
    let dir = TempDir::new().unwrap();
    let out = capillary(dir.path(), &["run", "teapot", "--strict-newton", "--T", "0.1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "non_convergence");
    assert!(err["step"].as_u64().unwrap() >= 1);
}

#[test]
fn runs_are_byte_identical() {
    let (first, second) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for dir in [&first, &second] {
        let v = stdout_json(&capillary(dir.path(), &["run", "accuracy", "--order", "second", "--T", "0.25"]));
        assert_eq!(v["status"], "ok");
    }
    for file in ["series.csv", "profiles.csv", "config.json"] {
        let a = fs::read(first.path().join("accuracy").join(file)).unwrap();
        let b = fs::read(second.path().join("accuracy").join(file)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{file} differs between runs");
    }
}

#[test]
fn breathing_snapshot_cadence() {
    let dir = TempDir::new().unwrap();
    let two_pi = format!("{}", 2.0 * std::f64::consts::PI);
    let v = stdout_json(&capillary(dir.path(), &["run", "breathing", "--T", &two_pi, "--N", "100"]));
    let manifest = &v["manifest"];
    assert_eq!(manifest["config_sha256"].as_str().unwrap().len(), 64);
    let text = fs::read_to_string(dir.path().join("breathing/profiles.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,h,w"));
    let mut times: Vec<String> = lines.map(|l| l.split(',').next().unwrap().to_string()).collect();
    times.dedup();
    assert_eq!(times.len(), 5, "{times:?}");
    let series = fs::read_to_string(dir.path().join("breathing/series.csv")).unwrap();
    assert_eq!(series.lines().next(), Some("t,a,b,lambda,theta_a,theta_b,volume,energy"));
}

#[test]
fn dae_commands_write_trajectories() {
    let dir = TempDir::new().unwrap();
    let v = stdout_json(&capillary(dir.path(), &["dae", "sessile", "--T", "0.2", "--n-quad", "1000"]));
    assert_eq!(v["status"], "ok");
    let traj = fs::read_to_string(dir.path().join("sessile/trajectory.csv")).unwrap();
    assert_eq!(traj.lines().next(), Some("t,b,u_m,theta,lambda"));
    assert!(traj.lines().count() > 2);
    stdout_json(&capillary(dir.path(), &["dae", "pendant", "--shape", "lightbulb", "--T", "0.2", "--n-quad", "1000"]));
    let profile = fs::read_to_string(dir.path().join("pendant-lightbulb/profile_final.csv")).unwrap();
    assert_eq!(profile.lines().next(), Some("u,X"));
}

#[test]
fn converge_writes_order_tables() {
    let dir = TempDir::new().unwrap();
    stdout_json(&capillary(dir.path(), &["converge", "accuracy", "--orders", "first,second", "--M", "10,20,40"]));
    for order in ["first", "second"] {
        let text = fs::read_to_string(dir.path().join(format!("accuracy-converge/orders_{order}.csv"))).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[0], "M,error,order");
        assert_eq!(rows.len(), 4);
        let last: f64 = rows[3].rsplit(',').next().unwrap().parse().unwrap();
        let expected = if order == "first" { 1.0 } else { 2.0 };
        assert!((last - expected).abs() < 0.3, "{order}: {last}");
    }
}

#[test]
fn config_files_run_like_named_scenarios() {
    let dir = TempDir::new().unwrap();
    let mut cfg = serde_json::to_value(capillary::named("accuracy").unwrap()).unwrap();
    cfg["name"] = "from-file".into();
    cfg["scheme"]["final_time"] = 0.1.into();
    let path = dir.path().join("scenario.json");
    fs::write(&path, serde_json::to_vec_pretty(&cfg).unwrap()).unwrap();
    let v = stdout_json(&capillary(dir.path(), &["run", path.to_str().unwrap()]));
    assert!(v["out_dir"].as_str().unwrap().ends_with("from-file"));
    let saved: Value = serde_json::from_slice(&fs::read(dir.path().join("from-file/config.json")).unwrap()).unwrap();
    assert_eq!(saved["scheme"]["final_time"], 0.1);

    fs::write(&path, "{ not json").unwrap();
    let out = capillary(dir.path(), &["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_error(&out)["kind"], "config");
}

#[test]
fn list_names_every_scenario() {
    let dir = TempDir::new().unwrap();
    let v = stdout_json(&capillary(dir.path(), &["list"]));
    let names: Vec<&str> = v["scenarios"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(names, capillary::SCENARIOS);
}
