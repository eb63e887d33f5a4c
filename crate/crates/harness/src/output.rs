//! CSV and manifest files.

use std::fs;
use std::path::{Path, PathBuf};

use capillary_core::series::write_record;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::convergence::OrderTable;
use crate::error::{HarnessError, HarnessResult};
use crate::scenario::{DaeConfig, PdeConfig, ScenarioConfig};
use crate::sim::{DaeRun, PdeRun};

pub const OUT_DIR_VAR: &str = "CAPILLARY_OUT_DIR";
pub const TRAJECTORY_HEADER: &str = "t,b,u_m,theta,lambda";
pub const DAE_PROFILE_HEADER: &str = "u,X";

/// Output root: `$CAPILLARY_OUT_DIR` when set, otherwise `./out`.
pub fn out_root() -> PathBuf {
    std::env::var_os(OUT_DIR_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out"))
}

/// Hex SHA-256 of the config's canonical JSON encoding.
pub fn config_hash<C: Serialize>(cfg: &C) -> String {
    let bytes = serde_json::to_vec(cfg).unwrap_or_default();
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn write(path: &Path, bytes: &[u8]) -> HarnessResult<()> {
    fs::write(path, bytes).map_err(|e| HarnessError::io(path, e))
}

fn ensure_dir(dir: &Path) -> HarnessResult<()> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))
}

fn write_json(path: &Path, value: &Value) -> HarnessResult<()> {
    let mut text = serde_json::to_string_pretty(value).unwrap_or_default();
    text.push('\n');
    write(path, text.as_bytes())
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> HarnessError + '_ {
    move |e| HarnessError::io(path, e)
}

pub fn write_pde(dir: &Path, cfg: &PdeConfig, run: &PdeRun) -> HarnessResult<Value> {
    ensure_dir(dir)?;
    let series = &run.output.series;
    let mut buf = Vec::new();
    let rows = dir.join("series.csv");
    series.write_rows(&mut buf).map_err(io_err(&rows))?;
    write(&rows, &buf)?;
    buf.clear();
    let profiles = dir.join("profiles.csv");
    series.write_profiles(&mut buf).map_err(io_err(&profiles))?;
    write(&profiles, &buf)?;
    let wrapped = ScenarioConfig::Pde(cfg.clone());
    write_json(&dir.join("config.json"), &serde_json::to_value(&wrapped).unwrap_or(Value::Null))?;
    let last = series.last().copied();
    let manifest = json!({
        "scenario": cfg.name,
        "config_sha256": config_hash(&wrapped),
        "wall_time_s": run.wall_time,
        "newton_fallbacks": run.output.newton_fallbacks,
        "steps": series.len().saturating_sub(1),
        "snapshots": series.snapshots().len(),
        "derived": run.prepared.derived,
        "final": last.map(|r| json!({
            "t": r.t, "a": r.a, "b": r.b, "lambda": r.lambda,
            "theta_a": r.theta_a, "theta_b": r.theta_b, "volume": r.volume, "energy": r.energy,
        })),
        "files": ["series.csv", "profiles.csv", "config.json"],
    });
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}

fn profile_csv(points: &[(f64, f64)]) -> HarnessResult<Vec<u8>> {
    let mut buf = format!("{DAE_PROFILE_HEADER}\n").into_bytes();
    for &(u, x) in points {
        write_record(&mut buf, &[u, x]).map_err(|e| HarnessError::io("profile", e))?;
    }
    Ok(buf)
}

pub fn write_dae(dir: &Path, cfg: &DaeConfig, run: &DaeRun) -> HarnessResult<Value> {
    ensure_dir(dir)?;
    let mut buf = format!("{TRAJECTORY_HEADER}\n").into_bytes();
    for s in &run.trajectory {
        write_record(&mut buf, &[s.t, s.b, s.u_m, s.theta, s.lambda]).map_err(io_err(dir))?;
    }
    write(&dir.join("trajectory.csv"), &buf)?;
    write(&dir.join("profile_initial.csv"), &profile_csv(&run.initial_profile)?)?;
    write(&dir.join("profile_final.csv"), &profile_csv(&run.final_profile)?)?;
    let wrapped = ScenarioConfig::Dae(cfg.clone());
    write_json(&dir.join("config.json"), &serde_json::to_value(&wrapped).unwrap_or(Value::Null))?;
    let last = run.trajectory.last();
    let manifest = json!({
        "scenario": cfg.name,
        "config_sha256": config_hash(&wrapped),
        "wall_time_s": run.wall_time,
        "accepted_steps": run.trajectory.len().saturating_sub(1),
        "sigma": run.sigma,
        "derived": run.derived,
        "final": last.map(|s| json!({ "t": s.t, "b": s.b, "u_m": s.u_m, "theta": s.theta, "lambda": s.lambda })),
        "files": ["trajectory.csv", "profile_initial.csv", "profile_final.csv", "config.json"],
    });
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}

pub fn write_orders(dir: &Path, cfg: &PdeConfig, tables: &[OrderTable], wall_time: f64) -> HarnessResult<Value> {
    ensure_dir(dir)?;
    let mut files = Vec::new();
    for t in tables {
        let name = format!("orders_{}.csv", serde_json::to_value(t.order).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default());
        write(&dir.join(&name), t.to_csv().as_bytes())?;
        files.push(name);
    }
    let wrapped = ScenarioConfig::Pde(cfg.clone());
    let manifest = json!({
        "scenario": cfg.name,
        "config_sha256": config_hash(&wrapped),
        "wall_time_s": wall_time,
        "tables": tables,
        "files": files,
    });
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}
