use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::convergence::convergence_study;
use crate::error::{HarnessError, HarnessResult};
use crate::output::{out_root, write_dae, write_orders, write_pde};
use crate::scenario::{named, resolve, OrderName, Overrides, ScenarioConfig, SCENARIOS};
use crate::sim::{run_dae, run_pde};

#[derive(Debug, Parser)]
#[command(name = "capillary", version, about = "Droplet dynamics on rough inclined substrates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a named scenario or a JSON/TOML config file.
    Run {
        scenario: String,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Empirical convergence orders under `dt = T / M`, `N = 8 M`.
    Converge {
        scenario: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "first,second")]
        orders: Vec<OrderName>,
        #[arg(long = "M", value_delimiter = ',', default_value = "40,80,160,320")]
        m: Vec<usize>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Quasi-static DAE for a sessile or pendant drop.
    Dae {
        #[arg(value_parser = ["sessile", "pendant"])]
        kind: String,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// List the registered scenarios.
    List,
}

fn execute(cfg: ScenarioConfig) -> HarnessResult<Value> {
    let dir = out_root().join(cfg.name());
    let manifest = match &cfg {
        ScenarioConfig::Pde(c) => write_pde(&dir, c, &run_pde(c)?)?,
        ScenarioConfig::Dae(c) => write_dae(&dir, c, &run_dae(c)?)?,
    };
    Ok(json!({ "status": "ok", "out_dir": dir.display().to_string(), "manifest": manifest }))
}

pub fn dispatch(cli: Cli) -> HarnessResult<Value> {
    match cli.command {
        Command::Run { scenario, overrides } => execute(overrides.apply(resolve(&scenario)?)?),
        Command::Dae { kind, overrides } => execute(overrides.apply(named(&kind)?)?),
        Command::Converge { scenario, orders, m, overrides } => {
            let ScenarioConfig::Pde(cfg) = overrides.apply(resolve(&scenario)?)? else {
                return Err(HarnessError::Usage(format!("`{scenario}` is not a PDE scenario")));
            };
            let start = Instant::now();
            let tables = convergence_study(&cfg, &orders, &m)?;
            let dir = out_root().join(format!("{}-converge", cfg.name));
            let manifest = write_orders(&dir, &cfg, &tables, start.elapsed().as_secs_f64())?;
            Ok(json!({ "status": "ok", "out_dir": dir.display().to_string(), "manifest": manifest }))
        }
        Command::List => Ok(json!({ "scenarios": SCENARIOS })),
    }
}
