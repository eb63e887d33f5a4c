//! Scenario registry, convergence studies and file output for the
//! `capillary` command-line tool.

pub mod cli;
pub mod convergence;
pub mod error;
pub mod output;
pub mod scenario;
pub mod sim;

pub use convergence::{convergence_study, OrderRow, OrderTable};
pub use error::{HarnessError, HarnessResult};
pub use scenario::{named, resolve, DaeConfig, Overrides, PdeConfig, ScenarioConfig, SCENARIOS};
pub use sim::{prepare, reference_b, run_dae, run_pde, DaeRun, PdeRun};
