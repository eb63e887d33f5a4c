//! Moving-grid time steppers for a droplet evolving by mean curvature with
//! contact-line dynamics: a linearly implicit first-order scheme and a
//! predictor-corrector second-order scheme.

pub mod boundary;
pub mod config;
pub mod first;
pub mod rescale;
pub mod run;
pub mod second;

pub use boundary::{boundary_update_first, boundary_update_second, contact_law, contact_velocities};
pub use config::{CorrectorMode, Order, SchemeConfig, SlopeSource};
pub use first::step_first;
pub use rescale::{rescale_first, rescale_second};
pub use run::{run_simulation, step, RunOutput};
pub use second::step_second;

pub type SchemeConfig64 = SchemeConfig<f64>;
pub type RunOutput64 = RunOutput<f64>;
