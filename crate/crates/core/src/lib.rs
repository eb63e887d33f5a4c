//! Core types for 2D droplet dynamics on rough substrates: moving-grid
//! states, finite-difference stencils and volume, energy and angle
//! diagnostics.

pub mod diagnostics;
pub mod error;
pub mod params;
pub mod real;
pub mod series;
pub mod state;
pub mod stencil;
pub mod surface;

pub use diagnostics::{contact_angles, energy_of, volume_of, volume_with};
pub use error::{Error, Result};
pub use params::{Coefficients, PhysicalParams};
pub use real::Real;
pub use series::{SeriesRow, Snapshot, TimeSeries};
pub use state::{grid_nodes, AngleReadout, DropletState};
pub use stencil::{interior_curvature, interior_derivatives, nodal_slopes, one_sided_slope, End};
pub use surface::{FlatSurface, Side, Surface};

pub type PhysicalParams64 = PhysicalParams<f64>;
pub type DropletState64 = DropletState<f64>;
pub type AngleReadout64 = AngleReadout<f64>;
pub type TimeSeries64 = TimeSeries<f64>;
pub type PhysicalParams32 = PhysicalParams<f32>;
pub type DropletState32 = DropletState<f32>;
