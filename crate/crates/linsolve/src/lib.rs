//! Linear and nonlinear solvers for the volume-constrained implicit step.

pub mod bordered;
pub mod newton;

pub use bordered::{solve_bordered_tridiag, BorderedTridiag};
pub use newton::{newton_elliptic, EllipticProblem, Lagged, NewtonOptions, NewtonReport};

pub type BorderedTridiag64 = BorderedTridiag<f64>;
pub type NewtonOptions64 = NewtonOptions<f64>;
