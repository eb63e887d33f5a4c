//! Quasi-static droplet dynamics as a desingularized differential-algebraic
//! system in the contact point, apex height, contact angle and multiplier.

pub mod closure;
pub mod integrals;
pub mod pendant;
pub mod profile;
pub mod rk45;
pub mod sessile;

pub use closure::{newton_fd, ClosureOptions};
pub use integrals::{desingularized_b, desingularized_volume, j_of, lambda_from_apex, profile_integrals, ProfileIntegrals};
pub use pendant::{compatible_pendant, solve_pendant, PendantDae};
pub use profile::{profile_energy, reconstruct_profile};
pub use rk45::Rk45Options;
pub use sessile::{cm_bound, compatible_initial, equilibrium_sessile, solve_algebraic, DaeOptions, QuasiStaticState, SessileDae};

pub type QuasiStaticState64 = QuasiStaticState<f64>;
pub type SessileDae64 = SessileDae<f64>;
pub type PendantDae64 = PendantDae<f64>;
