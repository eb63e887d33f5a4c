//! Volume, free energy and contact angles of a droplet state.

use crate::error::Result;
use crate::params::PhysicalParams;
use crate::real::Real;
use crate::state::{AngleReadout, DropletState};
use crate::stencil::{one_sided_unchecked, End};
use crate::surface::{Side, Surface};

/// Interior-node rectangle rule `sum_{j=1}^{N-1} (h_j - w_j) tau`.
pub fn volume_of<T: Real, S: Surface<T> + ?Sized>(state: &DropletState<T>, surface: &S) -> Result<T> {
    let w = state.substrate_heights(surface)?;
    Ok(volume_with(&state.heights, &w, state.tau()))
}

/// Rectangle-rule volume from node heights and substrate heights.
pub fn volume_with<T: Real>(h: &[T], w: &[T], tau: T) -> T {
    let n = h.len() - 1;
    let mut sum = T::zero();
    for j in 1..n {
        sum += h[j] - w[j];
    }
    sum * tau
}

/// Dimensionless free energy: capillary length, adhesion and gravity.
///
/// Arc lengths are polyline lengths through the nodes; the gravity term
/// uses the composite trapezoid rule.
pub fn energy_of<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    params: &PhysicalParams<T>,
) -> Result<T> {
    let w = state.substrate_heights(surface)?;
    let x = state.nodes();
    let h = &state.heights;
    let n = state.n();
    let half = T::lit(0.5);
    let (sin0, cos0) = params.theta0.sin_cos();
    let potential = |j: usize| {
        ((h[j] * h[j] - w[j] * w[j]) * half) * cos0 + x[j] * (h[j] - w[j]) * sin0
    };
    let mut length = T::zero();
    let mut wetted = T::zero();
    let mut gravity = T::zero();
    for j in 0..n {
        let dx = x[j + 1] - x[j];
        length += dx.hypot(h[j + 1] - h[j]);
        wetted += dx.hypot(w[j + 1] - w[j]);
        gravity += (potential(j) + potential(j + 1)) * half * dx;
    }
    Ok(length + params.sigma * wetted + params.kappa * gravity)
}

/// Contact angles measured inside the droplet, relative to the local substrate.
pub fn contact_angles<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
) -> Result<AngleReadout<T>> {
    let tau = state.tau();
    let sa = one_sided_unchecked(&state.heights, tau, End::Left);
    let sb = one_sided_unchecked(&state.heights, tau, End::Right);
    let theta_0a = surface.slope(state.a, Side::Average)?.atan();
    let theta_0b = (-surface.slope(state.b, Side::Average)?).atan();
    Ok(AngleReadout {
        theta_a: sa.atan() - theta_0a,
        theta_b: -sb.atan() - theta_0b,
        theta_0a,
        theta_0b,
    })
}
