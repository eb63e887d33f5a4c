//! Desingularized quadrature of the quasi-static profile `X(u)`.
//!
//! With `psi = sqrt(u_m - u)` and `J(u_m) = 1` one has
//! `1 - J = psi^2 D / 2`, `D = 2 lambda - kappa (u_m + u)`, so that
//! `dX/dpsi = 2 sqrt(2) J / (sqrt(D) sqrt(1 + J))` is bounded at the apex.

use capillary_core::{Error, Real, Result};

/// `J(u) = -kappa u^2 / 2 + lambda u + cos(theta)`.
pub fn j_of<T: Real>(u: T, lambda: T, theta: T, kappa: T) -> T {
    -kappa * u * u * T::lit(0.5) + lambda * u + theta.cos()
}

/// Multiplier satisfying `J(u_m) = 1` for the given `cos(theta)`.
pub fn lambda_from_apex<T: Real>(u_m: T, cos_theta: T, kappa: T) -> T {
    (T::one() - cos_theta + kappa * u_m * u_m * T::lit(0.5)) / u_m
}

/// Midpoint sums over the uniform `psi` grid on `[0, sqrt(u_m)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileIntegrals<T> {
    /// Contact point `X(0)`.
    pub b: T,
    /// `int_0^{u_m} X du`, half the volume.
    pub half_volume: T,
    /// `int_0^{u_m} (u_m - u) J / sqrt(1 - J^2) du`, equal to `u_m b - V / 2`.
    pub apex_moment: T,
    /// Arc length of one half of the interface.
    pub arc_length: T,
    /// `int_0^{b} u^2 / 2 dx` over one half.
    pub gravity_moment: T,
}

/// Evaluates all profile integrals of the state `(u_m, lambda)` with `n_quad` cells.
pub fn profile_integrals<T: Real>(u_m: T, lambda: T, kappa: T, n_quad: usize) -> Result<ProfileIntegrals<T>> {
    if !(u_m > T::zero()) || !u_m.is_finite() || !lambda.is_finite() {
        return Err(Error::Domain(format!("apex height {u_m} and multiplier {lambda} must be finite, u_m > 0")));
    }
    if n_quad == 0 {
        return Err(Error::InvalidInput("n_quad must be positive".into()));
    }
    let half = T::lit(0.5);
    let c = T::lit(2.0 * std::f64::consts::SQRT_2);
    let tau = u_m.sqrt() / T::from_count(n_quad);
    let mut out = ProfileIntegrals {
        b: T::zero(),
        half_volume: T::zero(),
        apex_moment: T::zero(),
        arc_length: T::zero(),
        gravity_moment: T::zero(),
    };
    for i in 0..n_quad {
        let psi = (T::from_count(i) + half) * tau;
        let psi2 = psi * psi;
        let u = u_m - psi2;
        let d = T::lit(2.0) * lambda - kappa * (u_m + u);
        let j = T::one() - half * d * psi2;
        if !(d > T::zero()) {
            return Err(Error::Desingularization(format!(
                "2 lambda - kappa (u_m + u) = {d} at u = {u}"
            )));
        }
        if !(j > -T::one()) {
            return Err(Error::Regime(format!("J = {j} <= -1 at u = {u}, profile is not a graph X(u)")));
        }
        let g = c * tau / (d.sqrt() * (T::one() + j).sqrt());
        out.arc_length += g;
        let gj = g * j;
        out.b += gj;
        out.half_volume += gj * u;
        out.apex_moment += gj * psi2;
        out.gravity_moment += gj * u * u * half;
    }
    Ok(out)
}

/// Contact point `b` from the desingularized midpoint rule.
pub fn desingularized_b<T: Real>(u_m: T, lambda: T, kappa: T, n_quad: usize) -> Result<T> {
    Ok(profile_integrals(u_m, lambda, kappa, n_quad)?.b)
}

/// Half volume `V / 2` from the desingularized midpoint rule.
pub fn desingularized_volume<T: Real>(u_m: T, lambda: T, kappa: T, n_quad: usize) -> Result<T> {
    Ok(profile_integrals(u_m, lambda, kappa, n_quad)?.half_volume)
}
