use capillary_core::{Error, Real, Result};

use crate::sessile::QuasiStaticState;

/// Samples `X(u)` on the uniform `psi` grid, from the apex `(u_m, 0)` down
/// to the contact point `(0, b)`. Returns `(u, X)` pairs.
pub fn reconstruct_profile<T: Real>(state: &QuasiStaticState<T>, kappa: T, n_quad: usize) -> Result<Vec<(T, T)>> {
    let (u_m, lambda) = (state.u_m, state.lambda);
    if !(u_m > T::zero()) || n_quad == 0 {
        return Err(Error::InvalidInput(format!("need u_m > 0 and n_quad > 0, got {u_m}, {n_quad}")));
    }
    let half = T::lit(0.5);
    let c = T::lit(2.0 * std::f64::consts::SQRT_2);
    let tau = u_m.sqrt() / T::from_count(n_quad);
    let mut out = Vec::with_capacity(n_quad + 1);
    let mut x = T::zero();
    out.push((u_m, x));
    for i in 0..n_quad {
        let psi = (T::from_count(i) + half) * tau;
        let u = u_m - psi * psi;
        let d = T::lit(2.0) * lambda - kappa * (u_m + u);
        let j = T::one() - half * d * psi * psi;
        if !(d > T::zero()) || !(j > -T::one()) {
            return Err(Error::Desingularization(format!("invalid integrand at u = {u}")));
        }
        x += c * tau * j / (d.sqrt() * (T::one() + j).sqrt());
        let edge = T::from_count(i + 1) * tau;
        let u_edge = if i + 1 == n_quad { T::zero() } else { u_m - edge * edge };
        out.push((u_edge, x));
    }
    Ok(out)
}

/// Free energy of the symmetric profile: interface length, adhesion `2 sigma b`
/// and the gravity term `kappa int u^2 / 2 dx`.
pub fn profile_energy<T: Real>(state: &QuasiStaticState<T>, sigma: T, kappa: T, n_quad: usize) -> Result<T> {
    let i = crate::integrals::profile_integrals(state.u_m, state.lambda, kappa, n_quad)?;
    let two = T::lit(2.0);
    Ok(two * i.arc_length + two * sigma * state.b + two * kappa * i.gravity_moment)
}
