use std::cell::Cell;

use capillary_core::{Error, Real, Result};

use crate::closure::newton_fd;
use crate::integrals::{lambda_from_apex, profile_integrals};
use crate::rk45::integrate;
use crate::sessile::{DaeOptions, QuasiStaticState};

/// Solves the pendant closure for `(u_m, theta, lambda)` given the contact point:
///
/// ```text
/// J(u_m) = 1
/// b = V / (2 u_m) + (1 / u_m) int_0^{u_m} (u_m - u) J / sqrt(1 - J^2) du
/// V / 2 = int_0^{u_m} u J / sqrt(1 - J^2) du
/// ```
pub fn solve_pendant<T: Real>(
    b: T,
    kappa: T,
    volume: T,
    guess: &QuasiStaticState<T>,
    options: &DaeOptions<T>,
) -> Result<QuasiStaticState<T>> {
    let half = T::lit(0.5);
    let z = newton_fd(
        |z: &[T; 3]| {
            let (u_m, theta, lambda) = (z[0], z[1], z[2]);
            if (kappa * u_m - lambda).abs() <= T::epsilon() * lambda.abs().max(T::one()) {
                return Err(Error::Desingularization("kappa u_m = lambda".into()));
            }
            let i = profile_integrals(u_m, lambda, kappa, options.n_quad)?;
            Ok([
                -kappa * u_m * u_m * half + lambda * u_m + theta.cos() - T::one(),
                half * volume / u_m + i.apex_moment / u_m - b,
                i.half_volume - half * volume,
            ])
        },
        [guess.u_m, guess.theta, guess.lambda],
        &options.closure,
    )?;
    Ok(QuasiStaticState { b, u_m: z[0], theta: z[1], lambda: z[2], t: guess.t })
}

/// Compatible contact point, multiplier and volume for a pendant drop with
/// apex height `u_m` and contact angle `theta`.
pub fn compatible_pendant<T: Real>(u_m: T, theta: T, kappa: T, n_quad: usize) -> Result<(QuasiStaticState<T>, T)> {
    let lambda = lambda_from_apex(u_m, theta.cos(), kappa);
    let i = profile_integrals(u_m, lambda, kappa, n_quad)?;
    let volume = T::lit(2.0) * i.half_volume;
    let b = T::lit(0.5) * volume / u_m + i.apex_moment / u_m;
    Ok((QuasiStaticState { b, u_m, theta, lambda, t: T::zero() }, volume))
}

/// Quasi-static pendant dynamics `X(0)' = -cos(theta) - sigma`.
#[derive(Debug, Clone, Copy)]
pub struct PendantDae<T> {
    pub sigma: T,
    pub kappa: T,
    pub volume: T,
    pub options: DaeOptions<T>,
}

impl<T: Real> PendantDae<T> {
    pub fn velocity(&self, state: &QuasiStaticState<T>) -> T {
        -self.sigma - state.theta.cos()
    }

    /// Integrates from `initial` to `t_end`, returning every accepted state.
    pub fn integrate(&self, initial: &QuasiStaticState<T>, t_end: T) -> Result<Vec<QuasiStaticState<T>>> {
        let solve = |b: T, g: &QuasiStaticState<T>| solve_pendant(b, self.kappa, self.volume, g, &self.options);
        let start = solve(initial.b, initial)?;
        let guess = Cell::new(start);
        let mut out = vec![start];
        let rhs = |_t: T, b: T| -> Result<T> {
            let s = solve(b, &guess.get())?;
            guess.set(s);
            Ok(-self.sigma - s.theta.cos())
        };
        integrate(rhs, initial.t, initial.b, t_end, &self.options.ode, |t, b| {
            let s = QuasiStaticState { t, ..solve(b, &guess.get())? };
            guess.set(s);
            out.push(s);
            Ok(())
        })?;
        Ok(out)
    }
}
