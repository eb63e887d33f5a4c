use std::cell::Cell;

use capillary_core::{Error, Real, Result};

use crate::closure::{newton_fd, ClosureOptions};
use crate::integrals::{lambda_from_apex, profile_integrals};
use crate::rk45::{integrate, Rk45Options};

/// Symmetric quasi-static droplet on `[-b, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiStaticState<T> {
    pub b: T,
    pub u_m: T,
    pub theta: T,
    pub lambda: T,
    pub t: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DaeOptions<T> {
    pub n_quad: usize,
    pub closure: ClosureOptions<T>,
    pub ode: Rk45Options<T>,
}

impl<T: Real> Default for DaeOptions<T> {
    fn default() -> Self {
        Self { n_quad: 2000, closure: ClosureOptions::default(), ode: Rk45Options::default() }
    }
}

fn state_from<T: Real>(b: T, u_m: T, cos_theta: T, kappa: T, t: T) -> QuasiStaticState<T> {
    QuasiStaticState { b, u_m, theta: cos_theta.acos(), lambda: lambda_from_apex(u_m, cos_theta, kappa), t }
}

/// Solves `F1(u_m, theta) = 0`, `F2(u_m, theta) = b` for a sessile drop (`kappa > 0`).
///
/// `guess` supplies the starting `(u_m, cos theta)`.
pub fn solve_algebraic<T: Real>(
    b: T,
    kappa: T,
    volume: T,
    guess: (T, T),
    n_quad: usize,
    opts: &ClosureOptions<T>,
) -> Result<QuasiStaticState<T>> {
    if !(kappa > T::zero()) {
        return Err(Error::InvalidInput(format!("sessile closure needs kappa > 0, got {kappa}")));
    }
    let half = T::lit(0.5);
    let z = newton_fd(
        |z: &[T; 2]| {
            let lam = lambda_from_apex(z[0], z[1], kappa);
            let i = profile_integrals(z[0], lam, kappa, n_quad)?;
            Ok([i.b - b, i.half_volume - half * volume])
        },
        [guess.0, guess.1],
        opts,
    )?;
    if !(z[1] >= T::zero() && z[1] < T::one()) {
        return Err(Error::Regime(format!("cos(theta) = {} outside [0, 1): no single vertical graph", z[1])));
    }
    Ok(state_from(b, z[0], z[1], kappa, T::zero()))
}

/// Contact point and volume compatible with an apex height and contact angle.
pub fn compatible_initial<T: Real>(u_m: T, theta: T, kappa: T, n_quad: usize) -> Result<(QuasiStaticState<T>, T)> {
    let lambda = lambda_from_apex(u_m, theta.cos(), kappa);
    let i = profile_integrals(u_m, lambda, kappa, n_quad)?;
    Ok((QuasiStaticState { b: i.b, u_m, theta, lambda, t: T::zero() }, T::lit(2.0) * i.half_volume))
}

/// Steady state with `cos(theta) = -sigma` and the prescribed volume.
pub fn equilibrium_sessile<T: Real>(sigma: T, kappa: T, volume: T, guess_u_m: T, n_quad: usize) -> Result<QuasiStaticState<T>> {
    let c = -sigma;
    if !(c >= T::zero() && c < T::one()) {
        return Err(Error::Regime(format!("sigma = {sigma} gives a Young angle outside (0, pi/2]")));
    }
    let half = T::lit(0.5);
    let z = newton_fd(
        |z: &[T; 1]| {
            let i = profile_integrals(z[0], lambda_from_apex(z[0], c, kappa), kappa, n_quad)?;
            Ok([i.half_volume - half * volume])
        },
        [guess_u_m],
        &ClosureOptions::default(),
    )?;
    let lambda = lambda_from_apex(z[0], c, kappa);
    let b = profile_integrals(z[0], lambda, kappa, n_quad)?.b;
    Ok(QuasiStaticState { b, u_m: z[0], theta: c.acos(), lambda, t: T::zero() })
}

/// Index-one reduction `b' = -sigma - cos(theta(b))` of the sessile DAE.
#[derive(Debug, Clone, Copy)]
pub struct SessileDae<T> {
    pub sigma: T,
    pub kappa: T,
    pub volume: T,
    pub options: DaeOptions<T>,
}

impl<T: Real> SessileDae<T> {
    /// Contact-point velocity at `state`.
    pub fn velocity(&self, state: &QuasiStaticState<T>) -> T {
        -self.sigma - state.theta.cos()
    }

    /// Integrates from `initial` to `t_end`, returning every accepted state.
    ///
    /// Each right-hand-side evaluation re-solves the algebraic closure,
    /// warm-started from the previous solution.
    pub fn integrate(&self, initial: &QuasiStaticState<T>, t_end: T) -> Result<Vec<QuasiStaticState<T>>> {
        let opts = &self.options;
        let solve = |b: T, g: (T, T)| solve_algebraic(b, self.kappa, self.volume, g, opts.n_quad, &opts.closure);
        let start = solve(initial.b, (initial.u_m, initial.theta.cos()))?;
        let guess = Cell::new((start.u_m, start.theta.cos()));
        let mut out = vec![QuasiStaticState { t: initial.t, ..start }];
        let rhs = |_t: T, b: T| -> Result<T> {
            let s = solve(b, guess.get())?;
            guess.set((s.u_m, s.theta.cos()));
            Ok(-self.sigma - s.theta.cos())
        };
        integrate(rhs, initial.t, initial.b, t_end, &opts.ode, |t, b| {
            let s = solve(b, guess.get())?;
            guess.set((s.u_m, s.theta.cos()));
            out.push(QuasiStaticState { t, ..s });
            Ok(())
        })?;
        Ok(out)
    }
}

/// Bound `C_m` on `d cos(theta) / db` along sessile trajectories.
pub fn cm_bound<T: Real>(b: T, u_m: T, volume: T, kappa: T) -> Result<T> {
    let gap = volume - b * u_m;
    if !(gap > T::zero()) {
        return Err(Error::Regime(format!("V - b u_m = {gap} must be positive")));
    }
    Ok((T::lit(6.0) * volume / u_m + kappa * u_m * u_m * u_m) / gap)
}
