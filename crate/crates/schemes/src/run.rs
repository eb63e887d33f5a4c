use capillary_core::{
    contact_angles, energy_of, volume_of, Coefficients, DropletState, Error, Real, Result, SeriesRow, Snapshot,
    Surface, TimeSeries,
};

use crate::config::{Order, SchemeConfig};
use crate::first::step_first;
use crate::second::step_second_counted;

#[derive(Debug, Clone)]
pub struct RunOutput<T> {
    pub series: TimeSeries<T>,
    pub final_state: DropletState<T>,
    /// Newton solves that fell back to their linearised seed.
    pub newton_fallbacks: usize,
}

/// One step of the configured order.
pub fn step<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    coeffs: &dyn Coefficients<T>,
    config: &SchemeConfig<T>,
    dt: T,
) -> Result<DropletState<T>> {
    match config.order {
        Order::First => step_first(state, surface, coeffs, config, dt),
        Order::Second => step_second_counted(state, surface, coeffs, config, dt).map(|(s, _)| s),
    }
}

fn row<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    coeffs: &dyn Coefficients<T>,
) -> Result<SeriesRow<T>> {
    let p = coeffs.at(state.time);
    let angles = contact_angles(state, surface)?;
    Ok(SeriesRow {
        t: state.time,
        a: state.a,
        b: state.b,
        lambda: state.lambda,
        theta_a: angles.theta_a,
        theta_b: angles.theta_b,
        volume: volume_of(state, surface)?,
        energy: energy_of(state, surface, &p)?,
    })
}

fn snapshot<T: Real, S: Surface<T> + ?Sized>(state: &DropletState<T>, surface: &S) -> Result<Snapshot<T>> {
    Ok(Snapshot {
        t: state.time,
        x: state.nodes(),
        h: state.heights.clone(),
        w: state.substrate_heights(surface)?,
    })
}

/// Endpoint displacements on a flat substrate lie between `sigma dt` and
/// `(sigma + 1) dt` in the advancing direction.
fn check_bounds<T: Real>(old: &DropletState<T>, new: &DropletState<T>, s0: T, s1: T, dt: T) -> Result<()> {
    let (lo, hi) = (s0.min(s1) * dt, (s0.max(s1) + T::one()) * dt);
    let tol = |x: T| T::lit(1e-12) * T::one().max(x.abs());
    let da = new.a - old.a;
    let db = old.b - new.b;
    if da < lo - tol(new.a) || da > hi + tol(new.a) || db < lo - tol(new.b) || db > hi + tol(new.b) {
        return Err(Error::BoundViolation(format!(
            "endpoint moves ({}, {}) outside [{lo}, {hi}]",
            da, db
        )));
    }
    Ok(())
}

fn check_state<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    volume: T,
    heights: bool,
) -> Result<()> {
    let v = volume_of(state, surface)?;
    let residual = (v - volume).abs();
    if !(residual <= T::lit(1e-9) * T::one().max(volume)) {
        return Err(Error::ConstraintViolation { residual: residual.as_f64() });
    }
    if heights {
        let w = state.substrate_heights(surface)?;
        for (j, (h, w)) in state.heights.iter().zip(&w).enumerate() {
            if *h < *w - T::lit(1e-8) {
                return Err(Error::NegativeHeight { node: j, deficit: (*w - *h).as_f64() });
            }
        }
    }
    Ok(())
}

/// Integrates from `initial` to `config.final_time`, recording one series
/// row per step and full profiles at the configured cadence.
pub fn run_simulation<T: Real, S: Surface<T> + ?Sized>(
    initial: &DropletState<T>,
    surface: &S,
    coeffs: &dyn Coefficients<T>,
    config: &SchemeConfig<T>,
) -> Result<RunOutput<T>> {
    config.validate()?;
    if initial.n() != config.n_grid {
        return Err(Error::Dimension(format!("initial state has N = {}, config expects {}", initial.n(), config.n_grid)));
    }
    let n_steps = config.n_steps();
    let dt = config.effective_dt();
    let every = config
        .snapshot_every
        .map(|c| ((c / dt).as_f64().round() as usize).max(1))
        .unwrap_or(usize::MAX);
    let t0 = initial.time;
    let mut state = initial.clone();
    let mut series = TimeSeries::new();
    let mut fallbacks = 0;
    series.push(row(&state, surface, coeffs)?)?;
    series.push_snapshot(snapshot(&state, surface)?);
    for k in 0..n_steps {
        let mut attempt = || -> Result<DropletState<T>> {
            let (mut next, used) = match config.order {
                Order::First => (step_first(&state, surface, coeffs, config, dt)?, 0),
                Order::Second => step_second_counted(&state, surface, coeffs, config, dt)?,
            };
            fallbacks += used;
            next.time = t0 + T::from_count(k + 1) * dt;
            let p0 = coeffs.at(state.time);
            let p1 = coeffs.at(next.time);
            if config.check_bounds && surface.is_flat() {
                check_bounds(&state, &next, p0.sigma, p1.sigma, dt)?;
            }
            check_state(&next, surface, p1.volume, config.check_heights)?;
            Ok(next)
        };
        state = attempt().map_err(|e| e.at_step(k + 1))?;
        series.push(row(&state, surface, coeffs)?)?;
        if (k + 1) % every == 0 || k + 1 == n_steps {
            series.push_snapshot(snapshot(&state, surface)?);
        }
    }
    Ok(RunOutput { series, final_state: state, newton_fallbacks: fallbacks })
}
