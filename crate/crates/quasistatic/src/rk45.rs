//! Adaptive Dormand-Prince 5(4) integrator for a scalar ODE whose right-hand
//! side may fail (a failed evaluation rejects the step).

use capillary_core::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rk45Options<T> {
    pub atol: T,
    pub rtol: T,
    pub h_init: T,
    pub h_min: T,
    pub h_max: T,
    pub max_steps: usize,
}

impl<T: Real> Default for Rk45Options<T> {
    fn default() -> Self {
        Self {
            atol: T::lit(1e-10),
            rtol: T::zero(),
            h_init: T::lit(1e-3),
            h_min: T::lit(1e-12),
            h_max: T::lit(0.1),
            max_steps: 1_000_000,
        }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus the embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn try_step<T: Real, F>(f: &mut F, t: T, y: T, k1: T, h: T) -> Result<(T, T, T)>
where
    F: FnMut(T, T) -> Result<T>,
{
    let mut k = [T::zero(); 7];
    k[0] = k1;
    for s in 1..7 {
        let mut acc = T::zero();
        for (a, kk) in A[s].iter().zip(&k).take(s) {
            acc += T::lit(*a) * *kk;
        }
        k[s] = f(t + T::lit(C[s]) * h, y + h * acc)?;
    }
    let mut y_new = T::zero();
    let mut err = T::zero();
    for s in 0..7 {
        y_new += T::lit(A[6].get(s).copied().unwrap_or(0.0)) * k[s];
        err += T::lit(E[s]) * k[s];
    }
    Ok((y + h * y_new, h * err, k[6]))
}

/// Integrates `y' = f(t, y)` from `(t0, y0)` to `t_end`, calling `accept`
/// after every accepted step with `(t, y)`.
pub fn integrate<T: Real, F, G>(mut f: F, t0: T, y0: T, t_end: T, opts: &Rk45Options<T>, mut accept: G) -> Result<T>
where
    F: FnMut(T, T) -> Result<T>,
    G: FnMut(T, T) -> Result<()>,
{
    if !(t_end >= t0) {
        return Err(Error::InvalidInput(format!("end time {t_end} precedes start {t0}")));
    }
    let mut t = t0;
    let mut y = y0;
    if t_end == t0 {
        return Ok(y);
    }
    let mut k1 = f(t, y)?;
    let mut h = opts.h_init.min(opts.h_max).min(t_end - t0);
    for _ in 0..opts.max_steps {
        let last = t + h >= t_end;
        let h_try = if last { t_end - t } else { h };
        let (scale, rejected) = match try_step(&mut f, t, y, k1, h_try) {
            Ok((y_new, err, k7)) => {
                let tol = opts.atol + opts.rtol * y.abs().max(y_new.abs());
                let ratio = err.abs() / tol;
                if ratio <= T::one() {
                    t = if last { t_end } else { t + h_try };
                    y = y_new;
                    k1 = k7;
                    accept(t, y)?;
                    if last {
                        return Ok(y);
                    }
                    let grow = if ratio == T::zero() { T::lit(5.0) } else { T::lit(0.9) * ratio.powf(T::lit(-0.2)) };
                    (grow.min(T::lit(5.0)).max(T::lit(0.2)), false)
                } else {
                    (T::lit(0.9) * ratio.powf(T::lit(-0.2)).max(T::lit(0.2)), true)
                }
            }
            Err(_) => (T::lit(0.25), true),
        };
        h = (h_try * scale).min(opts.h_max);
        if rejected && h < opts.h_min {
            return Err(Error::NonConvergence { iterations: 0, residual: h.as_f64() });
        }
    }
    Err(Error::NonConvergence { iterations: opts.max_steps, residual: (t_end - t).as_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let opts = Rk45Options { atol: 1e-12, ..Default::default() };
        let y = integrate(|_, y: f64| Ok(-2.0 * y), 0.0, 1.0, 1.5, &opts, |_, _| Ok(())).unwrap();
        assert!((y - (-3.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn time_dependent_rhs() {
        let mut steps = 0;
        let y = integrate(|t: f64, _| Ok(t.cos()), 0.0, 0.0, 2.0, &Rk45Options::default(), |_, _| {
            steps += 1;
            Ok(())
        })
        .unwrap();
        assert!((y - 2.0f64.sin()).abs() < 1e-9);
        assert!(steps > 1);
    }

    #[test]
    fn failing_rhs_shrinks_step() {
        let y = integrate(
            |t: f64, y: f64| if t > 0.5 && t < 0.5 + 1e-13 { Err(Error::Domain("x".into())) } else { Ok(y) },
            0.0,
            1.0,
            1.0,
            &Rk45Options { atol: 1e-11, ..Default::default() },
            |_, _| Ok(()),
        )
        .unwrap();
        assert!((y - 1f64.exp()).abs() < 1e-8);
    }
}
