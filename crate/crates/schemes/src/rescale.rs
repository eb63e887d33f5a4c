//! Semi-Lagrangian transport of a profile from the old grid to the new one.
//!
//! Node `j` of the new grid has the same relative position as node `j` of
//! the old grid, so it moved by `(a' - a) + j (tau' - tau)`.

use capillary_core::{nodal_slopes, DropletState, Real, Result};

fn displacement<T: Real>(state: &DropletState<T>, a_next: T, b_next: T, j: usize) -> T {
    let n = state.n();
    let tau_next = (b_next - a_next) / T::from_count(n);
    (a_next - state.a) + T::from_count(j) * (tau_next - state.tau())
}

/// First-order transport `h*_j = h_j + (h_x)_j [(a' - a) + j (tau' - tau)]`.
pub fn rescale_first<T: Real>(state: &DropletState<T>, a_next: T, b_next: T) -> Result<Vec<T>> {
    let slopes = nodal_slopes(&state.heights, state.tau())?;
    Ok((0..=state.n())
        .map(|j| state.heights[j] + slopes[j] * displacement(state, a_next, b_next, j))
        .collect())
}

/// Second-order transport using the average of the old and predicted slopes.
pub fn rescale_second<T: Real>(
    state: &DropletState<T>,
    predictor: &DropletState<T>,
    a_next: T,
    b_next: T,
) -> Result<Vec<T>> {
    let n = state.n();
    let tau_old = state.tau();
    let tau_pred = predictor.tau();
    let tau_next = (b_next - a_next) / T::from_count(n);
    let old = nodal_slopes(&state.heights, tau_old)?;
    let pred = nodal_slopes(&predictor.heights, tau_pred)?;
    let two = T::lit(2.0);
    let factor = T::lit(0.125) * (T::one() / tau_next + T::one() / tau_old);
    Ok((0..=n)
        .map(|j| {
            let diff = if j == 0 || j == n {
                two * (tau_old * old[j] + tau_pred * pred[j])
            } else {
                let (h, p) = (&state.heights, &predictor.heights);
                h[j + 1] - h[j - 1] + p[j + 1] - p[j - 1]
            };
            state.heights[j] + factor * diff * displacement(state, a_next, b_next, j)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> DropletState<f64> {
        let h = (0..=n).map(|j| f(a + (b - a) * j as f64 / n as f64)).collect();
        DropletState::new(a, b, h, f64::NAN, 0.0).unwrap()
    }

    #[test]
    fn identity_map() {
        let s = sampled(-1.0, 2.0, 12, |x| x.sin() + 2.0);
        assert_eq!(rescale_first(&s, -1.0, 2.0).unwrap(), s.heights);
        assert_eq!(rescale_second(&s, &s, -1.0, 2.0).unwrap(), s.heights);
    }

    #[test]
    fn first_order_exact_on_affine() {
        let f = |x: f64| 0.3 - 1.7 * x;
        let s = sampled(-1.0, 2.0, 12, f);
        let (a1, b1) = (-0.8, 2.3);
        let out = rescale_first(&s, a1, b1).unwrap();
        for (j, v) in out.iter().enumerate() {
            let x = a1 + (b1 - a1) * j as f64 / 12.0;
            assert!((v - f(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn first_order_quadratic_remainder() {
        let s = sampled(-1.0, 2.0, 10, |x| x * x);
        let delta = 0.05;
        let out = rescale_first(&s, -1.0 + delta, 2.0 + delta).unwrap();
        for j in 1..10 {
            let x_new = s.x(j) + delta;
            assert!((out[j] - (x_new * x_new - delta * delta)).abs() < 1e-13);
        }
    }

    #[test]
    fn second_order_affine_translation_exact() {
        let f = |x: f64| 1.0 + 0.4 * x;
        let s = sampled(-1.0, 2.0, 8, f);
        let p = sampled(-0.9, 2.1, 8, f);
        let out = rescale_second(&s, &p, -0.9, 2.1).unwrap();
        for (j, v) in out.iter().enumerate() {
            assert!((v - f(-0.9 + 3.0 * j as f64 / 8.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn second_order_affine_under_dilation() {
        // averaged slope is s (1 + (r - 1)^2 / (4 r)) with r = tau / tau'
        let (c, slope) = (1.0, 0.4);
        let f = |x: f64| c + slope * x;
        let s = sampled(-1.0, 2.0, 8, f);
        let p = sampled(-1.2, 2.4, 8, f);
        let out = rescale_second(&s, &p, -1.2, 2.4).unwrap();
        let r = 3.0 / 3.6;
        let gain = 1.0 + (r - 1.0) * (r - 1.0) / (4.0 * r);
        for (j, v) in out.iter().enumerate() {
            let x_old = s.x(j);
            let x_new = -1.2 + 3.6 * j as f64 / 8.0;
            let expected = f(x_old) + slope * gain * (x_new - x_old);
            assert!((v - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn second_order_taylor_refinement() {
        // transport of sin(x) along a drifting, stretching grid with the exact profile as predictor
        let f = |x: f64| (1.3 * x).sin() + 2.0;
        let n = 400;
        let err = |dt: f64| {
            let s = sampled(-1.0, 2.0, n, f);
            let (a1, b1) = (-1.0 + 0.7 * dt, 2.0 + 0.4 * dt);
            let p = sampled(a1, b1, n, f);
            let out = rescale_second(&s, &p, a1, b1).unwrap();
            (1..n)
                .map(|j| (out[j] - f(a1 + (b1 - a1) * j as f64 / n as f64)).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(0.1), err(0.05));
        let order = (e1 / e2).log2();
        assert!(order > 1.8, "order {order}: {e1} {e2}");
    }
}
