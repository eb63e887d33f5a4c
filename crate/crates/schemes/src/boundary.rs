//! Explicit contact-line updates.

use capillary_core::{one_sided_slope, DropletState, End, Error, Real, Result, Side, Surface};

/// Advance speed of the left contact point,
/// `sigma sqrt(1 + w'^2) + (1 + h_x w') / sqrt(1 + h_x^2)`.
///
/// The right contact point moves with the negated law.
pub fn contact_law<T: Real>(sigma: T, hx: T, wx: T) -> T {
    sigma * (T::one() + wx * wx).sqrt() + (T::one() + hx * wx) / (T::one() + hx * hx).sqrt()
}

/// Contact-point velocities `(a', b')` of a state.
pub fn contact_velocities<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    sigma: T,
) -> Result<(T, T)> {
    let tau = state.tau();
    let sa = one_sided_slope(&state.heights, tau, End::Left)?;
    let sb = one_sided_slope(&state.heights, tau, End::Right)?;
    let wa = surface.slope(state.a, Side::Average)?;
    let wb = surface.slope(state.b, Side::Average)?;
    Ok((contact_law(sigma, sa, wa), -contact_law(sigma, sb, wb)))
}

fn checked<T: Real, S: Surface<T> + ?Sized>(surface: &S, a: T, b: T) -> Result<(T, T)> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Collapse { a: a.as_f64(), b: b.as_f64() });
    }
    surface.check_inside(a)?;
    surface.check_inside(b)?;
    Ok((a, b))
}

/// Forward Euler step of the contact-line laws.
pub fn boundary_update_first<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    sigma: T,
    dt: T,
) -> Result<(T, T)> {
    let (va, vb) = contact_velocities(state, surface, sigma)?;
    checked(surface, state.a + dt * va, state.b + dt * vb)
}

/// Trapezoidal step averaging the laws at the old state and the predictor.
pub fn boundary_update_second<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    predictor: &DropletState<T>,
    surface: &S,
    sigma_old: T,
    sigma_new: T,
    dt: T,
) -> Result<(T, T)> {
    let (va0, vb0) = contact_velocities(state, surface, sigma_old)?;
    let (va1, vb1) = contact_velocities(predictor, surface, sigma_new)?;
    let half = T::lit(0.5) * dt;
    checked(surface, state.a + half * (va0 + va1), state.b + half * (vb0 + vb1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use capillary_core::FlatSurface;

    fn state(h: Vec<f64>) -> DropletState<f64> {
        DropletState::new(0.0, 2.0, h, f64::NAN, 0.0).unwrap()
    }

    #[test]
    fn complete_wetting_flat_interface_is_still() {
        let s = state(vec![0.0, 0.0, 0.0, 0.0, 0.0]);
        let (a, _) = boundary_update_first(&s, &FlatSurface, -1.0, 0.1).unwrap();
        assert_eq!(a, 0.0);
    }

    #[test]
    fn young_angle_equilibrium() {
        // slope -1 at b, i.e. a 45 degree contact angle
        let s = state(vec![0.0, 0.5, 1.0, 0.5, 0.0]);
        let sigma = -std::f64::consts::FRAC_PI_4.cos();
        let (_, b) = boundary_update_first(&s, &FlatSurface, sigma, 0.1).unwrap();
        assert!((b - 2.0).abs() < 1e-15);
    }

    #[test]
    fn unit_speed() {
        let s = state(vec![0.0, 0.0, 0.0, 0.0, 0.0]);
        let (a, b) = boundary_update_first(&s, &FlatSurface, 0.0, 0.1).unwrap();
        assert!((a - 0.1).abs() < 1e-15);
        assert!((b - 1.9).abs() < 1e-15);
    }

    #[test]
    fn collapse_detected() {
        let s = state(vec![0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(boundary_update_first(&s, &FlatSurface, 0.5, 2.0), Err(Error::Collapse { .. })));
    }

    #[test]
    fn second_order_reduces_to_first_for_identical_predictor() {
        let s = state(vec![0.0, 0.3, 0.4, 0.2, 0.0]);
        let first = boundary_update_first(&s, &FlatSurface, -0.4, 0.05).unwrap();
        let second = boundary_update_second(&s, &s, &FlatSurface, -0.4, -0.4, 0.05).unwrap();
        assert!((first.0 - second.0).abs() < 1e-15 && (first.1 - second.1).abs() < 1e-15);
    }

    #[test]
    fn second_order_equilibrium() {
        let s = state(vec![0.0, 0.5, 1.0, 0.5, 0.0]);
        let sigma = -std::f64::consts::FRAC_PI_4.cos();
        let (a, b) = boundary_update_second(&s, &s, &FlatSurface, sigma, sigma, 0.3).unwrap();
        assert!(a.abs() < 1e-15 && (b - 2.0).abs() < 1e-15);
    }
}
