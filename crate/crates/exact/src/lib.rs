//! Closed-form references: circular and spherical caps, and a breathing
//! droplet whose contact angle oscillates under time-dependent coefficients.

use capillary_core::{grid_nodes, Coefficients, DropletState, Error, PhysicalParams, Real, Result};

fn check_angle<T: Real>(theta: T) -> Result<()> {
    if !(theta > T::zero() && theta < T::PI()) {
        return Err(Error::Domain(format!("cap angle {theta} outside (0, pi)")));
    }
    Ok(())
}

/// Area-to-half-width ratio `V / b^2` of a circular cap with contact angle `theta`.
pub fn cap_volume_2d<T: Real>(theta: T) -> Result<T> {
    check_angle(theta)?;
    let s = theta.sin();
    Ok(theta / (s * s) - theta.cos() / s)
}

/// Volume ratio `V / b^3` of a spherical cap with contact angle `theta`.
pub fn cap_volume_3d<T: Real>(theta: T) -> Result<T> {
    check_angle(theta)?;
    let (s, c) = theta.sin_cos();
    let h = (theta * T::lit(0.5)).sin();
    let one_minus_c = T::lit(2.0) * h * h;
    Ok(T::PI() / T::lit(3.0) * one_minus_c * one_minus_c * (T::lit(2.0) + c) / (s * s * s))
}

/// Droplet with contact angle `theta_in + amplitude sin t` on flat ground.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreathingSpec<T> {
    pub theta_in: T,
    pub amplitude: T,
    pub beta: T,
    /// Half-width at `t = 0`; fixes the volume.
    pub b0: T,
}

impl<T: Real> BreathingSpec<T> {
    pub fn new(theta_in: T, amplitude: T, beta: T, b0: T) -> Result<Self> {
        let lo = theta_in - amplitude.abs();
        let hi = theta_in + amplitude.abs();
        if !(lo > T::zero() && hi < T::FRAC_PI_2()) {
            return Err(Error::InvalidInput(format!("angle range [{lo}, {hi}] leaves (0, pi/2)")));
        }
        if !(b0 > T::zero()) || beta < T::zero() {
            return Err(Error::InvalidInput(format!("need b0 > 0 and beta >= 0, got {b0}, {beta}")));
        }
        Ok(Self { theta_in, amplitude, beta, b0 })
    }

    pub fn volume(&self) -> T {
        self.b0 * self.b0 * cap_volume_2d(self.theta_in).unwrap_or(T::nan())
    }

    pub fn theta(&self, t: T) -> T {
        self.theta_in + self.amplitude * t.sin()
    }

    pub fn theta_rate(&self, t: T) -> T {
        self.amplitude * t.cos()
    }

    /// Half-width `b(t) = sin(theta) sqrt(2V / (2 theta - sin 2 theta))`.
    pub fn half_width(&self, t: T) -> T {
        let th = self.theta(t);
        let two = T::lit(2.0);
        th.sin() * (two * self.volume() / (two * th - (two * th).sin())).sqrt()
    }

    /// Cap height `-R cos(theta) + sqrt(R^2 - x^2)` at time `t`.
    pub fn height(&self, x: T, t: T) -> T {
        let th = self.theta(t);
        let r = self.half_width(t) / th.sin();
        -r * th.cos() + (r * r - x * x).max(T::zero()).sqrt()
    }
}

/// Exact cap on `[-b(t), b(t)]` sampled on `n_grid + 1` nodes.
pub fn breathing_state<T: Real>(spec: &BreathingSpec<T>, t: T, n_grid: usize) -> Result<DropletState<T>> {
    let b = spec.half_width(t);
    let mut heights: Vec<T> = grid_nodes(-b, b, n_grid).into_iter().map(|x| spec.height(x, t)).collect();
    let last = heights.len() - 1;
    heights[0] = T::zero();
    heights[last] = T::zero();
    DropletState::new(-b, b, heights, breathing_params(spec, t).1, t)
}

/// `(kappa, lambda, sigma)` that make the breathing cap an exact solution.
pub fn breathing_params<T: Real>(spec: &BreathingSpec<T>, t: T) -> (T, T, T) {
    let th = spec.theta(t);
    let dth = spec.theta_rate(t);
    let (s, c) = th.sin_cos();
    let b = spec.half_width(t);
    let v = spec.volume();
    let bb_v = b * b / v;
    let kappa = -spec.beta * dth * (bb_v * c + s);
    let lambda = spec.beta * b * dth * (-bb_v * s + c) + s / b;
    let sigma = b * dth * (bb_v - c / s) - c;
    (kappa, lambda, sigma)
}

/// Time-dependent coefficients of the breathing run on a flat substrate.
#[derive(Debug, Clone, Copy)]
pub struct BreathingCoefficients<T> {
    pub spec: BreathingSpec<T>,
}

impl<T: Real> Coefficients<T> for BreathingCoefficients<T> {
    fn at(&self, t: T) -> PhysicalParams<T> {
        let (kappa, _, sigma) = breathing_params(&self.spec, t);
        PhysicalParams { beta: self.spec.beta, kappa, sigma, theta0: T::zero(), volume: self.spec.volume() }
    }
}

pub type BreathingSpec64 = BreathingSpec<f64>;
pub type BreathingCoefficients64 = BreathingCoefficients<f64>;
