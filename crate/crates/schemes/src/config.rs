use capillary_core::{Error, Real, Result};
use capillary_linsolve::NewtonOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    #[default]
    First,
    Second,
}

/// Profile whose slopes set `alpha_j = 1 + h_x^2` in the first-order solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SlopeSource {
    /// Slopes of `h^n` on the old grid.
    #[default]
    Previous,
    /// Slopes of the transported profile `h^{n*}` on the new grid.
    Rescaled,
}

/// How the second-order corrector handles its nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorrectorMode {
    #[default]
    Newton,
    /// One linear solve with coefficients frozen at the predictor.
    Picard,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig<T> {
    pub dt: T,
    pub n_grid: usize,
    pub order: Order,
    pub slope_source: SlopeSource,
    pub corrector: CorrectorMode,
    pub final_time: T,
    /// Time between stored full profiles; `None` keeps only the first and last.
    pub snapshot_every: Option<T>,
    pub newton: NewtonOptions<T>,
    /// Accept the linearised predictor or corrector when every Newton seed fails.
    pub newton_fallback: bool,
    /// Check the flat-substrate endpoint bounds after every step.
    pub check_bounds: bool,
    /// Reject profiles dipping below the substrate by more than `1e-8`.
    pub check_heights: bool,
}

impl<T: Real> SchemeConfig<T> {
    pub fn new(order: Order, dt: T, n_grid: usize, final_time: T) -> Self {
        Self {
            dt,
            n_grid,
            order,
            slope_source: SlopeSource::Previous,
            corrector: CorrectorMode::Newton,
            final_time,
            snapshot_every: None,
            newton: NewtonOptions::default(),
            newton_fallback: true,
            check_bounds: true,
            check_heights: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(Error::InvalidInput(format!("dt = {} must be positive", self.dt)));
        }
        if !(self.final_time >= T::zero()) || !self.final_time.is_finite() {
            return Err(Error::InvalidInput(format!("final time {} must be non-negative", self.final_time)));
        }
        if self.n_grid < 4 {
            return Err(Error::InvalidInput(format!("n_grid = {} must be at least 4", self.n_grid)));
        }
        if let Some(c) = self.snapshot_every {
            if !(c > T::zero()) {
                return Err(Error::InvalidInput("snapshot cadence must be positive".into()));
            }
        }
        Ok(())
    }

    /// Number of steps, `ceil(T / dt)` up to rounding noise.
    pub fn n_steps(&self) -> usize {
        let ratio = (self.final_time / self.dt).as_f64();
        (ratio - 1e-9).ceil().max(0.0) as usize
    }

    /// Step actually taken so that `n_steps * dt` lands on the final time.
    pub fn effective_dt(&self) -> T {
        match self.n_steps() {
            0 => self.dt,
            n => self.final_time / T::from_count(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_count_rounding() {
        let c = SchemeConfig::new(Order::First, 0.1, 10, 1.0);
        assert_eq!(c.n_steps(), 10);
        let c = SchemeConfig::<f64>::new(Order::First, 0.3, 10, 1.0);
        assert_eq!(c.n_steps(), 4);
        assert!((c.effective_dt() - 0.25).abs() < 1e-15);
        let c = SchemeConfig::new(Order::First, 0.1, 10, 0.0);
        assert_eq!(c.n_steps(), 0);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(SchemeConfig::new(Order::First, 0.0, 10, 1.0).validate().is_err());
        assert!(SchemeConfig::new(Order::First, 0.1, 3, 1.0).validate().is_err());
        assert!(SchemeConfig::new(Order::First, 0.1, 10, -1.0).validate().is_err());
    }
}
