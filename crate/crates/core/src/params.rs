use crate::error::{Error, Result};
use crate::real::Real;

/// Dimensionless coefficients of the droplet problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams<T> {
    /// Capillary number (0 selects quasi-static dynamics).
    pub beta: T,
    /// Bond-type gravity coefficient, negative for pendant drops.
    pub kappa: T,
    /// Relative adhesion coefficient.
    pub sigma: T,
    /// Inclination of the substrate.
    pub theta0: T,
    /// Prescribed droplet volume.
    pub volume: T,
}

impl<T: Real> PhysicalParams<T> {
    pub fn new(beta: T, kappa: T, sigma: T, theta0: T, volume: T) -> Result<Self> {
        let p = Self { beta, kappa, sigma, theta0, volume };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_for_stepping()?;
        if self.sigma.abs() >= T::one() {
            return Err(Error::InvalidInput(format!("|sigma| = {} >= 1", self.sigma.abs())));
        }
        Ok(())
    }

    /// Checks everything except `|sigma| < 1`, which time-dependent
    /// coefficients may briefly violate without harming the schemes.
    pub fn validate_for_stepping(&self) -> Result<()> {
        let all = [self.beta, self.kappa, self.sigma, self.theta0, self.volume];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        if self.beta < T::zero() {
            return Err(Error::InvalidInput(format!("beta = {} < 0", self.beta)));
        }
        if self.theta0.abs() >= T::FRAC_PI_2() {
            return Err(Error::InvalidInput(format!("|theta0| = {} >= pi/2", self.theta0.abs())));
        }
        if self.volume <= T::zero() {
            return Err(Error::InvalidInput(format!("volume = {} <= 0", self.volume)));
        }
        Ok(())
    }

    /// Young's angle, `arccos(-sigma)`.
    pub fn young_angle(&self) -> T {
        (-self.sigma).acos()
    }

    /// Adhesion coefficient that makes `theta` the Young's angle.
    pub fn sigma_for_young(theta: T) -> T {
        -theta.cos()
    }
}

/// Coefficients that may depend on time.
pub trait Coefficients<T: Real>: Send + Sync {
    fn at(&self, t: T) -> PhysicalParams<T>;
}

impl<T: Real> Coefficients<T> for PhysicalParams<T> {
    fn at(&self, _t: T) -> PhysicalParams<T> {
        *self
    }
}
