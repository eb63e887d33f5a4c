use crate::error::{Error, Result};
use crate::real::Real;

/// Which one-sided derivative to report where the substrate has a corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    Left,
    Right,
    #[default]
    Average,
}

/// A substrate profile `w(x)` with its derivative.
pub trait Surface<T: Real>: Send + Sync {
    fn height(&self, x: T) -> Result<T>;

    fn slope(&self, x: T, side: Side) -> Result<T>;

    /// Interval on which the profile is defined.
    fn domain(&self) -> (T, T) {
        (T::neg_infinity(), T::infinity())
    }

    /// True when `w` is identically zero.
    fn is_flat(&self) -> bool {
        false
    }

    fn check_inside(&self, x: T) -> Result<()> {
        let (lo, hi) = self.domain();
        if !(x >= lo && x <= hi) {
            return Err(Error::DomainExit { x: x.as_f64(), lo: lo.as_f64(), hi: hi.as_f64() });
        }
        Ok(())
    }
}

/// The substrate `w = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FlatSurface;

impl<T: Real> Surface<T> for FlatSurface {
    fn height(&self, _x: T) -> Result<T> {
        Ok(T::zero())
    }

    fn slope(&self, _x: T, _side: Side) -> Result<T> {
        Ok(T::zero())
    }

    fn is_flat(&self) -> bool {
        true
    }
}

impl<T: Real, S: Surface<T> + ?Sized> Surface<T> for &S {
    fn height(&self, x: T) -> Result<T> {
        (**self).height(x)
    }
    fn slope(&self, x: T, side: Side) -> Result<T> {
        (**self).slope(x, side)
    }
    fn domain(&self) -> (T, T) {
        (**self).domain()
    }
    fn is_flat(&self) -> bool {
        (**self).is_flat()
    }
}
