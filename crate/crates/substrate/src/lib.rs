//! Substrate profiles `w(x)`: flat, groove-textured and piecewise cubic
//! Bezier (the teapot cross-section).

pub mod bezier;
pub mod groove;

use capillary_core::{FlatSurface, Real, Result, Side, Surface};

pub use bezier::{
    bernstein, bezier_eval, bezier_inverse, teapot_profile, BezierProfile, CubicBezierSegment, InverseMode,
};
pub use groove::{groove_eval, Groove};

/// Any of the supported substrates.
#[derive(Debug, Clone, PartialEq)]
pub enum SubstrateProfile<T> {
    Flat,
    Groove(Groove<T>),
    Bezier(BezierProfile<T>),
}

impl<T: Real> SubstrateProfile<T> {
    pub fn groove(amplitude: T, wavenumber: T) -> Self {
        Self::Groove(Groove { amplitude, wavenumber })
    }

    pub fn teapot() -> Result<Self> {
        Ok(Self::Bezier(teapot_profile(InverseMode::Newton)?))
    }
}

impl<T: Real> Surface<T> for SubstrateProfile<T> {
    fn height(&self, x: T) -> Result<T> {
        match self {
            Self::Flat => FlatSurface.height(x),
            Self::Groove(g) => g.height(x),
            Self::Bezier(b) => b.height(x),
        }
    }

    fn slope(&self, x: T, side: Side) -> Result<T> {
        match self {
            Self::Flat => FlatSurface.slope(x, side),
            Self::Groove(g) => g.slope(x, side),
            Self::Bezier(b) => b.slope(x, side),
        }
    }

    fn domain(&self) -> (T, T) {
        match self {
            Self::Flat => <FlatSurface as Surface<T>>::domain(&FlatSurface),
            Self::Groove(g) => g.domain(),
            Self::Bezier(b) => b.domain(),
        }
    }

    fn is_flat(&self) -> bool {
        match self {
            Self::Flat => true,
            Self::Groove(g) => g.is_flat(),
            Self::Bezier(_) => false,
        }
    }
}

pub type SubstrateProfile64 = SubstrateProfile<f64>;
pub type BezierProfile64 = BezierProfile<f64>;
