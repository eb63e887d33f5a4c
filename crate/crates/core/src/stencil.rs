//! Finite-difference stencils on an equispaced grid of `N + 1` nodes.

use crate::error::{Error, Result};
use crate::real::Real;

/// Endpoint of the wetted interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

/// Second-order one-sided first derivative at an endpoint.
pub fn one_sided_slope<T: Real>(h: &[T], tau: T, end: End) -> Result<T> {
    if h.len() < 3 {
        return Err(Error::Dimension(format!("one-sided stencil needs 3 nodes, got {}", h.len())));
    }
    if !(tau > T::zero()) {
        return Err(Error::InvalidInput(format!("grid spacing {tau} must be positive")));
    }
    Ok(one_sided_unchecked(h, tau, end))
}

#[inline]
pub(crate) fn one_sided_unchecked<T: Real>(h: &[T], tau: T, end: End) -> T {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    match end {
        End::Left => (four * h[1] - h[2] - three * h[0]) / (two * tau),
        End::Right => {
            let n = h.len() - 1;
            (-four * h[n - 1] + h[n - 2] + three * h[n]) / (two * tau)
        }
    }
}

/// Centered first and second differences at interior node `j`.
pub fn interior_derivatives<T: Real>(h: &[T], tau: T, j: usize) -> Result<(T, T)> {
    if h.len() < 3 {
        return Err(Error::Dimension(format!("interior stencil needs 3 nodes, got {}", h.len())));
    }
    let n = h.len() - 1;
    if j == 0 || j >= n {
        return Err(Error::Index { index: j, max: n - 1 });
    }
    let first = (h[j + 1] - h[j - 1]) / (T::lit(2.0) * tau);
    let second = (h[j + 1] - T::lit(2.0) * h[j] + h[j - 1]) / (tau * tau);
    Ok((first, second))
}

/// First derivative at every node: centered inside, one-sided at both ends.
pub fn nodal_slopes<T: Real>(h: &[T], tau: T) -> Result<Vec<T>> {
    let s0 = one_sided_slope(h, tau, End::Left)?;
    let n = h.len() - 1;
    let half = T::lit(0.5) / tau;
    let mut s = Vec::with_capacity(n + 1);
    s.push(s0);
    s.extend((1..n).map(|j| (h[j + 1] - h[j - 1]) * half));
    s.push(one_sided_unchecked(h, tau, End::Right));
    Ok(s)
}

/// Curvature `h_xx / (1 + h_x^2)^{3/2}` at interior nodes `1..N`.
pub fn interior_curvature<T: Real>(h: &[T], tau: T) -> Vec<T> {
    let n = h.len() - 1;
    let half = T::lit(0.5) / tau;
    let inv2 = T::one() / (tau * tau);
    (1..n)
        .map(|j| {
            let s = (h[j + 1] - h[j - 1]) * half;
            let d2 = (h[j + 1] - T::lit(2.0) * h[j] + h[j - 1]) * inv2;
            let q = T::one() + s * s;
            d2 / (q * q.sqrt())
        })
        .collect()
}
