use crate::error::{Error, Result};
use crate::real::Real;
use crate::surface::Surface;

/// Snapshot of the droplet on its moving grid `x_j = a + j tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct DropletState<T> {
    pub a: T,
    pub b: T,
    /// Node heights `h_0..=h_N` of `h = u + w`.
    pub heights: Vec<T>,
    /// Lagrange multiplier of the last solve (NaN before the first step).
    pub lambda: T,
    pub time: T,
}

impl<T: Real> DropletState<T> {
    pub fn new(a: T, b: T, heights: Vec<T>, lambda: T, time: T) -> Result<Self> {
        if !(a < b) {
            return Err(Error::Collapse { a: a.as_f64(), b: b.as_f64() });
        }
        if heights.len() < 3 {
            return Err(Error::Dimension(format!("need at least 3 nodes, got {}", heights.len())));
        }
        if heights.iter().any(|h| !h.is_finite()) {
            return Err(Error::InvalidInput("non-finite height".into()));
        }
        Ok(Self { a, b, heights, lambda, time })
    }

    /// Samples `h = u + w` with the endpoint values pinned to `w(a)`, `w(b)`.
    pub fn from_profile<S, F>(a: T, b: T, n: usize, surface: &S, u: F) -> Result<Self>
    where
        S: Surface<T> + ?Sized,
        F: Fn(T) -> T,
    {
        if n < 2 {
            return Err(Error::Dimension(format!("need N >= 2, got {n}")));
        }
        let tau = (b - a) / T::from_count(n);
        let mut heights = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let x = a + T::from_count(j) * tau;
            let w = surface.height(x)?;
            heights.push(if j == 0 || j == n { w } else { u(x) + w });
        }
        Self::new(a, b, heights, T::nan(), T::zero())
    }

    /// Number of grid intervals `N`.
    pub fn n(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn tau(&self) -> T {
        (self.b - self.a) / T::from_count(self.n())
    }

    pub fn x(&self, j: usize) -> T {
        if j == self.n() {
            self.b
        } else {
            self.a + T::from_count(j) * self.tau()
        }
    }

    pub fn nodes(&self) -> Vec<T> {
        grid_nodes(self.a, self.b, self.n())
    }

    /// Substrate heights `w(x_j)` on the state's grid.
    pub fn substrate_heights<S: Surface<T> + ?Sized>(&self, surface: &S) -> Result<Vec<T>> {
        self.nodes().into_iter().map(|x| surface.height(x)).collect()
    }
}

/// Equispaced nodes `a + j (b - a) / n`, `j = 0..=n`.
pub fn grid_nodes<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    let tau = (b - a) / T::from_count(n);
    (0..=n).map(|j| if j == n { b } else { a + T::from_count(j) * tau }).collect()
}

/// Contact and substrate angles at both contact points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleReadout<T> {
    pub theta_a: T,
    pub theta_b: T,
    pub theta_0a: T,
    pub theta_0b: T,
}
