//! Damped Newton solver for the implicit, volume-constrained elliptic step
//!
//! ```text
//! beta (h - h*) / dt * [w mob(h) + (1 - w) M]
//!     = w [curv(h) - kappa (h cos t0 + x sin t0)] + (1 - w) E + lambda
//! sum_{j=1}^{N-1} (h_j - w_j) tau = V
//! ```
//!
//! where `mob = (1 + h_x^2)^{-1/2}`, `curv = h_xx (1 + h_x^2)^{-3/2}` and
//! `M`, `E` are lagged nodal values. With `w = 1` this is the fully implicit
//! predictor; with `w = 1/2` it is the Crank-Nicolson corrector.

use capillary_core::{DropletState, Error, Real, Result};

use crate::bordered::{solve_bordered_tridiag, BorderedTridiag};

/// Lagged interior values (length `N - 1`) for the averaged scheme.
#[derive(Debug, Clone, Copy)]
pub struct Lagged<'a, T> {
    /// `(1 + h_x^2)^{-1/2}` of the previous profile.
    pub mobility: &'a [T],
    /// `curv - kappa (h cos t0 + x sin t0)` of the previous profile.
    pub operator: &'a [T],
}

/// Fixed data of one implicit solve on the grid `[a, b]`.
#[derive(Debug, Clone, Copy)]
pub struct EllipticProblem<'a, T> {
    pub a: T,
    pub b: T,
    /// Substrate heights at the `N + 1` nodes.
    pub w: &'a [T],
    /// Transported profile `h*` at the `N + 1` nodes.
    pub h_star: &'a [T],
    pub beta: T,
    pub dt: T,
    pub kappa: T,
    pub theta0: T,
    pub volume: T,
    /// Weight of the implicit part (1 or 1/2).
    pub weight: T,
    pub lagged: Option<Lagged<'a, T>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions<T> {
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for NewtonOptions<T> {
    fn default() -> Self {
        Self { tol: T::lit(1e-12), max_iter: 50 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport<T> {
    pub iterations: usize,
    pub residual: T,
    /// Residual norm before each iteration and after the last one.
    pub history: Vec<T>,
}

impl<'a, T: Real> EllipticProblem<'a, T> {
    fn n(&self) -> usize {
        self.w.len() - 1
    }

    fn tau(&self) -> T {
        (self.b - self.a) / T::from_count(self.n())
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        if n < 2 {
            return Err(Error::Dimension(format!("need N >= 2, got {n}")));
        }
        if self.h_star.len() != n + 1 {
            return Err(Error::Dimension(format!("h* has {} nodes, expected {}", self.h_star.len(), n + 1)));
        }
        if !(self.a < self.b) {
            return Err(Error::Collapse { a: self.a.as_f64(), b: self.b.as_f64() });
        }
        if self.beta > T::zero() && !(self.dt > T::zero()) {
            return Err(Error::InvalidInput("time step must be positive".into()));
        }
        match self.lagged {
            Some(l) if l.mobility.len() != n - 1 || l.operator.len() != n - 1 => {
                Err(Error::Dimension("lagged data must hold N - 1 interior values".into()))
            }
            None if self.weight != T::one() => Err(Error::InvalidInput("weight < 1 needs lagged data".into())),
            _ => Ok(()),
        }
    }

    fn time_coefficient(&self) -> T {
        if self.beta == T::zero() {
            T::zero()
        } else {
            self.beta / self.dt
        }
    }

    /// Residual scaled by `tau^2` on interior rows, followed by the volume row.
    pub fn residual(&self, h: &[T], lambda: T) -> Vec<T> {
        let n = self.n();
        let tau = self.tau();
        let tau2 = tau * tau;
        let half = T::lit(0.5);
        let c = self.time_coefficient();
        let om = self.weight;
        let (sin0, cos0) = self.theta0.sin_cos();
        let mut r = Vec::with_capacity(n);
        let mut vol = T::zero();
        for j in 1..n {
            let x = self.a + T::from_count(j) * tau;
            let dh = h[j + 1] - h[j - 1];
            let s = dh * half / tau;
            let q = T::one() + s * s;
            let q32 = q * q.sqrt();
            let d2 = h[j + 1] - T::lit(2.0) * h[j] + h[j - 1];
            let (mob_lag, op_lag) = match self.lagged {
                Some(l) => (l.mobility[j - 1], l.operator[j - 1]),
                None => (T::zero(), T::zero()),
            };
            let mob = om / q.sqrt() + (T::one() - om) * mob_lag;
            let time = c * tau2 * (h[j] - self.h_star[j]) * mob;
            let elliptic = d2 / q32 - tau2 * self.kappa * (h[j] * cos0 + x * sin0);
            r.push(time - om * elliptic - tau2 * ((T::one() - om) * op_lag + lambda));
            vol += h[j] - self.w[j];
        }
        r.push(vol * tau - self.volume);
        r
    }

    /// Newton matrix of [`Self::residual`] with right-hand side `-residual`.
    fn jacobian(&self, h: &[T], residual: &[T]) -> BorderedTridiag<T> {
        let n = self.n();
        let m = n - 1;
        let tau = self.tau();
        let tau2 = tau * tau;
        let half = T::lit(0.5);
        let c = self.time_coefficient();
        let om = self.weight;
        let cos0 = self.theta0.cos();
        let mut sub = Vec::with_capacity(m.saturating_sub(1));
        let mut sup = Vec::with_capacity(m.saturating_sub(1));
        let mut diag = Vec::with_capacity(m);
        for j in 1..n {
            let s = (h[j + 1] - h[j - 1]) * half / tau;
            let q = T::one() + s * s;
            let rq = q.sqrt();
            let q32 = q * rq;
            let d2 = (h[j + 1] - T::lit(2.0) * h[j] + h[j - 1]) / tau2;
            let mob_lag = self.lagged.map_or(T::zero(), |l| l.mobility[j - 1]);
            let dmob_ds = -s / q32;
            let dcurv_ds = T::lit(-3.0) * d2 * s / (q32 * q);
            diag.push(c * tau2 * (om / rq + (T::one() - om) * mob_lag) + om * (T::lit(2.0) / q32 + tau2 * self.kappa * cos0));
            let skew = half * tau * om * (c * (h[j] - self.h_star[j]) * dmob_ds - dcurv_ds);
            let base = -om / q32;
            if j > 1 {
                sub.push(base - skew);
            }
            if j + 1 < n {
                sup.push(base + skew);
            }
        }
        BorderedTridiag {
            sub,
            diag,
            sup,
            col: vec![-tau2; m],
            row: vec![tau; m],
            rhs: residual.iter().map(|r| -*r).collect(),
        }
    }
}

fn max_norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, x| if x.is_nan() { T::nan() } else { acc.max(x.abs()) })
}

fn sum_squares<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, x| acc + *x * *x)
}

/// Solves the implicit elliptic problem starting from `initial`.
///
/// The interior heights and `lambda` of `initial` are the first guess; the
/// returned state lives on `[problem.a, problem.b]` with `h_0 = w_0` and
/// `h_N = w_N`. A NaN `lambda` starts from zero.
pub fn newton_elliptic<T: Real>(
    initial: &DropletState<T>,
    problem: &EllipticProblem<'_, T>,
    opts: &NewtonOptions<T>,
) -> Result<(DropletState<T>, NewtonReport<T>)> {
    problem.validate()?;
    let n = problem.n();
    if initial.heights.len() != n + 1 {
        return Err(Error::Dimension(format!("initial guess has {} nodes, expected {}", initial.heights.len(), n + 1)));
    }
    let mut h = initial.heights.clone();
    h[0] = problem.w[0];
    h[n] = problem.w[n];
    let mut lambda = if initial.lambda.is_finite() { initial.lambda } else { T::zero() };
    let mut r = problem.residual(&h, lambda);
    let mut norm = max_norm(&r);
    let mut merit = sum_squares(&r);
    let mut history = vec![norm];
    let mut iterations = 0;
    while !(norm <= opts.tol) {
        if !norm.is_finite() {
            return Err(Error::Blowup(format!("non-finite Newton residual after {iterations} iterations")));
        }
        if iterations == opts.max_iter {
            return Err(Error::NonConvergence { iterations, residual: norm.as_f64() });
        }
        let (dh, dl) = solve_bordered_tridiag(&problem.jacobian(&h, &r))?;
        let mut step = T::one();
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial = h.clone();
            for (t, d) in trial[1..n].iter_mut().zip(&dh) {
                *t += step * *d;
            }
            let trial_lambda = lambda + step * dl;
            let trial_r = problem.residual(&trial, trial_lambda);
            let trial_merit = sum_squares(&trial_r);
            if trial_merit < merit {
                h = trial;
                lambda = trial_lambda;
                norm = max_norm(&trial_r);
                merit = trial_merit;
                r = trial_r;
                accepted = true;
                break;
            }
            step *= T::lit(0.5);
        }
        iterations += 1;
        history.push(norm);
        if !accepted {
            return Err(Error::NonConvergence { iterations, residual: norm.as_f64() });
        }
    }
    let state = DropletState { a: problem.a, b: problem.b, heights: h, lambda, time: initial.time };
    Ok((state, NewtonReport { iterations, residual: norm, history }))
}
