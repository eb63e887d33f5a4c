use capillary_core::{nodal_slopes, Coefficients, DropletState, Error, Real, Result, Surface};
use capillary_linsolve::{solve_bordered_tridiag, BorderedTridiag};

use crate::boundary::boundary_update_first;
use crate::config::{SchemeConfig, SlopeSource};
use crate::rescale::rescale_first;

/// Linearly implicit solve on `[a, b]` with `alpha_j = 1 + s_j^2` frozen.
///
/// `alpha` holds the `N - 1` interior values; `w` and `h_star` hold all
/// `N + 1` nodes. Returns the new heights and the multiplier.
#[allow(clippy::too_many_arguments)]
pub(crate) fn frozen_solve<T: Real>(
    a: T,
    b: T,
    w: &[T],
    h_star: &[T],
    alpha: &[T],
    beta_over_dt: T,
    kappa: T,
    theta0: T,
    volume: T,
) -> Result<(Vec<T>, T)> {
    let n = w.len() - 1;
    let m = n - 1;
    let tau = (b - a) / T::from_count(n);
    let tau2 = tau * tau;
    let (sin0, cos0) = theta0.sin_cos();
    let mut diag = Vec::with_capacity(m);
    let mut col = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m + 1);
    for j in 1..n {
        let al = alpha[j - 1];
        let al32 = al * al.sqrt();
        let x = a + T::from_count(j) * tau;
        diag.push(T::lit(2.0) + beta_over_dt * tau2 * al + kappa * cos0 * tau2 * al32);
        col.push(al32);
        rhs.push(beta_over_dt * tau2 * h_star[j] * al - kappa * sin0 * x * tau2 * al32);
    }
    rhs[0] += w[0];
    rhs[m - 1] += w[n];
    let wsum = w[1..n].iter().fold(T::zero(), |s, v| s + *v);
    rhs.push(wsum + volume / tau);
    let sys = BorderedTridiag {
        sub: vec![-T::one(); m - 1],
        diag,
        sup: vec![-T::one(); m - 1],
        col,
        row: vec![T::one(); m],
        rhs,
    };
    let (y, mu) = solve_bordered_tridiag(&sys)?;
    let mut h = Vec::with_capacity(n + 1);
    h.push(w[0]);
    h.extend(y);
    h.push(w[n]);
    Ok((h, -mu / tau2))
}

pub(crate) fn alpha_from<T: Real>(h: &[T], tau: T) -> Result<Vec<T>> {
    let s = nodal_slopes(h, tau)?;
    Ok(s[1..h.len() - 1].iter().map(|s| T::one() + *s * *s).collect())
}

pub(crate) fn rate<T: Real>(beta: T, dt: T) -> T {
    if beta == T::zero() {
        T::zero()
    } else {
        beta / dt
    }
}

/// One step of the first-order scheme with coefficients taken at the old time.
pub fn step_first<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    coeffs: &dyn Coefficients<T>,
    config: &SchemeConfig<T>,
    dt: T,
) -> Result<DropletState<T>> {
    let p = coeffs.at(state.time);
    p.validate_for_stepping()?;
    let n = state.n();
    if n != config.n_grid {
        return Err(Error::Dimension(format!("state has N = {n}, config expects {}", config.n_grid)));
    }
    let (a1, b1) = boundary_update_first(state, surface, p.sigma, dt)?;
    let h_star = rescale_first(state, a1, b1)?;
    let tau1 = (b1 - a1) / T::from_count(n);
    let alpha = match config.slope_source {
        SlopeSource::Previous => alpha_from(&state.heights, state.tau())?,
        SlopeSource::Rescaled => alpha_from(&h_star, tau1)?,
    };
    let next = DropletState { a: a1, b: b1, heights: h_star, lambda: T::nan(), time: state.time + dt };
    let w = next.substrate_heights(surface)?;
    let (heights, lambda) =
        frozen_solve(a1, b1, &w, &next.heights, &alpha, rate(p.beta, dt), p.kappa, p.theta0, p.volume)?;
    if heights.iter().any(|h| !h.is_finite()) || !lambda.is_finite() {
        return Err(Error::Blowup("non-finite heights after first-order solve".into()));
    }
    Ok(DropletState { heights, lambda, ..next })
}
