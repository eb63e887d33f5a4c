use capillary_core::{
    grid_nodes, interior_curvature, nodal_slopes, Coefficients, DropletState, Error, PhysicalParams, Real, Result, Surface,
};
use capillary_linsolve::{newton_elliptic, solve_bordered_tridiag, BorderedTridiag, EllipticProblem, Lagged};

use crate::boundary::{boundary_update_first, boundary_update_second};
use crate::config::{CorrectorMode, SchemeConfig};
use crate::first::{alpha_from, frozen_solve, rate};
use crate::rescale::{rescale_first, rescale_second};

/// Lagged mobility and operator of the old profile at interior nodes.
fn lagged_terms<T: Real>(state: &DropletState<T>, p: &PhysicalParams<T>) -> Result<(Vec<T>, Vec<T>)> {
    let n = state.n();
    let tau = state.tau();
    let slopes = nodal_slopes(&state.heights, tau)?;
    let curv = interior_curvature(&state.heights, tau);
    let (sin0, cos0) = p.theta0.sin_cos();
    let mobility = (1..n).map(|j| T::one() / (T::one() + slopes[j] * slopes[j]).sqrt()).collect();
    let operator = (1..n)
        .map(|j| curv[j - 1] - p.kappa * (state.heights[j] * cos0 + state.x(j) * sin0))
        .collect();
    Ok((mobility, operator))
}

/// Single linear solve of the averaged step with `alpha` frozen at the predictor.
#[allow(clippy::too_many_arguments)]
fn picard_solve<T: Real>(
    a: T,
    b: T,
    w: &[T],
    h_star: &[T],
    alpha: &[T],
    c: T,
    p: &PhysicalParams<T>,
    weight: T,
    mobility: &[T],
    operator: &[T],
) -> Result<(Vec<T>, T)> {
    let n = w.len() - 1;
    let m = n - 1;
    let tau = (b - a) / T::from_count(n);
    let tau2 = tau * tau;
    let (sin0, cos0) = p.theta0.sin_cos();
    let lag = T::one() - weight;
    let mut sub = Vec::with_capacity(m - 1);
    let mut sup = Vec::with_capacity(m - 1);
    let mut diag = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m + 1);
    for j in 1..n {
        let al = alpha[j - 1];
        let al32 = al * al.sqrt();
        let mob = weight / al.sqrt() + lag * mobility[j - 1];
        let off = -weight / al32;
        let x = a + T::from_count(j) * tau;
        diag.push(c * tau2 * mob + weight * (T::lit(2.0) / al32 + tau2 * p.kappa * cos0));
        if j > 1 {
            sub.push(off);
        }
        if j + 1 < n {
            sup.push(off);
        }
        let mut r = c * tau2 * h_star[j] * mob - weight * tau2 * p.kappa * x * sin0 + tau2 * lag * operator[j - 1];
        if j == 1 {
            r -= off * w[0];
        }
        if j + 1 == n {
            r -= off * w[n];
        }
        rhs.push(r);
    }
    let wsum = w[1..n].iter().fold(T::zero(), |s, v| s + *v);
    rhs.push(wsum + p.volume / tau);
    let sys = BorderedTridiag { sub, diag, sup, col: vec![-tau2; m], row: vec![T::one(); m], rhs };
    let (y, lambda) = solve_bordered_tridiag(&sys)?;
    let mut h = Vec::with_capacity(n + 1);
    h.push(w[0]);
    h.extend(y);
    h.push(w[n]);
    Ok((h, lambda))
}

/// One predictor-corrector step of the second-order scheme.
pub fn step_second<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    coeffs: &dyn Coefficients<T>,
    config: &SchemeConfig<T>,
    dt: T,
) -> Result<DropletState<T>> {
    step_second_counted(state, surface, coeffs, config, dt).map(|(s, _)| s)
}

/// As [`step_second`], also returning how many Newton solves fell back to
/// their linearised seed.
pub(crate) fn step_second_counted<T: Real, S: Surface<T> + ?Sized>(
    state: &DropletState<T>,
    surface: &S,
    coeffs: &dyn Coefficients<T>,
    config: &SchemeConfig<T>,
    dt: T,
) -> Result<(DropletState<T>, usize)> {
    let mut fallbacks = 0;
    let n = state.n();
    if n != config.n_grid {
        return Err(Error::Dimension(format!("state has N = {n}, config expects {}", config.n_grid)));
    }
    let t1 = state.time + dt;
    let p0 = coeffs.at(state.time);
    let p1 = coeffs.at(t1);
    p0.validate_for_stepping()?;
    p1.validate_for_stepping()?;

    let (a_pred, b_pred) = boundary_update_first(state, surface, p0.sigma, dt)?;
    let h_star = rescale_first(state, a_pred, b_pred)?;
    let w_pred = grid_nodes(a_pred, b_pred, n).into_iter().map(|x| surface.height(x)).collect::<Result<Vec<T>>>()?;
    let c1 = rate(p1.beta, dt);
    let alpha = alpha_from(&state.heights, state.tau())?;
    let (linear, lambda) =
        frozen_solve(a_pred, b_pred, &w_pred, &h_star, &alpha, c1, p1.kappa, p1.theta0, p1.volume)?;
    let guess = DropletState { a: a_pred, b: b_pred, heights: h_star, lambda: state.lambda, time: t1 };
    let predictor_problem = EllipticProblem {
        a: a_pred,
        b: b_pred,
        w: &w_pred,
        h_star: &guess.heights,
        beta: p1.beta,
        dt,
        kappa: p1.kappa,
        theta0: p1.theta0,
        volume: p1.volume,
        weight: T::one(),
        lagged: None,
    };
    let start = DropletState { heights: linear, lambda, ..guess.clone() };
    let predictor = match newton_elliptic(&start, &predictor_problem, &config.newton)
        .or_else(|_| newton_elliptic(&guess, &predictor_problem, &config.newton))
    {
        Ok((s, _)) => s,
        Err(_) if config.newton_fallback => {
            fallbacks += 1;
            start
        }
        Err(e) => return Err(e),
    };

    let (a1, b1) = boundary_update_second(state, &predictor, surface, p0.sigma, p1.sigma, dt)?;
    let h_star = rescale_second(state, &predictor, a1, b1)?;
    let target = DropletState { a: a1, b: b1, heights: h_star, lambda: predictor.lambda, time: t1 };
    let w = target.substrate_heights(surface)?;
    let (weight, lag) = if p1.beta > T::zero() {
        let (mob, op) = lagged_terms(state, &p0)?;
        (T::lit(0.5), Some((mob, op)))
    } else {
        (T::one(), None)
    };

    let alpha = alpha_from(&predictor.heights, predictor.tau())?;
    let (picard_h, picard_lambda) = match &lag {
        Some((mob, op)) => picard_solve(a1, b1, &w, &target.heights, &alpha, c1, &p1, weight, mob, op)?,
        None => frozen_solve(a1, b1, &w, &target.heights, &alpha, c1, p1.kappa, p1.theta0, p1.volume)?,
    };
    let (heights, lambda) = match config.corrector {
        CorrectorMode::Picard => (picard_h, picard_lambda),
        CorrectorMode::Newton => {
            let problem = EllipticProblem {
                a: a1,
                b: b1,
                w: &w,
                h_star: &target.heights,
                beta: p1.beta,
                dt,
                kappa: p1.kappa,
                theta0: p1.theta0,
                volume: p1.volume,
                weight,
                lagged: lag.as_ref().map(|(mobility, operator)| Lagged { mobility, operator }),
            };
            let seeds = [(picard_h.clone(), picard_lambda), (target.heights.clone(), predictor.lambda)];
            let mut outcome = Err(Error::InvalidInput("no corrector seed".into()));
            for (heights, lambda) in seeds {
                let initial = DropletState { heights, lambda, ..target.clone() };
                outcome = newton_elliptic(&initial, &problem, &config.newton);
                if outcome.is_ok() {
                    break;
                }
            }
            match outcome {
                Ok((s, _)) => (s.heights, s.lambda),
                Err(_) if config.newton_fallback => {
                    fallbacks += 1;
                    (picard_h, picard_lambda)
                }
                Err(e) => return Err(e),
            }
        }
    };
    if heights.iter().any(|h| !h.is_finite()) || !lambda.is_finite() {
        return Err(Error::Blowup("non-finite heights after second-order solve".into()));
    }
    Ok((DropletState { heights, lambda, ..target }, fallbacks))
}
