use capillary_core::{volume_with, DropletState};
use capillary_linsolve::{newton_elliptic, EllipticProblem, Lagged, NewtonOptions};

struct Arc {
    n: usize,
    theta: f64,
}

impl Arc {
    fn radius(&self) -> f64 {
        1.0 / self.theta.sin()
    }

    fn volume(&self) -> f64 {
        let r = self.radius();
        r * r * (self.theta - self.theta.sin() * self.theta.cos())
    }

    fn exact(&self, x: f64) -> f64 {
        let r = self.radius();
        -r * self.theta.cos() + (r * r - x * x).max(0.0).sqrt()
    }

    /// Quasi-static, gravity-free problem on [-1, 1].
    fn solve(&self, initial: &DropletState<f64>) -> (DropletState<f64>, capillary_linsolve::NewtonReport<f64>) {
        let w = vec![0.0; self.n + 1];
        let hs = vec![0.0; self.n + 1];
        let p = EllipticProblem {
            a: -1.0,
            b: 1.0,
            w: &w,
            h_star: &hs,
            beta: 0.0,
            dt: 1.0,
            kappa: 0.0,
            theta0: 0.0,
            volume: self.volume(),
            weight: 1.0,
            lagged: None,
        };
        newton_elliptic(initial, &p, &NewtonOptions::default()).unwrap()
    }

    fn parabola_guess(&self) -> DropletState<f64> {
        let h = (0..=self.n)
            .map(|j| {
                let x = -1.0 + 2.0 * j as f64 / self.n as f64;
                0.5 * (1.0 - x * x)
            })
            .collect();
        DropletState::new(-1.0, 1.0, h, f64::NAN, 0.0).unwrap()
    }
}

#[test]
fn circular_arc_multiplier() {
    let theta = std::f64::consts::FRAC_PI_3;
    let mut errors = Vec::new();
    for n in [100, 200, 400] {
        let arc = Arc { n, theta };
        let (s, rep) = arc.solve(&arc.parabola_guess());
        assert!(rep.residual <= 1e-12);
        let err = (s.lambda - 1.0 / arc.radius()).abs();
        let profile = (0..=n).map(|j| (s.heights[j] - arc.exact(s.x(j))).abs()).fold(0.0, f64::max);
        assert!(profile < 2.0 / (n * n) as f64, "profile error {profile} at N = {n}");
        errors.push(err);
    }
    assert!(errors[2] < 5e-5, "lambda error {errors:?}");
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((1.8..2.3).contains(&order), "refinement order {order} from {errors:?}");
    }
}

#[test]
fn quadratic_convergence() {
    let arc = Arc { n: 200, theta: std::f64::consts::FRAC_PI_3 };
    let (_, rep) = arc.solve(&arc.parabola_guess());
    let h = &rep.history;
    assert!(rep.iterations <= 10, "{h:?}");
    for k in 0..h.len() - 1 {
        if h[k] < 1e-2 && h[k + 1] > 1e-14 {
            assert!(h[k + 1] / (h[k] * h[k]) < 1e4, "history {h:?}");
        }
    }
}

#[test]
fn fixed_point_needs_at_most_one_iteration() {
    let arc = Arc { n: 200, theta: std::f64::consts::FRAC_PI_3 };
    let (s, _) = arc.solve(&arc.parabola_guess());
    let (_, rep) = arc.solve(&s);
    assert!(rep.iterations <= 1);
}

#[test]
fn constraint_row_is_exact() {
    let arc = Arc { n: 300, theta: 1.1 };
    let (s, _) = arc.solve(&arc.parabola_guess());
    let v = volume_with(&s.heights, &vec![0.0; 301], s.tau());
    assert!((v - arc.volume()).abs() < 1e-11);
}

#[test]
fn near_flat_drop_has_nonnegative_multiplier() {
    let n = 200;
    let w = vec![0.0; n + 1];
    let hs = vec![0.0; n + 1];
    let p = EllipticProblem {
        a: 0.0,
        b: 2.0,
        w: &w,
        h_star: &hs,
        beta: 0.0,
        dt: 1.0,
        kappa: 4.0,
        theta0: 0.0,
        volume: 1e-3,
        weight: 1.0,
        lagged: None,
    };
    let init = DropletState::new(0.0, 2.0, vec![0.0; n + 1], f64::NAN, 0.0).unwrap();
    let (s, _) = newton_elliptic(&init, &p, &NewtonOptions::default()).unwrap();
    assert!(s.lambda >= 0.0);
    assert!(s.heights.iter().all(|h| *h >= -1e-14));
}

#[test]
fn dynamic_and_averaged_problems_converge() {
    let n = 120;
    let x: Vec<f64> = (0..=n).map(|j| -1.0 + 2.0 * j as f64 / n as f64).collect();
    let w: Vec<f64> = x.iter().map(|x| 0.05 * (3.0 * x).sin()).collect();
    let h0: Vec<f64> = x.iter().zip(&w).map(|(x, w)| w + 0.6 * (1.0 - x * x)).collect();
    let mob: Vec<f64> = (1..n).map(|j| 1.0 / (1.0 + ((h0[j + 1] - h0[j - 1]) * n as f64 / 4.0).powi(2)).sqrt()).collect();
    let op = vec![-0.3; n - 1];
    let volume = volume_with(&h0, &w, 2.0 / n as f64);
    for (weight, lagged) in [(1.0, None), (0.5, Some(Lagged { mobility: &mob, operator: &op }))] {
        let p = EllipticProblem {
            a: -1.0,
            b: 1.0,
            w: &w,
            h_star: &h0,
            beta: 0.5,
            dt: 0.01,
            kappa: 0.7,
            theta0: 0.2,
            volume,
            weight,
            lagged,
        };
        let init = DropletState::new(-1.0, 1.0, h0.clone(), f64::NAN, 0.0).unwrap();
        let (s, rep) = newton_elliptic(&init, &p, &NewtonOptions::default()).unwrap();
        assert!(rep.residual <= 1e-12);
        assert_eq!(s.heights[0], w[0]);
        assert_eq!(s.heights[n], w[n]);
        let r = p.residual(&s.heights, s.lambda);
        assert!(r.iter().all(|v| v.abs() <= 1e-12));
    }
}

#[test]
fn iteration_cap_reports_non_convergence() {
    let arc = Arc { n: 100, theta: 1.0 };
    let w = vec![0.0; 101];
    let p = EllipticProblem {
        a: -1.0,
        b: 1.0,
        w: &w,
        h_star: &w,
        beta: 0.0,
        dt: 1.0,
        kappa: 0.0,
        theta0: 0.0,
        volume: arc.volume(),
        weight: 1.0,
        lagged: None,
    };
    let err = newton_elliptic(&arc.parabola_guess(), &p, &NewtonOptions { tol: 1e-12, max_iter: 1 }).unwrap_err();
    assert!(matches!(err, capillary_core::Error::NonConvergence { .. }));
}
