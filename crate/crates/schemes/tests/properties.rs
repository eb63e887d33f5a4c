use capillary_core::{volume_of, DropletState, FlatSurface, PhysicalParams};
use capillary_schemes::{run_simulation, CorrectorMode, Order, SchemeConfig, SlopeSource};
use capillary_substrate::SubstrateProfile;
use proptest::prelude::*;

fn parabola(n: usize, half: f64, height: f64) -> DropletState<f64> {
    DropletState::from_profile(-half, half, n, &FlatSurface, |x: f64| height * (1.0 - (x / half).powi(2))).unwrap()
}

fn arc(n: usize, half: f64, theta: f64) -> DropletState<f64> {
    let r = half / theta.sin();
    DropletState::from_profile(-half, half, n, &FlatSurface, |x: f64| (r * r - x * x).sqrt() - r * theta.cos()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetric_drops_stay_symmetric(
        beta in 0.0f64..2.0,
        kappa in -0.5f64..1.0,
        sigma in -0.9f64..0.5,
        second in any::<bool>(),
    ) {
        let s = parabola(40, 1.0, 0.6);
        let v = volume_of(&s, &FlatSurface).unwrap();
        let p = PhysicalParams::new(beta, kappa, sigma, 0.0, v).unwrap();
        let order = if second { Order::Second } else { Order::First };
        let out = run_simulation(&s, &FlatSurface, &p, &SchemeConfig::new(order, 0.01, 40, 0.1)).unwrap();
        let f = &out.final_state;
        prop_assert!((f.a + f.b).abs() <= 1e-12, "a = {}, b = {}", f.a, f.b);
        let n = f.n();
        for j in 0..=n {
            prop_assert!((f.heights[j] - f.heights[n - j]).abs() <= 1e-11);
        }
    }

    #[test]
    fn flat_substrate_bounds_and_volume(
        beta in 0.0f64..2.0,
        kappa in 0.0f64..1.0,
        sigma in -0.95f64..0.5,
        theta0 in -0.5f64..0.5,
        second in any::<bool>(),
        rescaled in any::<bool>(),
    ) {
        // run_simulation checks the endpoint bounds and the volume after every step
        let s = parabola(32, 1.0, 0.5);
        let v = volume_of(&s, &FlatSurface).unwrap();
        let p = PhysicalParams::new(beta, kappa, sigma, theta0, v).unwrap();
        let order = if second { Order::Second } else { Order::First };
        let mut cfg = SchemeConfig::new(order, 0.02, 32, 0.2);
        if rescaled {
            cfg.slope_source = SlopeSource::Rescaled;
        }
        let out = run_simulation(&s, &FlatSurface, &p, &cfg).unwrap();
        for row in &out.series.rows()[1..] {
            prop_assert!((row.volume - v).abs() <= 1e-9 * v.max(1.0));
        }
    }
}

#[test]
fn young_arc_is_nearly_stationary() {
    let theta = 1.0f64;
    let sigma = -theta.cos();
    for order in [Order::First, Order::Second] {
        let mut drift = Vec::new();
        for n in [50, 100] {
            let s = arc(n, 1.0, theta);
            let v = volume_of(&s, &FlatSurface).unwrap();
            let p = PhysicalParams::new(1.0, 0.0, sigma, 0.0, v).unwrap();
            let out = run_simulation(&s, &FlatSurface, &p, &SchemeConfig::new(order, 0.01, n, 0.1)).unwrap();
            drift.push((out.final_state.b - 1.0).abs());
        }
        assert!(drift[1] < 2e-4, "{order:?}: {drift:?}");
        assert!(drift[0] / drift[1] > 3.0, "{order:?}: {drift:?}");
    }
}

#[test]
fn picard_corrector_tracks_newton() {
    let s = parabola(60, 1.0, 0.6);
    let v = volume_of(&s, &FlatSurface).unwrap();
    let p = PhysicalParams::new(0.5, 0.3, -0.4, 0.2, v).unwrap();
    let cfg = SchemeConfig::new(Order::Second, 0.01, 60, 0.3);
    let newton = run_simulation(&s, &FlatSurface, &p, &cfg).unwrap().final_state;
    let picard = run_simulation(&s, &FlatSurface, &p, &SchemeConfig { corrector: CorrectorMode::Picard, ..cfg })
        .unwrap()
        .final_state;
    assert!((newton.a - picard.a).abs() < 1e-4 && (newton.b - picard.b).abs() < 1e-4);
}

#[test]
fn groove_run_conserves_volume() {
    let g = SubstrateProfile::groove(0.1, 5.0);
    let (a, b) = (-3.0, 3.0);
    let (wa, wb) = (capillary_core::Surface::height(&g, a).unwrap(), capillary_core::Surface::height(&g, b).unwrap());
    let n = 300;
    let s = DropletState::from_profile(a, b, n, &g, |x: f64| {
        let lift = wa + (wb - wa) * (x - a) / (b - a) - capillary_core::Surface::height(&g, x).unwrap();
        0.08 * (x - a) * (b - x) * (x * x + 1.5 * x + 1.0) + lift
    })
    .unwrap();
    let v = volume_of(&s, &g).unwrap();
    let p = PhysicalParams::new(0.3, 0.3, -0.95, 0.3, v).unwrap();
    for order in [Order::First, Order::Second] {
        let out = run_simulation(&s, &g, &p, &SchemeConfig::new(order, 0.08, n, 0.8)).unwrap();
        assert!((volume_of(&out.final_state, &g).unwrap() - v).abs() < 1e-10);
    }
}

#[test]
fn f32_first_order_step() {
    let s = DropletState::<f32>::from_profile(-1.0, 1.0, 32, &FlatSurface, |x: f32| 0.5 * (1.0 - x * x)).unwrap();
    let v = volume_of(&s, &FlatSurface).unwrap();
    let p = PhysicalParams::new(0.5f32, 0.1, -0.5, 0.0, v).unwrap();
    let mut cfg = SchemeConfig::new(Order::First, 0.01f32, 32, 0.05);
    cfg.check_bounds = false;
    let out = capillary_schemes::step(&s, &FlatSurface, &p, &cfg, 0.01).unwrap();
    assert!((out.a + out.b).abs() < 1e-5);
}
