//! Convergence of the right contact point for a quasi-static drop relaxing
//! from 1.3 pi / 8 towards its Young angle 3.9 pi / 8.

use capillary_core::{DropletState, FlatSurface, PhysicalParams};
use capillary_schemes::{run_simulation, Order, SchemeConfig};

const B0: f64 = 4.5321418036234515;
const VOLUME: f64 = 6.31704050317005;
const REFERENCE: f64 = 3.747880231652922;

fn final_b(m: usize, order: Order) -> f64 {
    let pi = std::f64::consts::PI;
    let theta_in = 1.3 * pi / 8.0;
    let sigma = -(3.9 * pi / 8.0).cos();
    let r = B0 / theta_in.sin();
    let n = 8 * m;
    let s = DropletState::from_profile(-B0, B0, n, &FlatSurface, |x: f64| {
        (r * r - x * x).max(0.0).sqrt() - r * theta_in.cos()
    })
    .unwrap();
    let p = PhysicalParams::new(0.0, 0.1, sigma, 0.0, VOLUME).unwrap();
    let out = run_simulation(&s, &FlatSurface, &p, &SchemeConfig::new(order, 1.0 / m as f64, n, 1.0)).unwrap();
    out.final_state.b
}

#[test]
fn first_order_rate() {
    let e: Vec<f64> = [20, 40, 80].iter().map(|&m| (final_b(m, Order::First) - REFERENCE).abs()).collect();
    for w in e.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((0.8..1.3).contains(&order), "{e:?}");
    }
}

#[test]
fn second_order_rate() {
    let e: Vec<f64> = [10, 20, 40].iter().map(|&m| (final_b(m, Order::Second) - REFERENCE).abs()).collect();
    for w in e.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((1.7..2.4).contains(&order), "{e:?}");
    }
}
