//! Empirical convergence orders of the contact point against a reference.

use serde::Serialize;

use crate::error::{HarnessError, HarnessResult};
use crate::scenario::{OrderName, PdeConfig};
use crate::sim::{reference_b, run_pde};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderRow {
    #[serde(rename = "M")]
    pub m: usize,
    pub error: f64,
    /// `ln(e_{n-1} / e_n) / ln(M_n / M_{n-1})`, absent on the first row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderTable {
    pub order: OrderName,
    pub reference: f64,
    pub rows: Vec<OrderRow>,
}

impl OrderTable {
    pub fn from_errors(order: OrderName, reference: f64, ms: &[usize], errors: &[f64]) -> Self {
        let rows = ms
            .iter()
            .zip(errors)
            .enumerate()
            .map(|(i, (&m, &error))| OrderRow {
                m,
                error,
                order: (i > 0).then(|| (errors[i - 1] / error).ln() / (m as f64 / ms[i - 1] as f64).ln()),
            })
            .collect();
        Self { order, reference, rows }
    }

    pub fn orders(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.order).collect()
    }

    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.error).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("M,error,order\n");
        for r in &self.rows {
            let order = r.order.map(|o| format!("{o:.16e}")).unwrap_or_default();
            s.push_str(&format!("{},{:.16e},{order}\n", r.m, r.error));
        }
        s
    }
}

/// Config with `dt = T / M` and `N = 8 M`.
pub fn refined(cfg: &PdeConfig, order: OrderName, m: usize) -> PdeConfig {
    let mut c = cfg.clone();
    c.scheme.order = order;
    c.scheme.dt = c.scheme.final_time / m as f64;
    c.scheme.n_grid = 8 * m;
    c.scheme.snapshot_every = None;
    c
}

/// Runs every `(order, M)` pair on its own thread and tabulates the
/// contact-point errors at the final time, rows sorted by `M`.
pub fn convergence_study(cfg: &PdeConfig, orders: &[OrderName], ms: &[usize]) -> HarnessResult<Vec<OrderTable>> {
    if ms.is_empty() || ms.windows(2).any(|w| w[1] <= w[0]) {
        return Err(HarnessError::Usage("M values must be non-empty and increasing".into()));
    }
    let t = cfg.scheme.final_time;
    let reference = reference_b(cfg, t)?
        .ok_or_else(|| HarnessError::Usage(format!("scenario `{}` has no reference solution", cfg.name)))?;
    let jobs: Vec<(OrderName, usize)> = orders.iter().flat_map(|&o| ms.iter().map(move |&m| (o, m))).collect();
    let results: Vec<HarnessResult<f64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(o, m)| scope.spawn(move || run_pde(&refined(cfg, o, m)).map(|r| r.output.final_state.b)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(HarnessError::Config("worker panicked".into()))))
            .collect()
    });
    let mut finals = results.into_iter();
    orders
        .iter()
        .map(|&o| {
            let errors = ms
                .iter()
                .map(|_| finals.next().unwrap_or_else(|| Err(HarnessError::Config("missing result".into()))))
                .map(|b| b.map(|b| (b - reference).abs()))
                .collect::<HarnessResult<Vec<f64>>>()?;
            Ok(OrderTable::from_errors(o, reference, ms, &errors))
        })
        .collect()
}
