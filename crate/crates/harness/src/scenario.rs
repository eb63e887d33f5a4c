//! Scenario configuration, the named registry and command-line overrides.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, HarnessResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OrderName {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SlopeName {
    #[default]
    Previous,
    Rescaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CorrectorName {
    #[default]
    Newton,
    Picard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PendantShape {
    Bulge,
    Lightbulb,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsConfig {
    pub beta: f64,
    #[serde(default)]
    pub kappa: f64,
    #[serde(default)]
    pub sigma: f64,
    #[serde(default)]
    pub theta0: f64,
    /// Prescribed volume; derived from the initial profile when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<f64>,
    /// Inclination used only for the reported Bond number.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bond_inclination: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "substrate", rename_all = "lowercase")]
pub enum SubstrateConfig {
    Flat,
    Groove {
        #[serde(rename = "A")]
        amplitude: f64,
        k: f64,
    },
    Teapot,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "snake_case")]
pub enum InitialConfig {
    /// Circular cap `-R cos(theta) + sqrt(R^2 - x^2)` on `[-b0, b0]`.
    Cap { b0: f64, theta_in: f64 },
    /// Circular cap whose width and volume come from the quasi-static
    /// profile with apex height `u_m` and angle `theta_in`.
    CompatibleCap { u_m: f64, theta_in: f64, n_quad: usize },
    /// `(x - a0)(b0 - x) P(x)` plus the chord between the substrate heights
    /// at the endpoints; `coeffs` lists `P` from the constant term up.
    Polynomial { a0: f64, b0: f64, coeffs: Vec<f64> },
    /// Breathing cap with angle `theta_in + amplitude sin t`; also sets the
    /// time-dependent `kappa` and `sigma`.
    Breathing { theta_in: f64, amplitude: f64, b0: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeSettings {
    pub order: OrderName,
    pub dt: f64,
    pub n_grid: usize,
    pub final_time: f64,
    #[serde(default)]
    pub slope_source: SlopeName,
    #[serde(default)]
    pub corrector: CorrectorName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_every: Option<f64>,
    #[serde(default = "default_newton_tol")]
    pub newton_tol: f64,
    #[serde(default = "default_newton_max_iter")]
    pub newton_max_iter: usize,
    #[serde(default = "default_true")]
    pub check_heights: bool,
    #[serde(default = "default_true")]
    pub newton_fallback: bool,
}

fn default_newton_tol() -> f64 {
    1e-12
}

fn default_newton_max_iter() -> usize {
    50
}

fn default_true() -> bool {
    true
}

/// Where the error of a convergence study is measured against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reference", rename_all = "snake_case")]
pub enum ReferenceConfig {
    None,
    /// Contact point of the symmetric quasi-static DAE.
    SessileDae { n_quad: usize },
    /// Half-width of the breathing cap.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdeConfig {
    pub name: String,
    pub params: ParamsConfig,
    pub substrate: SubstrateConfig,
    pub initial: InitialConfig,
    pub scheme: SchemeSettings,
    #[serde(default = "no_reference")]
    pub reference: ReferenceConfig,
}

fn no_reference() -> ReferenceConfig {
    ReferenceConfig::None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DaeKind {
    Sessile,
    Pendant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DaeConfig {
    pub name: String,
    pub kind: DaeKind,
    pub u_m0: f64,
    pub theta_in: f64,
    pub theta_y: f64,
    pub kappa: f64,
    pub final_time: f64,
    #[serde(default = "default_n_quad")]
    pub n_quad: usize,
    #[serde(default = "default_atol")]
    pub atol: f64,
}

fn default_n_quad() -> usize {
    2000
}

fn default_atol() -> f64 {
    1e-10
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ScenarioConfig {
    Pde(PdeConfig),
    Dae(DaeConfig),
}

impl ScenarioConfig {
    pub fn name(&self) -> &str {
        match self {
            Self::Pde(c) => &c.name,
            Self::Dae(c) => &c.name,
        }
    }
}

pub const SCENARIOS: &[&str] =
    &["accuracy", "breathing", "teapot", "teapot-rise", "groove", "sessile", "pendant", "pendant-lightbulb"];

fn pendant(shape: PendantShape) -> DaeConfig {
    let (name, theta_in, theta_y, kappa) = match shape {
        PendantShape::Bulge => ("pendant", 3.0 * PI / 16.0, 2.7 * PI / 8.0, -28.028),
        PendantShape::Lightbulb => ("pendant-lightbulb", 5.0 * PI / 16.0, 4.7 * PI / 8.0, -15.05),
    };
    DaeConfig {
        name: name.into(),
        kind: DaeKind::Pendant,
        u_m0: 0.3,
        theta_in,
        theta_y,
        kappa,
        final_time: 4.0,
        n_quad: default_n_quad(),
        atol: default_atol(),
    }
}

fn scheme(order: OrderName, dt: f64, n_grid: usize, final_time: f64) -> SchemeSettings {
    SchemeSettings {
        order,
        dt,
        n_grid,
        final_time,
        slope_source: SlopeName::Previous,
        corrector: CorrectorName::Newton,
        snapshot_every: None,
        newton_tol: default_newton_tol(),
        newton_max_iter: default_newton_max_iter(),
        check_heights: true,
        newton_fallback: true,
    }
}

fn teapot(name: &str, sigma: f64, final_time: f64) -> PdeConfig {
    PdeConfig {
        name: name.into(),
        params: ParamsConfig {
            beta: 3.0,
            kappa: 5.0,
            sigma,
            theta0: 0.0,
            volume: None,
            bond_inclination: Some(0.226 * PI),
        },
        substrate: SubstrateConfig::Teapot,
        initial: InitialConfig::Polynomial { a0: 2.4, b0: 2.9, coeffs: vec![5.2] },
        scheme: SchemeSettings { snapshot_every: Some(final_time / 8.0), ..scheme(OrderName::Second, 0.002, 600, final_time) },
        reference: ReferenceConfig::None,
    }
}

/// Parameter block of a named scenario.
pub fn named(name: &str) -> HarnessResult<ScenarioConfig> {
    let cfg = match name {
        "accuracy" => ScenarioConfig::Pde(PdeConfig {
            name: name.into(),
            params: ParamsConfig {
                beta: 0.0,
                kappa: 0.1,
                sigma: -(3.9 * PI / 8.0).cos(),
                theta0: 0.0,
                volume: None,
                bond_inclination: None,
            },
            substrate: SubstrateConfig::Flat,
            initial: InitialConfig::CompatibleCap { u_m: 1.0, theta_in: 1.3 * PI / 8.0, n_quad: 16000 },
            scheme: scheme(OrderName::First, 1.0 / 40.0, 320, 1.0),
            reference: ReferenceConfig::SessileDae { n_quad: 8000 },
        }),
        "breathing" => ScenarioConfig::Pde(PdeConfig {
            name: name.into(),
            params: ParamsConfig { beta: 0.1, kappa: 0.0, sigma: 0.0, theta0: 0.0, volume: None, bond_inclination: None },
            substrate: SubstrateConfig::Flat,
            initial: InitialConfig::Breathing { theta_in: 3.0 * PI / 16.0, amplitude: 0.2, b0: 3.0 },
            scheme: SchemeSettings {
                snapshot_every: Some(PI / 2.0),
                ..scheme(OrderName::First, 30.0 * PI / 1500.0, 1000, 30.0 * PI)
            },
            reference: ReferenceConfig::Exact,
        }),
        "teapot" => ScenarioConfig::Pde(teapot(name, -0.8, 16.0)),
        "teapot-rise" => ScenarioConfig::Pde(teapot(name, -0.6, 6.0)),
        "groove" => ScenarioConfig::Pde(PdeConfig {
            name: name.into(),
            params: ParamsConfig { beta: 0.3, kappa: 0.3, sigma: -0.95, theta0: 0.3, volume: None, bond_inclination: None },
            substrate: SubstrateConfig::Groove { amplitude: 0.1, k: 5.0 },
            initial: InitialConfig::Polynomial { a0: -3.0, b0: 3.0, coeffs: vec![0.08, 0.12, 0.08] },
            scheme: SchemeSettings { snapshot_every: Some(12.0), ..scheme(OrderName::Second, 0.08, 1000, 96.0) },
            reference: ReferenceConfig::None,
        }),
        "sessile" => ScenarioConfig::Dae(DaeConfig {
            name: name.into(),
            kind: DaeKind::Sessile,
            u_m0: 1.0,
            theta_in: 1.3 * PI / 8.0,
            theta_y: 3.9 * PI / 8.0,
            kappa: 0.1,
            final_time: 1.0,
            n_quad: 8000,
            atol: default_atol(),
        }),
        "pendant" | "pendant-bulge" => ScenarioConfig::Dae(pendant(PendantShape::Bulge)),
        "pendant-lightbulb" => ScenarioConfig::Dae(pendant(PendantShape::Lightbulb)),
        other => return Err(HarnessError::UnknownScenario(other.into())),
    };
    Ok(cfg)
}

/// Reads a JSON or TOML scenario file, chosen by extension.
pub fn load(path: &Path) -> HarnessResult<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => toml::from_str(&text).map_err(|e| HarnessError::Config(e.to_string())),
        _ => serde_json::from_str(&text).map_err(|e| HarnessError::Config(e.to_string())),
    }
}

/// A registered name, or a path to a config file.
pub fn resolve(name_or_path: &str) -> HarnessResult<ScenarioConfig> {
    let path = Path::new(name_or_path);
    if name_or_path.ends_with(".json") || name_or_path.ends_with(".toml") {
        return load(path);
    }
    named(name_or_path)
}

#[derive(Debug, Clone, Default, PartialEq, clap::Args)]
pub struct Overrides {
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: Option<f64>,
    /// Final time.
    #[arg(long = "T")]
    pub final_time: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// Number of grid intervals.
    #[arg(long = "N")]
    pub n_grid: Option<usize>,
    #[arg(long, value_enum)]
    pub order: Option<OrderName>,
    #[arg(long, value_enum)]
    pub corrector: Option<CorrectorName>,
    #[arg(long, value_enum)]
    pub slope_source: Option<SlopeName>,
    #[arg(long)]
    pub snapshot_every: Option<f64>,
    #[arg(long, value_enum)]
    pub shape: Option<PendantShape>,
    #[arg(long)]
    pub n_quad: Option<usize>,
    #[arg(long)]
    pub no_height_check: bool,
    /// Fail instead of falling back to the linearised solve when Newton fails.
    #[arg(long)]
    pub strict_newton: bool,
}

fn reject(name: &str, what: &str) -> HarnessError {
    HarnessError::Usage(format!("--{name} does not apply to {what} scenarios"))
}

impl Overrides {
    pub fn apply(&self, cfg: ScenarioConfig) -> HarnessResult<ScenarioConfig> {
        match cfg {
            ScenarioConfig::Pde(c) => self.apply_pde(c).map(ScenarioConfig::Pde),
            ScenarioConfig::Dae(c) => self.apply_dae(c).map(ScenarioConfig::Dae),
        }
    }

    fn apply_pde(&self, mut c: PdeConfig) -> HarnessResult<PdeConfig> {
        if self.shape.is_some() {
            return Err(reject("shape", "PDE"));
        }
        let breathing = matches!(c.initial, InitialConfig::Breathing { .. });
        if breathing && (self.sigma.is_some() || self.kappa.is_some()) {
            return Err(HarnessError::Usage("breathing coefficients are time-dependent and fixed".into()));
        }
        let p = &mut c.params;
        p.sigma = self.sigma.unwrap_or(p.sigma);
        p.kappa = self.kappa.unwrap_or(p.kappa);
        p.beta = self.beta.unwrap_or(p.beta);
        p.theta0 = self.theta0.unwrap_or(p.theta0);
        let s = &mut c.scheme;
        s.final_time = self.final_time.unwrap_or(s.final_time);
        s.dt = self.dt.unwrap_or(s.dt);
        s.n_grid = self.n_grid.unwrap_or(s.n_grid);
        s.order = self.order.unwrap_or(s.order);
        s.corrector = self.corrector.unwrap_or(s.corrector);
        s.slope_source = self.slope_source.unwrap_or(s.slope_source);
        if self.snapshot_every.is_some() {
            s.snapshot_every = self.snapshot_every;
        }
        if self.no_height_check {
            s.check_heights = false;
        }
        if self.strict_newton {
            s.newton_fallback = false;
        }
        if let Some(n) = self.n_quad {
            match &mut c.initial {
                InitialConfig::CompatibleCap { n_quad, .. } => *n_quad = n,
                _ => return Err(reject("n-quad", "this PDE")),
            }
        }
        Ok(c)
    }

    fn apply_dae(&self, c: DaeConfig) -> HarnessResult<DaeConfig> {
        let mut c = match (self.shape, c.kind) {
            (Some(shape), DaeKind::Pendant) => pendant(shape),
            (Some(_), DaeKind::Sessile) => return Err(reject("shape", "sessile")),
            _ => c,
        };
        let pde_only = [
            ("beta", self.beta.is_some()),
            ("theta0", self.theta0.is_some()),
            ("dt", self.dt.is_some()),
            ("N", self.n_grid.is_some()),
            ("order", self.order.is_some()),
            ("corrector", self.corrector.is_some()),
            ("slope-source", self.slope_source.is_some()),
            ("snapshot-every", self.snapshot_every.is_some()),
            ("no-height-check", self.no_height_check),
            ("strict-newton", self.strict_newton),
        ];
        if let Some((name, _)) = pde_only.iter().find(|(_, set)| *set) {
            return Err(reject(name, "DAE"));
        }
        if let Some(sigma) = self.sigma {
            if sigma.abs() > 1.0 {
                return Err(HarnessError::Usage(format!("|sigma| = {} exceeds 1", sigma.abs())));
            }
            c.theta_y = (-sigma).acos();
        }
        c.kappa = self.kappa.unwrap_or(c.kappa);
        c.final_time = self.final_time.unwrap_or(c.final_time);
        c.n_quad = self.n_quad.unwrap_or(c.n_quad);
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in SCENARIOS {
            assert_eq!(named(name).unwrap().name(), *name);
        }
        assert!(matches!(named("nope"), Err(HarnessError::UnknownScenario(_))));
    }

    #[test]
    fn overrides_apply() {
        let o = Overrides { sigma: Some(-0.6), final_time: Some(6.0), ..Default::default() };
        let ScenarioConfig::Pde(c) = o.apply(named("teapot").unwrap()).unwrap() else { panic!() };
        assert_eq!((c.params.sigma, c.scheme.final_time), (-0.6, 6.0));
        let o = Overrides { shape: Some(PendantShape::Lightbulb), ..Default::default() };
        let ScenarioConfig::Dae(d) = o.apply(named("pendant").unwrap()).unwrap() else { panic!() };
        assert_eq!(d.kappa, -15.05);
        let o = Overrides { dt: Some(0.1), ..Default::default() };
        assert!(o.apply(named("sessile").unwrap()).is_err());
        let o = Overrides { sigma: Some(-0.5), ..Default::default() };
        assert!(o.apply(named("breathing").unwrap()).is_err());
    }

    #[test]
    fn json_and_toml_round_trip() {
        for name in SCENARIOS {
            let cfg = named(name).unwrap();
            let json = serde_json::to_string(&cfg).unwrap();
            assert_eq!(serde_json::from_str::<ScenarioConfig>(&json).unwrap(), cfg);
            let text = toml::to_string(&cfg).unwrap();
            assert_eq!(toml::from_str::<ScenarioConfig>(&text).unwrap(), cfg);
        }
    }

    #[test]
    fn substrate_block_matches_external_format() {
        let v: SubstrateConfig = serde_json::from_str(r#"{"substrate": "groove", "A": 0.1, "k": 5}"#).unwrap();
        assert_eq!(v, SubstrateConfig::Groove { amplitude: 0.1, k: 5.0 });
    }
}
