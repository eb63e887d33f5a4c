use thiserror::Error;

/// Errors shared by every capillary crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("numerical blowup: {0}")]
    Blowup(String),
    #[error("droplet collapse: a = {a}, b = {b}")]
    Collapse { a: f64, b: f64 },
    #[error("contact point {x} left the substrate domain [{lo}, {hi}]")]
    DomainExit { x: f64, lo: f64, hi: f64 },
    #[error("volume constraint violated by {residual:e}")]
    ConstraintViolation { residual: f64 },
    #[error("height below substrate at node {node} by {deficit:e}")]
    NegativeHeight { node: usize, deficit: f64 },
    #[error("endpoint bound violated: {0}")]
    BoundViolation(String),
    #[error("desingularization failed: {0}")]
    Desingularization(String),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps the error with the index of the time step that produced it.
    pub fn at_step(self, step: usize) -> Self {
        match self {
            Error::AtStep { .. } => self,
            other => Error::AtStep { step, source: Box::new(other) },
        }
    }

    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Index { .. } => "index",
            Error::Domain(_) => "domain",
            Error::InvalidInput(_) => "invalid_input",
            Error::Invariant(_) => "invariant",
            Error::Singular(_) => "singular",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Blowup(_) => "blowup",
            Error::Collapse { .. } => "collapse",
            Error::DomainExit { .. } => "domain_exit",
            Error::ConstraintViolation { .. } => "constraint_violation",
            Error::NegativeHeight { .. } => "negative_height",
            Error::BoundViolation(_) => "bound_violation",
            Error::Desingularization(_) => "desingularization",
            Error::Regime(_) => "regime",
            Error::AtStep { source, .. } => source.kind(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
