use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Model(#[from] capillary_core::Error),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Self::Io { path: path.as_ref().display().to_string(), source }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Model(e) => e.kind(),
            Self::UnknownScenario(_) => "unknown_scenario",
            Self::Usage(_) => "usage",
            Self::Config(_) => "config",
            Self::Io { .. } => "io",
        }
    }

    /// Machine-readable form written to stderr by the binary.
    pub fn to_json(&self) -> Value {
        let mut err = json!({ "kind": self.kind(), "message": self.to_string() });
        if let Self::Model(capillary_core::Error::AtStep { step, .. }) = self {
            err["step"] = json!(step);
        }
        json!({ "error": err })
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::UnknownScenario(_) | Self::Config(_) => 2,
            _ => 1,
        }
    }
}

pub type HarnessResult<T> = std::result::Result<T, HarnessError>;
