use serde_json::{json, Value};
use thiserror::Error;

pub const ERROR_FORMAT: &str = "glu-error/1";

/// Failures that make a command's input unusable (exit code 1).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid gluing: {0}")]
    Gluing(#[from] glu_core::GluingError),
    #[error("invalid move sequence: {0}")]
    Moves(#[from] glu_core::MoveError),
    #[error("{0}")]
    Quotient(#[from] glu_core::QuotientError),
    #[error("{0}")]
    Pi1(#[from] glu_core::Pi1Error),
    #[error("{0}")]
    Geometry(#[from] glu_geom::GeomError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Gluing(_) => "gluing",
            CliError::Moves(_) => "moves",
            CliError::Quotient(_) => "quotient",
            CliError::Pi1(_) => "pi1",
            CliError::Geometry(_) => "geometry",
            CliError::Config(_) => "config",
        }
    }

    pub fn to_json_value(&self, command: &str) -> Value {
        json!({
            "format": ERROR_FORMAT,
            "command": command,
            "kind": self.kind(),
            "message": self.to_string(),
        })
    }
}
