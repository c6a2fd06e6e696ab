use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

/// Failures reported as structured JSON with exit code 1, except
/// [`CliError::Usage`], which exits with 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(#[from] clifford_core::Error),
    #[error("{context}: {source}")]
    DomainIn { context: String, source: clifford_core::Error },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Json { path: String, message: String, position: usize },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, err: &std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), message: err.to_string() }
    }

    /// Converts serde's line and column into a byte offset into `text`.
    pub fn json(path: &Path, text: &str, err: &serde_json::Error) -> Self {
        let line_start: usize =
            text.split_inclusive('\n').take(err.line().saturating_sub(1)).map(str::len).sum();
        let position = (line_start + err.column().saturating_sub(1)).min(text.len());
        CliError::Json { path: path.display().to_string(), message: err.to_string(), position }
    }

    pub fn domain_in(context: String, source: clifford_core::Error) -> Self {
        CliError::DomainIn { context, source }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) | CliError::DomainIn { source: e, .. } => e.code(),
            CliError::Io { .. } => "io_error",
            CliError::Json { .. } => "invalid_json",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            CliError::Domain(e) | CliError::DomainIn { source: e, .. } => e.position(),
            CliError::Json { position, .. } => Some(*position),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "code": self.code(), "message": self.to_string() });
        if let Some(p) = self.position() {
            v["position"] = json!(p);
        }
        v
    }
}
