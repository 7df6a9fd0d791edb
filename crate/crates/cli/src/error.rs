use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: malformed matrix file: {source}", path.display())]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Format(String),
    #[error("invalid input: {0}")]
    Core(#[from] prodgeo_core::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
