use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_SEMANTIC: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] pmr_core::Error),

    #[error("{}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    InFile {
        path: String,
        source: pmr_core::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("write failed: {0}")]
    Write(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        let engine = match self {
            CliError::Engine(e) | CliError::InFile { source: e, .. } => e,
            _ => return EXIT_SEMANTIC,
        };
        if engine.is_parse_error() {
            EXIT_PARSE
        } else if engine.is_resource_error() {
            EXIT_RESOURCE
        } else {
            EXIT_SEMANTIC
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
