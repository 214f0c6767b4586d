//! Library side of the `tmfg` command-line tool.
//!
//! Every command returns an [`Artifact`]: a document plus the
//! [`RunManifest`] that produced it. Rendering is deterministic, so running
//! the recorded configuration again yields the same bytes; `tmfg replay`
//! checks exactly that.

pub mod artifact;
pub mod commands;
pub mod format;
pub mod manifest;

pub use artifact::Artifact;
pub use manifest::RunManifest;

use std::path::PathBuf;

/// Exit status for a run that completed and found nothing wrong.
pub const EXIT_OK: u8 = 0;
/// Exit status when a validation or replay check fails.
pub const EXIT_VALIDATION: u8 = 1;
/// Exit status for unreadable, malformed or invalid input.
pub const EXIT_INPUT: u8 = 2;

/// Overrides the directory outputs go to when `--output` is not given.
pub const OUTPUT_DIR_VAR: &str = "TMFG_OUTPUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] tmfg::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => EXIT_VALIDATION,
            _ => EXIT_INPUT,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
