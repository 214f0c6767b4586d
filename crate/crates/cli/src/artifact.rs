use std::path::{Path, PathBuf};

use crate::commands::{bench::BenchDoc, compare::CompareDoc, gen::MatrixDoc, validate::ReportDoc};
use crate::format::{ResultDoc, ResultFormat, TableFormat};
use crate::manifest::RunManifest;
use crate::{CliError, Result, OUTPUT_DIR_VAR};

/// A finished command output, ready to render.
#[derive(Debug, Clone)]
pub enum Artifact {
    Result(ResultDoc, ResultFormat),
    Matrix(MatrixDoc),
    Compare(CompareDoc, TableFormat),
    Bench(BenchDoc, TableFormat),
    Report(ReportDoc),
}

impl Artifact {
    pub fn manifest(&self) -> &RunManifest {
        match self {
            Artifact::Result(d, _) => &d.manifest,
            Artifact::Matrix(d) => &d.manifest,
            Artifact::Compare(d, _) => &d.manifest,
            Artifact::Bench(d, _) => &d.manifest,
            Artifact::Report(d) => &d.manifest,
        }
    }

    pub fn manifest_mut(&mut self) -> &mut RunManifest {
        match self {
            Artifact::Result(d, _) => &mut d.manifest,
            Artifact::Matrix(d) => &mut d.manifest,
            Artifact::Compare(d, _) => &mut d.manifest,
            Artifact::Bench(d, _) => &mut d.manifest,
            Artifact::Report(d) => &mut d.manifest,
        }
    }

    pub fn render(&self) -> Vec<u8> {
        match self {
            Artifact::Result(d, f) => d.render(*f),
            Artifact::Matrix(d) => d.render(),
            Artifact::Compare(d, f) => d.render(*f),
            Artifact::Bench(d, f) => d.render(*f),
            Artifact::Report(d) => d.render(),
        }
    }

    /// Whether the command's checks all passed (always true for commands
    /// without checks).
    pub fn passed(&self) -> bool {
        match self {
            Artifact::Report(d) => d.report.passed(),
            _ => true,
        }
    }
}

/// Where an output goes: the explicit path, else `$TMFG_OUTPUT_DIR/<default>`,
/// else standard output (`None`).
pub fn destination(explicit: Option<&Path>, default_name: &str) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    std::env::var_os(OUTPUT_DIR_VAR)
        .filter(|d| !d.is_empty())
        .map(|d| PathBuf::from(d).join(default_name))
}

pub fn write_output(bytes: &[u8], to: Option<&Path>) -> Result<()> {
    use std::io::Write;
    match to {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(CliError::io(dir))?;
            }
            std::fs::write(path, bytes).map_err(CliError::io(path))
        }
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(CliError::io("<stdout>")),
    }
}
