use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};
use tmfg::validate::{validate_result, ValidationReport};

use crate::artifact::Artifact;
use crate::format::ResultDoc;
use crate::manifest::{read_input, RunManifest};
use crate::{CliError, Result};

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ValidateArgs {
    /// A JSON result written by `tmfg filter`.
    pub input: PathBuf,
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportDoc {
    pub report: ValidationReport,
    pub manifest: RunManifest,
}

impl ReportDoc {
    pub fn render(&self) -> Vec<u8> {
        let verdict = if self.report.passed() { "pass" } else { "fail" };
        format!("# manifest {}\n{}result: {verdict}\n", self.manifest.to_line(), self.report).into_bytes()
    }
}

pub fn validate(args: &ValidateArgs) -> Result<Artifact> {
    let (bytes, digest) = read_input(&args.input)?;
    let doc: ResultDoc = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("{}: malformed result: {e}", args.input.display())))?;
    let result = doc.to_result()?;
    let mut manifest = RunManifest::new("validate", args)?;
    manifest.inputs.push(digest);
    Ok(Artifact::Report(ReportDoc {
        report: validate_result(&result),
        manifest,
    }))
}
