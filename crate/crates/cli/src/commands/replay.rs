use std::path::PathBuf;

use clap::Args;
use serde::de::DeserializeOwned;

use super::{compare, filter, gen, validate};
use crate::artifact::Artifact;
use crate::format::extract_manifest;
use crate::manifest::{read_input, InputDigest, RunManifest};
use crate::{CliError, Result};

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Any output written by filter, gen, compare or validate.
    pub file: PathBuf,
}

fn config<T: DeserializeOwned>(m: &RunManifest) -> Result<T> {
    serde_json::from_value(m.config.clone())
        .map_err(|e| CliError::Input(format!("unreadable {} configuration: {e}", m.command)))
}

/// Re-runs the recorded command and checks that it reproduces `args.file`
/// byte for byte. Recorded timings are carried over, since they cannot be
/// reproduced.
pub fn replay(args: &ReplayArgs) -> Result<Artifact> {
    let (bytes, _) = read_input(&args.file)?;
    let recorded = extract_manifest(&bytes)?;
    for input in &recorded.inputs {
        let path = PathBuf::from(&input.path);
        let (now, _) = read_input(&path)?;
        if InputDigest::of(&path, &now).sha256 != input.sha256 {
            return Err(CliError::Check(format!("input {} has changed since the run", input.path)));
        }
    }
    let mut again = match recorded.command.as_str() {
        "filter" => filter::filter(&config(&recorded)?)?,
        "gen" => gen::gen(&config(&recorded)?)?,
        "compare" => compare::compare(&config(&recorded)?)?,
        "validate" => validate::validate(&config(&recorded)?)?,
        "bench" => {
            return Err(CliError::Input(
                "bench outputs are timing measurements and cannot be replayed".into(),
            ))
        }
        other => return Err(CliError::Input(format!("unknown command {other:?} in manifest"))),
    };
    again.manifest_mut().elapsed = recorded.elapsed.clone();
    let fresh = again.render();
    if fresh != bytes {
        let at = fresh.iter().zip(&bytes).take_while(|(a, b)| a == b).count();
        return Err(CliError::Check(format!(
            "replay of {} differs from the recorded output at byte {at}",
            args.file.display()
        )));
    }
    Ok(again)
}
