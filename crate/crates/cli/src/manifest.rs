use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

/// Names the random generator behind every synthetic sample.
pub const RNG_ALGORITHM: &str = "chacha20 (rand_chacha), seeded by seed_from_u64(seed), stream = sample index";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Everything needed to produce an output again.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// The command's arguments, minus output location and timing switches.
    pub config: serde_json::Value,
    pub seeds: Vec<u64>,
    pub inputs: Vec<InputDigest>,
    pub rng: String,
    /// Wall-clock seconds by phase; only recorded with `--timing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<BTreeMap<String, f64>>,
}

impl RunManifest {
    pub fn new(command: &str, config: &impl Serialize) -> Result<Self> {
        let config = serde_json::to_value(config)
            .map_err(|e| CliError::Input(format!("cannot record configuration: {e}")))?;
        Ok(RunManifest {
            tool: "tmfg".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            seeds: Vec::new(),
            inputs: Vec::new(),
            rng: RNG_ALGORITHM.into(),
            elapsed: None,
        })
    }

    pub fn record_time(&mut self, phase: impl Into<String>, seconds: f64) {
        self.elapsed
            .get_or_insert_with(BTreeMap::new)
            .insert(phase.into(), seconds);
    }

    /// One-line JSON form used in text outputs.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }
}

/// Reads a file and records its digest.
pub fn read_input(path: &Path) -> Result<(Vec<u8>, InputDigest)> {
    let bytes = std::fs::read(path).map_err(CliError::io(path))?;
    let digest = InputDigest::of(path, &bytes);
    Ok((bytes, digest))
}
