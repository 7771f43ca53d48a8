use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::{Failure, Verb};

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Every file a command reads goes through here, so it can be recorded.
#[derive(Default)]
pub struct Inputs {
    pub read: Vec<InputDigest>,
}

impl Inputs {
    pub fn json(&mut self, path: &Path) -> Result<Value, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        self.read.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256(&bytes),
        });
        serde_json::from_slice(&bytes).map_err(|e| {
            hodgekit::Error::parse(path.display().to_string(), format!("invalid JSON: {e}")).into()
        })
    }
}

#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub path: Option<String>,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub output: OutputDigest,
}

impl RunRecord {
    pub fn new(inputs: &Inputs, verb: &Verb, out: Option<&PathBuf>, text: &str) -> Self {
        let seed = match verb {
            Verb::Experiment { seed, .. } => Some(*seed),
            Verb::Build { seed, .. } => *seed,
            _ => None,
        };
        RunRecord {
            command: std::env::args().skip(1).collect(),
            inputs: inputs.read.clone(),
            version: hodgekit::VERSION,
            seed,
            output: OutputDigest {
                path: out.map(|p| p.display().to_string()),
                sha256: sha256(text.as_bytes()),
            },
        }
    }
}
