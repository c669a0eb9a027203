//! Run manifests: what was invoked, on which files, producing which files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    /// Re-running this argument list reproduces the outputs.
    pub argv: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

pub fn digest_file(path: &Path) -> CliResult<FileDigest> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let sha = Sha256::digest(&bytes);
    Ok(FileDigest {
        path: path.to_path_buf(),
        sha256: sha.iter().map(|b| format!("{b:02x}")).collect(),
    })
}

impl RunManifest {
    pub fn new(command: &'static str, argv: &[String]) -> Self {
        Self {
            tool: "coning",
            version: env!("CARGO_PKG_VERSION"),
            command,
            argv: argv.to_vec(),
            parameters: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn input(mut self, path: &Path) -> CliResult<Self> {
        self.inputs.push(digest_file(path)?);
        Ok(self)
    }

    pub fn output(mut self, path: &Path) -> CliResult<Self> {
        self.outputs.push(digest_file(path)?);
        Ok(self)
    }

    /// Writes the manifest next to `primary` and returns its path.
    pub fn write_beside(&self, primary: &Path) -> CliResult<PathBuf> {
        let path = coning_core::bitcodec::manifest_path(primary);
        let mut text = serde_json::to_string_pretty(self).expect("serializable");
        text.push('\n');
        std::fs::write(&path, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }
}
