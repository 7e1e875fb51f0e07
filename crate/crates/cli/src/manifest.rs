//! Output files and the run manifest written beside them.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Command, Format};

#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    /// Subcommand name and every parameter, defaults included.
    pub parameters: &'a Command,
    pub format: Format,
    pub seed: Option<u64>,
    pub output: String,
    /// Hex SHA-256 of the output bytes.
    pub sha256: String,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|s| s.to_os_string())
        .unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

pub fn write_with_manifest(
    out: &Path,
    command: &Command,
    format: Format,
    seed: Option<u64>,
    text: &str,
) -> std::io::Result<()> {
    fs::write(out, text)?;
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        parameters: command,
        format,
        seed,
        output: out.display().to_string(),
        sha256: hex::encode(Sha256::digest(text.as_bytes())),
    };
    let mut json = serde_json::to_string_pretty(&manifest).expect("serializable");
    json.push('\n');
    fs::write(manifest_path(out), json)
}
