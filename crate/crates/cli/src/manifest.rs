use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const MANIFEST_FORMAT: u32 = 1;

/// Record of one run that writes files: what was asked for and the SHA-256
/// of everything produced.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub format_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub files: BTreeMap<String, String>,
}

/// Collects output files for a directory and writes them with a manifest.
pub struct OutputDir {
    manifest: RunManifest,
    contents: BTreeMap<String, String>,
}

impl OutputDir {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>) -> Self {
        OutputDir {
            manifest: RunManifest {
                format_version: MANIFEST_FORMAT,
                command: command.to_string(),
                parameters,
                files: BTreeMap::new(),
            },
            contents: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, name: &str, text: String) {
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        self.manifest.files.insert(name.to_string(), digest);
        self.contents.insert(name.to_string(), text);
    }

    /// Writes every file, then `manifest.json`.
    pub fn write(self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        for (name, text) in &self.contents {
            fs::write(dir.join(name), text)?;
        }
        let mut manifest =
            serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
        manifest.push('\n');
        fs::write(dir.join("manifest.json"), manifest)
    }
}
