use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub params: Value,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub outputs: Vec<PathBuf>,
    pub duration_secs: f64,
}

impl RunManifest {
    pub fn new(subcommand: &'static str, params: Value, seed: Option<u64>) -> Self {
        Self {
            subcommand,
            params,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            outputs: Vec::new(),
            duration_secs: 0.0,
        }
    }

    pub fn write_output(&mut self, dir: &Path, name: &str, contents: &str) -> Result<(), String> {
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        self.outputs.push(path);
        Ok(())
    }

    /// Writes `manifest.json` into `dir`, listing every output recorded so far.
    pub fn finish(mut self, dir: &Path, started: Instant) -> Result<(), String> {
        self.duration_secs = started.elapsed().as_secs_f64();
        let path = dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&self).expect("manifest serializes");
        std::fs::write(&path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("--out {}: {e}", dir.display()))
}
