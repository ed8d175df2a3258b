use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context as _, Result};
use serde::Serialize;
use tribell::optimize::OptimizationConfig;

/// Provenance written beside every artifact.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub seed: u64,
    pub version: String,
    pub duration_seconds: f64,
}

pub struct Context {
    pub command: &'static str,
    pub argv: Vec<String>,
    pub cfg: OptimizationConfig,
    start: Instant,
}

pub fn manifest_path(artifact: &Path) -> PathBuf {
    let mut name = artifact.as_os_str().to_owned();
    name.push(".manifest.toml");
    PathBuf::from(name)
}

impl Context {
    pub fn new(command: &'static str, argv: Vec<String>, cfg: OptimizationConfig) -> Self {
        Context {
            command,
            argv,
            cfg,
            start: Instant::now(),
        }
    }

    pub fn manifest(&self) -> RunManifest {
        RunManifest {
            command: self.command.to_string(),
            argv: self.argv.clone(),
            seed: self.cfg.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds: self.start.elapsed().as_secs_f64(),
        }
    }

    /// Writes `contents` to `path` and its manifest to `path.manifest.toml`.
    pub fn write_artifact(&self, path: &Path, contents: &[u8]) -> Result<()> {
        fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
        let manifest = toml::to_string(&self.manifest())?;
        let mpath = manifest_path(path);
        fs::write(&mpath, manifest).with_context(|| format!("writing {}", mpath.display()))?;
        Ok(())
    }
}
