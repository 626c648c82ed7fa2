// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Run manifests: the full resolved configuration(s), master seed, tool
//! version, wall-clock duration, and headline results of one invocation.
//! Re-running any embedded config with the same seed reproduces the CSVs
//! byte for byte.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::io::config::Config;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Every resolved configuration this invocation executed, in order.
    pub configs: Vec<Config>,
    pub master_seed: u64,
    /// Which physical rate the time unit 1/γ refers to.
    pub gamma_reference: String,
    pub duration_seconds: f64,
    pub outputs: Vec<String>,
    pub results: Map<String, Value>,
}

/// Accumulates outputs and results while a driver runs, then writes exactly
/// one manifest into the output directory.
pub struct RunRecorder {
    started: Instant,
    command: String,
    configs: Vec<Config>,
    master_seed: u64,
    gamma_reference: String,
    outputs: Vec<String>,
    results: Map<String, Value>,
}

impl RunRecorder {
    pub fn new(command: &str, master_seed: u64) -> Self {
        Self {
            started: Instant::now(),
            command: command.to_string(),
            configs: Vec::new(),
            master_seed,
            gamma_reference: "gamma_R".to_string(),
            outputs: Vec::new(),
            results: Map::new(),
        }
    }

    pub fn record_config(&mut self, cfg: &Config) {
        if cfg.gamma_right == 0.0 {
            self.gamma_reference = "gamma_L".to_string();
        }
        self.configs.push(cfg.clone());
    }

    pub fn record_output(&mut self, path: &Path, summary: &str) {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        println!("wrote {} ({summary})", path.display());
        self.outputs.push(name);
    }

    pub fn record_result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    /// Write `manifest.json` into `out_dir` and return the manifest.
    pub fn finish(self, out_dir: &Path) -> Result<RunManifest> {
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: self.command,
            configs: self.configs,
            master_seed: self.master_seed,
            gamma_reference: self.gamma_reference,
            duration_seconds: self.started.elapsed().as_secs_f64(),
            outputs: self.outputs,
            results: self.results,
        };
        let path = manifest_path(out_dir);
        let text = serde_json::to_string_pretty(&manifest)?;
        fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))?;
        println!("wrote {} (run manifest)", path.display());
        Ok(manifest)
    }
}

pub fn manifest_path(out_dir: &Path) -> PathBuf {
    out_dir.join(MANIFEST_FILE)
}
