// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Artifact files and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Named file contents, held in memory until the run has succeeded.
#[derive(Debug, Default)]
pub struct Artifacts {
    files: Vec<(String, String)>,
}

impl Artifacts {
    pub fn add(&mut self, name: impl Into<String>, body: String) {
        self.files.push((name.into(), body));
    }

    pub fn add_json<S: Serialize>(&mut self, name: impl Into<String>, value: &S) {
        let mut body = serde_json::to_string_pretty(value).expect("report values serialize");
        body.push('\n');
        self.add(name, body);
    }

    pub fn names(&self) -> Vec<String> {
        self.files.iter().map(|(n, _)| n.clone()).collect()
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub experiment: String,
    pub config_sha256: String,
    pub seed: u64,
    pub artifacts: Vec<String>,
    pub wall_clock_seconds: f64,
    pub version: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Write-then-rename so readers never see a partial file.
pub fn write_atomic(dir: &Path, name: &str, body: &[u8]) -> Result<PathBuf, CliError> {
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, body).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, &target).map_err(|e| CliError::io(&target, e))?;
    Ok(target)
}

/// Writes every artifact, then the manifest last.
pub fn write_all(
    dir: &Path,
    artifacts: &Artifacts,
    manifest: &RunManifest,
) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for (name, body) in &artifacts.files {
        write_atomic(dir, name, body.as_bytes())?;
    }
    let mut m = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    m.push('\n');
    write_atomic(dir, "manifest.json", m.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn writes_and_leaves_no_temp_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut a = Artifacts::default();
        a.add("x.csv", "a,b\n1,2\n".into());
        let m = RunManifest {
            experiment: "ite".into(),
            config_sha256: sha256_hex(b"{}"),
            seed: 1,
            artifacts: a.names(),
            wall_clock_seconds: 0.0,
            version: "0".into(),
        };
        write_all(dir.path(), &a, &m).unwrap();
        let mut names: Vec<String> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        assert_eq!(names, ["manifest.json", "x.csv"]);
    }
}
