// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// `path` is the dotted config field at fault; empty for the document root.
    Config {
        path: String,
        msg: String,
    },
    Engine(lyapite::Error),
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(path: impl Into<String>, msg: impl Into<String>) -> Self {
        CliError::Config {
            path: path.into(),
            msg: msg.into(),
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Engine(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config { path, msg } if path.is_empty() => write!(f, "config error: {msg}"),
            CliError::Config { path, msg } => write!(f, "config error at {path}: {msg}"),
            CliError::Engine(e) => write!(f, "engine error: {e}"),
            CliError::Io { path, source } => write!(f, "I/O error on {path}: {source}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<lyapite::Error> for CliError {
    fn from(e: lyapite::Error) -> Self {
        match e {
            lyapite::Error::Io(source) => CliError::Io {
                path: String::new(),
                source,
            },
            other => CliError::Engine(other),
        }
    }
}
