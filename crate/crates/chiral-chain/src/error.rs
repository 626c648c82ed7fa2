// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Crate-wide error type.
//!
//! Every failure is a single-line, machine-parsable message; the CLI prints
//! them verbatim on stderr with a nonzero exit code.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid rates: {0}")]
    InvalidRates(String),

    #[error("invalid excitation pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("horizon too short: {0}")]
    HorizonTooShort(String),

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    #[error("numerical failure in {context}: {reason}")]
    Numerical {
        context: &'static str,
        reason: String,
    },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("realization {index}: {source}")]
    Realization {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(field: &str, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
