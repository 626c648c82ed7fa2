// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: one JSON document per run.
//!
//! Angle fields accept either a number (radians) or a "pi"-literal string
//! ("pi", "2pi", "pi/2", "3*pi/4", "0.65pi") so that π-multiples survive
//! serialization without decimal truncation. Unknown keys are rejected.

use std::fs;
use std::path::Path;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize};

use crate::chain::{ChiralRates, ExcitationPattern, FluctuationLaw, Placement};
use crate::disorder::{
    EnsembleConfig, DEFAULT_BATCH_SIZE, DEFAULT_CONVERGENCE_TOL, DEFAULT_MAX_REALIZATIONS,
};
use crate::dynamics::TimeGrid;
use crate::error::{Error, Result};

pub const DEFAULT_DT: f64 = 0.01;
/// Default horizon for end-excitation cascaded runs.
pub const DEFAULT_T_END_CASCADED: f64 = 100.0;
/// Default horizon otherwise: two-way couplings decay far more slowly.
pub const DEFAULT_T_END_NONCASCADED: f64 = 500.0;

/// An angle that may arrive as a number or a pi-literal string.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Angle(f64);

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(x) => Ok(Angle(x)),
            Raw::Text(s) => parse_angle(&s).map(Angle).map_err(D::Error::custom),
        }
    }
}

/// Parse "pi", "2pi", "2*pi", "pi/2", "3pi/4", or a plain number.
pub fn parse_angle(text: &str) -> std::result::Result<f64, String> {
    let s: String = text.to_ascii_lowercase().split_whitespace().collect();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    if let Some(pos) = s.find("pi") {
        let (before, after) = (&s[..pos], &s[pos + 2..]);
        let factor = match before.trim_end_matches('*') {
            "" => 1.0,
            "-" => -1.0,
            num => num
                .parse::<f64>()
                .map_err(|_| format!("bad multiplier in angle `{text}`"))?,
        };
        let divisor = match after.strip_prefix('/') {
            None if after.is_empty() => 1.0,
            None => return Err(format!("unexpected trailing `{after}` in angle `{text}`")),
            Some(d) => {
                let d: f64 = d
                    .parse()
                    .map_err(|_| format!("bad divisor in angle `{text}`"))?;
                if d == 0.0 {
                    return Err(format!("zero divisor in angle `{text}`"));
                }
                d
            }
        };
        Ok(factor * std::f64::consts::PI / divisor)
    } else {
        s.parse::<f64>()
            .map_err(|_| format!("cannot parse angle `{text}`"))
    }
}

/// The on-disk schema. Only `N` is required; everything else has defaults.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(rename = "N")]
    n_atoms: usize,
    xi: Option<Angle>,
    #[serde(rename = "gammaL")]
    gamma_left: Option<f64>,
    #[serde(rename = "gammaR")]
    gamma_right: Option<f64>,
    #[serde(rename = "Ni")]
    n_excited: Option<usize>,
    placement: Option<Placement>,
    dt: Option<f64>,
    t_end: Option<f64>,
    #[serde(rename = "f")]
    fluctuation: Option<f64>,
    law: Option<FluctuationLaw>,
    seed: Option<u64>,
    batch_size: Option<usize>,
    max_realizations: Option<usize>,
    convergence_tol: Option<f64>,
}

/// Fully resolved configuration. Serializes in the same schema it parses
/// from, so a manifest's embedded config re-runs as-is.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Config {
    #[serde(rename = "N")]
    pub n_atoms: usize,
    pub xi: f64,
    #[serde(rename = "gammaL")]
    pub gamma_left: f64,
    #[serde(rename = "gammaR")]
    pub gamma_right: f64,
    #[serde(rename = "Ni")]
    pub n_excited: usize,
    pub placement: Placement,
    pub dt: f64,
    pub t_end: f64,
    #[serde(rename = "f")]
    pub fluctuation: f64,
    pub law: FluctuationLaw,
    pub seed: u64,
    pub batch_size: usize,
    pub max_realizations: usize,
    pub convergence_tol: f64,
}

impl Config {
    pub fn rates(&self) -> Result<ChiralRates> {
        ChiralRates::new(self.gamma_left, self.gamma_right)
            .map_err(|e| Error::config("gammaL/gammaR", e.to_string()))
    }

    pub fn pattern(&self) -> ExcitationPattern {
        ExcitationPattern {
            n_excited: self.n_excited,
            placement: self.placement,
        }
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.t_end, self.dt).map_err(|e| Error::config("t_end/dt", e.to_string()))
    }

    pub fn ensemble(&self) -> Result<EnsembleConfig> {
        let mut cfg = EnsembleConfig::new(
            self.n_atoms,
            self.xi,
            self.rates()?,
            self.pattern(),
            self.grid()?,
            self.fluctuation,
            self.seed,
        );
        cfg.law = self.law;
        cfg.batch_size = self.batch_size;
        cfg.max_realizations = self.max_realizations;
        cfg.convergence_tol = self.convergence_tol;
        Ok(cfg)
    }

    fn validate(self) -> Result<Self> {
        if self.n_atoms == 0 {
            return Err(Error::config("N", "need at least one atom"));
        }
        if !(self.xi > 0.0) {
            return Err(Error::config("xi", format!("must be > 0, got {}", self.xi)));
        }
        self.rates()?;
        if self.n_excited == 0 {
            return Err(Error::config("Ni", "need at least one excited atom"));
        }
        self.pattern()
            .validate(self.n_atoms)
            .map_err(|e| Error::config("Ni/placement", e.to_string()))?;
        self.grid()?;
        if !(self.fluctuation >= 0.0) || self.fluctuation >= 1.0 {
            return Err(Error::config(
                "f",
                format!("must lie in [0, 1), got {}", self.fluctuation),
            ));
        }
        if self.batch_size == 0 {
            return Err(Error::config("batch_size", "must be >= 1"));
        }
        if self.max_realizations == 0 {
            return Err(Error::config("max_realizations", "must be >= 1"));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(Error::config(
                "convergence_tol",
                format!("must be > 0, got {}", self.convergence_tol),
            ));
        }
        Ok(self)
    }
}

fn resolve(file: ConfigFile) -> Result<Config> {
    let gamma_left = file.gamma_left.unwrap_or(0.0);
    let gamma_right = file.gamma_right.unwrap_or(1.0);
    let t_end = file.t_end.unwrap_or(if gamma_left == 0.0 {
        DEFAULT_T_END_CASCADED
    } else {
        DEFAULT_T_END_NONCASCADED
    });
    Config {
        n_atoms: file.n_atoms,
        xi: file.xi.map(|a| a.0).unwrap_or(std::f64::consts::PI),
        gamma_left,
        gamma_right,
        n_excited: file.n_excited.unwrap_or(1),
        placement: file.placement.unwrap_or_default(),
        dt: file.dt.unwrap_or(DEFAULT_DT),
        t_end,
        fluctuation: file.fluctuation.unwrap_or(0.0),
        law: file.law.unwrap_or_default(),
        seed: file.seed.unwrap_or(0),
        batch_size: file.batch_size.unwrap_or(DEFAULT_BATCH_SIZE),
        max_realizations: file.max_realizations.unwrap_or(DEFAULT_MAX_REALIZATIONS),
        convergence_tol: file.convergence_tol.unwrap_or(DEFAULT_CONVERGENCE_TOL),
    }
    .validate()
}

/// Parse and validate a JSON config document.
pub fn parse_config_str(text: &str) -> Result<Config> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Config {
        field: "<document>".into(),
        reason: e.to_string(),
    })?;
    resolve(file)
}

/// Parse and validate the config file at `path`.
pub fn parse_config(path: &Path) -> Result<Config> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text)
}
