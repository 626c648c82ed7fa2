// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Configuration, experiment presets, and data export.

pub mod config;
pub mod csv;
pub mod experiments;
pub mod manifest;
pub mod svg;

pub use config::{parse_config, parse_config_str, Config};
pub use csv::{format_float, render_csv, write_csv, CsvValue};
pub use experiments::{
    run_disorder, run_experiment, run_simulate, run_spectrum, run_sweep, OutputOptions, Overrides,
    Preset,
};
pub use manifest::{manifest_path, RunManifest, RunRecorder, MANIFEST_FILE};
pub use svg::SvgPlot;
