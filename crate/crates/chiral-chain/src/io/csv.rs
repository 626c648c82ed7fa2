// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! CSV export: header row, '.' decimal separator, floats at full double
//! precision (17 significant digits), newline-terminated final row.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A cell value; integers print without an exponent.
#[derive(Debug, Clone, Copy)]
pub enum CsvValue {
    Int(i64),
    Float(f64),
}

impl From<f64> for CsvValue {
    fn from(x: f64) -> Self {
        CsvValue::Float(x)
    }
}

impl From<i64> for CsvValue {
    fn from(x: i64) -> Self {
        CsvValue::Int(x)
    }
}

impl From<usize> for CsvValue {
    fn from(x: usize) -> Self {
        CsvValue::Int(x as i64)
    }
}

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn render(header: &[&str], rows: &[Vec<CsvValue>]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyInput("csv rows"));
    }
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::DimensionMismatch {
                expected: header.len(),
                got: row.len(),
            });
        }
        let cells: Vec<String> = row
            .iter()
            .map(|v| match v {
                CsvValue::Int(i) => i.to_string(),
                CsvValue::Float(x) => format_float(*x),
            })
            .collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    Ok(text)
}

/// Write a CSV file; the parent directory must already exist.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<CsvValue>]) -> Result<()> {
    let text = render(header, rows)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Render to bytes without touching the filesystem (used by byte-identity
/// checks).
pub fn render_csv(header: &[&str], rows: &[Vec<CsvValue>]) -> Result<Vec<u8>> {
    render(header, rows).map(String::into_bytes)
}

/// Convenience: all-float rows from column slices of equal length.
pub fn float_rows(columns: &[&[f64]]) -> Vec<Vec<CsvValue>> {
    let n = columns.first().map(|c| c.len()).unwrap_or(0);
    (0..n)
        .map(|k| columns.iter().map(|c| CsvValue::Float(c[k])).collect())
        .collect()
}
