// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Spectral diagnostics of the coupling matrix.
//!
//! V is non-normal whenever γ_L ≠ γ_R and defective in the cascaded limit,
//! so these routines are diagnostics only - the dynamics never relies on an
//! eigendecomposition. Defectiveness is reported as a numerical judgment:
//! the minimum singular value of the (column-normalized) eigenvector matrix
//! against an explicit tolerance. Eigenvalues of a defective matrix are
//! intrinsically ill-conditioned (perturbations scatter them by roughly
//! ε^{1/k} for a k-fold Jordan block); their sum, the trace, stays sharp.

use faer::Mat;
use num_complex::Complex64;

use crate::chain::CouplingMatrix;
use crate::error::{Error, Result};

/// Eigenvalues plus the conditioning evidence behind the `defective` verdict.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// Sorted by real part ascending (imaginary part breaks ties).
    pub eigenvalues: Vec<Complex64>,
    /// Smallest singular value of the column-normalized eigenvector matrix.
    pub min_singular_value: f64,
    pub defective: bool,
    /// Threshold the verdict was taken against.
    pub tolerance: f64,
}

/// Default defectiveness tolerance for an N×N matrix.
pub fn default_tolerance(n: usize) -> f64 {
    1e-8 * n as f64
}

fn to_faer(matrix: &CouplingMatrix) -> Mat<Complex64> {
    let a = matrix.as_array();
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[[i, j]])
}

fn sort_eigenvalues(mut values: Vec<Complex64>) -> Vec<Complex64> {
    values.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    values
}

/// Eigenvalues of the general complex matrix V, sorted by real part.
pub fn eigenvalues(coupling: &CouplingMatrix) -> Result<Vec<Complex64>> {
    let values = to_faer(coupling)
        .eigenvalues()
        .map_err(|e| Error::Numerical {
            context: "eigenvalues",
            reason: format!("eigensolver failed: {e:?}"),
        })?;
    Ok(sort_eigenvalues(values))
}

/// Eigen-decompose V and judge defectiveness from the conditioning of the
/// eigenvector matrix. `tolerance` defaults to [`default_tolerance`].
pub fn defectiveness(coupling: &CouplingMatrix, tolerance: Option<f64>) -> Result<SpectralReport> {
    let n = coupling.dim();
    let tolerance = tolerance.unwrap_or_else(|| default_tolerance(n));
    if !(tolerance > 0.0) {
        return Err(Error::Numerical {
            context: "defectiveness",
            reason: format!("tolerance must be > 0, got {tolerance}"),
        });
    }

    let decomposition = to_faer(coupling).eigen().map_err(|e| Error::Numerical {
        context: "defectiveness",
        reason: format!("eigensolver failed: {e:?}"),
    })?;

    let raw = decomposition.U();
    let mut vectors = Mat::<Complex64>::zeros(n, n);
    let mut any_zero_column = false;
    for j in 0..n {
        let norm: f64 = (0..n).map(|i| raw[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            any_zero_column = true;
            continue;
        }
        for i in 0..n {
            vectors[(i, j)] = raw[(i, j)] / norm;
        }
    }

    let min_singular_value = if any_zero_column {
        0.0
    } else {
        let singular = vectors.singular_values().map_err(|e| Error::Numerical {
            context: "defectiveness",
            reason: format!("svd failed: {e:?}"),
        })?;
        singular.iter().copied().fold(f64::INFINITY, f64::min)
    };

    let eigenvalues = sort_eigenvalues(
        (0..n).map(|i| decomposition.S()[i]).collect::<Vec<_>>(),
    );

    Ok(SpectralReport {
        eigenvalues,
        min_singular_value,
        defective: min_singular_value < tolerance,
        tolerance,
    })
}

/// Frobenius norm of the commutator VV† − V†V; zero exactly for normal
/// matrices, strictly positive for any chiral chain with γ_L ≠ γ_R, N ≥ 2.
pub fn non_normality(coupling: &CouplingMatrix) -> f64 {
    let v = coupling.as_array();
    let vdag = v.t().mapv(|z| z.conj());
    let forward = v.dot(&vdag);
    let backward = vdag.dot(v);
    (&forward - &backward)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}
