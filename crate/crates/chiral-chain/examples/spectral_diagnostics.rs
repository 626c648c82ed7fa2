// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Spectral structure of the coupling matrix across the chirality range.
//!
//! Reciprocal coupling at ξ = π is real symmetric: one superradiant mode at
//! −γN and an (N−1)-dimensional decoherence-free subspace. Any rate
//! imbalance makes V non-normal, and the cascaded limit is defective - no
//! complete eigenvector basis exists, which is why the dynamics never goes
//! through an eigendecomposition.

use std::f64::consts::PI;

use chiral_chain::{
    build_coupling_matrix, defectiveness, eigenvalues, non_normality, ChainGeometry, ChiralRates,
};

fn main() -> chiral_chain::Result<()> {
    // Two-atom reciprocal chain against the analytic pair γ(±e^{−iξ} − 1).
    let xi = 1.1;
    let geometry = ChainGeometry::equidistant(2, xi)?;
    let coupling = build_coupling_matrix(&geometry, &ChiralRates::reciprocal(1.0)?);
    println!("N = 2 reciprocal, xi = {xi}:");
    for z in eigenvalues(&coupling)? {
        println!("  lambda = {:+.6} {:+.6}i", z.re, z.im);
    }
    let phase = num_complex::Complex64::new(0.0, -xi).exp();
    println!(
        "  analytic: {:+.6} {:+.6}i and {:+.6} {:+.6}i",
        (phase - 1.0).re,
        (phase - 1.0).im,
        (-phase - 1.0).re,
        (-phase - 1.0).im
    );

    // Mirror spacing: a single bright mode.
    let n = 10;
    let geometry = ChainGeometry::equidistant(n, PI)?;
    let coupling = build_coupling_matrix(&geometry, &ChiralRates::reciprocal(1.0)?);
    let spectrum = eigenvalues(&coupling)?;
    println!("\nN = {n} reciprocal at xi = pi:");
    println!(
        "  most subradiant eigenvalue magnitude: {:.2e} (decoherence-free subspace)",
        spectrum[n - 1].norm()
    );
    println!("  superradiant eigenvalue: {:+.4} (expected {})", spectrum[0].re, -(n as f64));

    // Sweep the directionality and watch normality break.
    println!("\nnon-normality ||VV+ - V+V||_F and defectiveness across directionality D:");
    for gamma_left in [1.0, 0.7, 0.4, 0.1, 0.0] {
        let rates = ChiralRates::new(gamma_left, 1.0)?;
        let geometry = ChainGeometry::equidistant(8, PI)?;
        let coupling = build_coupling_matrix(&geometry, &rates);
        let report = defectiveness(&coupling, None)?;
        println!(
            "  D = {:+.2}: non-normality {:9.3e}, min sv of eigenvectors {:9.3e} -> defective: {}",
            rates.directionality(),
            non_normality(&coupling),
            report.min_singular_value,
            report.defective
        );
    }
    Ok(())
}
