// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Light-induced atom-atom correlations C_μν = |A_μ* A_ν|².
//!
//! With a single seeded atom the correlations build up as the excitation
//! travels. In the cascaded chain neighbor correlations come and go in
//! well-separated bursts; with a backward channel they persist far longer,
//! the onset of long-range correlated excitations.

use std::f64::consts::PI;

use chiral_chain::{
    build_coupling_matrix, build_initial_state, correlations, evolve, ChainGeometry, ChiralRates,
    ExcitationPattern, TimeGrid,
};

fn main() -> chiral_chain::Result<()> {
    let n = 6;
    let grid = TimeGrid::new(300.0, 0.01)?;
    let threshold = 1e-4;
    let pairs = [(3usize, 4usize), (4, 5), (0, 2), (2, 4)];

    for (label, gamma_left) in [("cascaded", 0.0), ("non-cascaded", 0.5)] {
        let geometry = ChainGeometry::equidistant(n, PI)?;
        let rates = ChiralRates::new(gamma_left, 1.0)?;
        let coupling = build_coupling_matrix(&geometry, &rates);
        let initial = build_initial_state(ExcitationPattern::end(1), n)?;
        let trajectory = evolve(&coupling, &initial, &grid)?;

        println!("{label} (gamma_L = {gamma_left}), N = {n}, N_i = 1:");
        for &(mu, nu) in &pairs {
            let mut above = 0usize;
            let mut last = 0.0f64;
            let mut peak = 0.0f64;
            for k in 0..grid.n_points() {
                let c = correlations(trajectory.amplitude_at(k)).get(mu, nu);
                peak = peak.max(c);
                if c > threshold {
                    above += 1;
                    last = k as f64 * grid.dt();
                }
            }
            println!(
                "  C_{}{}: peak {peak:.3e}, above {threshold:.0e} for {:6.1}/gamma (last at t = {last:.1})",
                mu + 1,
                nu + 1,
                above as f64 * grid.dt()
            );
        }
        println!();
    }
    println!("nearest-neighbor correlations at the far end (C_45, C_56) stay");
    println!("alive much longer once reflection is allowed.");
    Ok(())
}
