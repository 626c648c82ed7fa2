// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Effective decay constants Γ_f against chain length and excitation size.
//!
//! More atoms sharing the photon (larger N_i) means more initial coherence
//! and a slower collective decay - except near the boundary (N ≲ 2N_i),
//! where a short chain reverses the trend.

use std::f64::consts::PI;

use chiral_chain::{
    build_coupling_matrix, build_initial_state, evolve, fit_decay, ChainGeometry, ChiralRates,
    ExcitationPattern, TimeGrid,
};

fn gamma_f(n: usize, ni: usize) -> chiral_chain::Result<(f64, f64)> {
    let geometry = ChainGeometry::equidistant(n, PI)?;
    let coupling = build_coupling_matrix(&geometry, &ChiralRates::cascaded());
    let initial = build_initial_state(ExcitationPattern::end(ni), n)?;
    let grid = TimeGrid::new(200.0, 0.02)?;
    let trajectory = evolve(&coupling, &initial, &grid)?;
    let fit = fit_decay(&trajectory.times(), &trajectory.total_population())?;
    Ok((fit.gamma_f, fit.ci95_half_width))
}

fn main() -> chiral_chain::Result<()> {
    println!("cascaded scheme, xi = pi; Gamma_f fitted down to 1e-3 of P_tot(0)\n");
    println!("{:>4} {:>14} {:>14} {:>14}", "N", "Ni=1", "Ni=2", "Ni=3");
    for n in 1..=14usize {
        print!("{n:>4}");
        for ni in 1..=3usize {
            if ni > n {
                print!(" {:>14}", "-");
                continue;
            }
            let (gamma, ci) = gamma_f(n, ni)?;
            print!(" {gamma:>7.4}±{ci:<6.4}");
        }
        println!();
    }
    println!("\nnote the N = 2 boundary reversal: the fully excited pair");
    println!("radiates faster than the single seed, and the trend only");
    println!("settles once N is a few times N_i.");
    Ok(())
}
