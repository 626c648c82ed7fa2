// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Numerical propagation against the exact cascaded closed forms.
//!
//! In the uni-directional limit (γ_L = 0) every amplitude is a polynomial
//! times e^{−t/2} and a phase. This example evolves an N = 6 chain with the
//! matrix exponential and compares each atom against its closed form, then
//! prints the zero crossings of the prefactor polynomials, which mark the
//! ordered population exchanges between neighbors and interlace from one
//! atom to the next.

use std::f64::consts::PI;

use chiral_chain::{
    build_coupling_matrix, build_initial_state, cascaded_oracle, evolve, zero_crossings,
    ChainGeometry, ChiralRates, ExcitationPattern, TimeGrid,
};

fn main() -> chiral_chain::Result<()> {
    let n = 6;
    let xi = PI;
    let geometry = ChainGeometry::equidistant(n, xi)?;
    let coupling = build_coupling_matrix(&geometry, &ChiralRates::cascaded());
    let initial = build_initial_state(ExcitationPattern::end(1), n)?;
    let grid = TimeGrid::new(20.0, 0.01)?;
    let trajectory = evolve(&coupling, &initial, &grid)?;

    let times = trajectory.times();
    let mut worst = 0.0f64;
    for m in 1..=n {
        let oracle = cascaded_oracle(n, 1, xi, m)?;
        for (k, &t) in times.iter().enumerate() {
            let numeric = trajectory.amplitude_at(k)[m - 1];
            let diff = (numeric - oracle.amplitude(t)).norm();
            worst = worst.max(diff);
        }
    }
    println!("N = {n}, N_i = 1, xi = pi, t <= 20");
    println!("max |A_numeric - A_closed_form| over all atoms and times: {worst:.2e}");

    println!("\nzero crossings of the prefactor polynomials (population exchanges):");
    let mut previous: Option<Vec<f64>> = None;
    for m in 1..=n {
        let oracle = cascaded_oracle(n, 1, xi, m)?;
        let zeros = zero_crossings(&oracle)?;
        let rendered: Vec<String> = zeros.iter().map(|z| format!("{z:.4}")).collect();
        println!("  atom {m}: [{}]", rendered.join(", "));
        if let Some(prev) = &previous {
            let interlaced = prev
                .iter()
                .enumerate()
                .all(|(j, &t)| zeros[j] < t && t < zeros[j + 1]);
            if !prev.is_empty() {
                println!("          interlaces with atom {}: {interlaced}", m - 1);
            }
        }
        previous = Some(zeros);
    }

    println!("\nsecond atom population P_2(t) = t^2 e^(-t): peak at t = 2");
    let p2 = trajectory.population_series(1);
    let (argmax, peak) = p2
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    println!("  numerical peak {peak:.6} at t = {:.2}", times[argmax]);
    Ok(())
}
