// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded Monte Carlo over frozen position fluctuations.
//!
//! Each realization perturbs every lattice site by a bounded random phase
//! and evolves the same initial state; the ensemble converges batch by
//! batch, deterministically for a fixed master seed regardless of how many
//! worker threads run it. The cascaded staircase survives 20% fluctuations;
//! the two-way scheme's early plateaus wash out at 2%.

use std::f64::consts::PI;

use chiral_chain::analysis::{DEFAULT_EPS_SLOPE, DEFAULT_MIN_WIDTH};
use chiral_chain::{
    detect_plateaus, run_ensemble, ChiralRates, EnsembleConfig, ExcitationPattern, TimeGrid,
};

fn main() -> chiral_chain::Result<()> {
    for (label, gamma_left, fluctuation, t_end) in [
        ("cascaded, f = 0.20", 0.0, 0.20, 100.0),
        ("non-cascaded, f = 0.02", 0.5, 0.02, 250.0),
    ] {
        let mut cfg = EnsembleConfig::new(
            12,
            PI,
            ChiralRates::new(gamma_left, 1.0)?,
            ExcitationPattern::end(3),
            TimeGrid::new(t_end, 0.02)?,
            fluctuation,
            20260808,
        );
        cfg.batch_size = 200;
        cfg.max_realizations = 1600;
        cfg.convergence_tol = 5e-4;

        let result = run_ensemble(&cfg)?;
        println!(
            "{label}: {} realizations, converged = {}, batch deltas {:?}",
            result.realizations_used,
            result.converged,
            result
                .batch_deltas
                .iter()
                .map(|d| format!("{d:.1e}"))
                .collect::<Vec<_>>()
        );
        let set = detect_plateaus(&result.times, &result.mean, DEFAULT_EPS_SLOPE, DEFAULT_MIN_WIDTH)?;
        if set.plateaus.is_empty() {
            println!("  mean has no plateaus left");
        }
        for p in &set.plateaus {
            println!(
                "  mean keeps a plateau [{:5.1}, {:5.1}] at level {:.3e}",
                p.t_start, p.t_end, p.mean_level
            );
        }
        let mid = result.times.len() / 2;
        println!(
            "  band at t = {:.0}: mean {:.3e} ± {:.3e} (1 sigma over realizations)\n",
            result.times[mid], result.mean[mid], result.std[mid]
        );
    }
    println!("re-running with the same master seed reproduces every digit;");
    println!("set CHIRAL_CHAIN_THREADS to change the worker count without");
    println!("changing the numbers.");
    Ok(())
}
