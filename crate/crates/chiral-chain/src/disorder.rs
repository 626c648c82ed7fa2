// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded Monte Carlo over frozen position fluctuations.
//!
//! Each realization draws its own geometry from a per-index seed, evolves it,
//! and contributes its P_tot(t) series to running statistics. Realizations
//! are computed in parallel but merged in fixed index order, so the result is
//! bit-identical for any worker count. Convergence is declared when the
//! sup-norm change of the running mean between consecutive batches drops
//! below the configured tolerance.

use rayon::prelude::*;

use crate::chain::{
    build_coupling_matrix, build_initial_state, build_positions_with_law, ChiralRates,
    ExcitationPattern, FluctuationLaw,
};
use crate::dynamics::{evolve_total_population, TimeGrid};
use crate::error::{Error, Result};

pub const DEFAULT_BATCH_SIZE: usize = 500;
pub const DEFAULT_MAX_REALIZATIONS: usize = 10_000;
pub const DEFAULT_CONVERGENCE_TOL: f64 = 1e-3;

/// Realizations evaluated in parallel between ordered merges.
const MERGE_CHUNK: usize = 64;

/// Deterministic, collision-free per-realization seed.
///
/// SplitMix64-style avalanche of master + (index+1)·φ. For a fixed master the
/// map index → seed is injective (odd multiplier, bijective finalizer), so
/// distinct realizations never share a seed, independent of execution order.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Everything a disorder ensemble needs, including its stopping rule.
#[derive(Debug, Clone)]
pub struct EnsembleConfig {
    pub n_atoms: usize,
    pub xi: f64,
    pub rates: ChiralRates,
    pub pattern: ExcitationPattern,
    pub grid: TimeGrid,
    pub fluctuation: f64,
    pub law: FluctuationLaw,
    pub batch_size: usize,
    pub max_realizations: usize,
    pub convergence_tol: f64,
    pub master_seed: u64,
}

impl EnsembleConfig {
    pub fn new(
        n_atoms: usize,
        xi: f64,
        rates: ChiralRates,
        pattern: ExcitationPattern,
        grid: TimeGrid,
        fluctuation: f64,
        master_seed: u64,
    ) -> Self {
        Self {
            n_atoms,
            xi,
            rates,
            pattern,
            grid,
            fluctuation,
            law: FluctuationLaw::Uniform,
            batch_size: DEFAULT_BATCH_SIZE,
            max_realizations: DEFAULT_MAX_REALIZATIONS,
            convergence_tol: DEFAULT_CONVERGENCE_TOL,
            master_seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::Config {
                field: "batch_size".into(),
                reason: "must be >= 1".into(),
            });
        }
        if !(self.convergence_tol > 0.0) {
            return Err(Error::Config {
                field: "convergence_tol".into(),
                reason: format!("must be > 0, got {}", self.convergence_tol),
            });
        }
        if self.max_realizations == 0 {
            return Err(Error::Config {
                field: "max_realizations".into(),
                reason: "must be >= 1".into(),
            });
        }
        self.pattern.validate(self.n_atoms)?;
        // Fail early on geometry parameters instead of inside realization 0.
        build_positions_with_law(self.n_atoms, self.xi, self.fluctuation, 0, self.law)?;
        Ok(())
    }
}

/// Converged (or capped) ensemble statistics of P_tot.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub realizations_used: usize,
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub converged: bool,
    /// Sup-norm change of the running mean after each batch comparison.
    pub batch_deltas: Vec<f64>,
}

/// One realization: seeded geometry, evolve, return P_tot(t).
fn realization_series(cfg: &EnsembleConfig, index: usize) -> Result<Vec<f64>> {
    let seed = derive_seed(cfg.master_seed, index as u64);
    let geometry =
        build_positions_with_law(cfg.n_atoms, cfg.xi, cfg.fluctuation, seed, cfg.law)?;
    let coupling = build_coupling_matrix(&geometry, &cfg.rates);
    let initial = build_initial_state(cfg.pattern, cfg.n_atoms)?;
    evolve_total_population(&coupling, &initial, &cfg.grid)
}

/// Run the ensemble: batches of realizations, Welford accumulation in index
/// order, stop on convergence of the running mean or at the cap.
pub fn run_ensemble(cfg: &EnsembleConfig) -> Result<EnsembleResult> {
    cfg.validate()?;
    let n_points = cfg.grid.n_points();

    let mut mean = vec![0.0f64; n_points];
    let mut m2 = vec![0.0f64; n_points];
    let mut count = 0usize;
    let mut previous_mean: Option<Vec<f64>> = None;
    let mut batch_deltas = Vec::new();
    let mut converged = false;

    while count < cfg.max_realizations && !converged {
        let batch_end = (count + cfg.batch_size).min(cfg.max_realizations);
        let mut next = count;
        while next < batch_end {
            let chunk_end = (next + MERGE_CHUNK).min(batch_end);
            let series: Vec<(usize, Result<Vec<f64>>)> = (next..chunk_end)
                .into_par_iter()
                .map(|idx| (idx, realization_series(cfg, idx)))
                .collect();
            for (idx, outcome) in series {
                let ptot = outcome.map_err(|e| Error::Realization {
                    index: idx,
                    source: Box::new(e),
                })?;
                count += 1;
                let inv = 1.0 / count as f64;
                for k in 0..n_points {
                    let delta = ptot[k] - mean[k];
                    mean[k] += delta * inv;
                    m2[k] += delta * (ptot[k] - mean[k]);
                }
            }
            next = chunk_end;
        }

        if let Some(prev) = &previous_mean {
            let delta = mean
                .iter()
                .zip(prev)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            batch_deltas.push(delta);
            if delta < cfg.convergence_tol {
                converged = true;
            }
        }
        previous_mean = Some(mean.clone());
    }

    let std = if count >= 2 {
        let denom = (count - 1) as f64;
        m2.iter().map(|&s| (s.max(0.0) / denom).sqrt()).collect()
    } else {
        vec![0.0; n_points]
    };

    Ok(EnsembleResult {
        realizations_used: count,
        times: cfg.grid.times(),
        mean,
        std,
        converged,
        batch_deltas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_coupling_matrix, build_initial_state, build_positions};
    use approx::assert_abs_diff_eq;
    use std::collections::HashSet;
    use std::f64::consts::PI;

    #[test]
    fn seeds_are_deterministic_and_collision_free() {
        assert_eq!(derive_seed(42, 7), derive_seed(42, 7));
        let mut seen = HashSet::new();
        for i in 0..1_000_000u64 {
            assert!(seen.insert(derive_seed(1234, i)), "collision at index {i}");
        }
        for i in 0..10_000u64 {
            assert_ne!(derive_seed(1, i), derive_seed(2, i));
        }
    }

    fn tiny_config(fluctuation: f64, master_seed: u64) -> EnsembleConfig {
        let mut cfg = EnsembleConfig::new(
            4,
            PI,
            ChiralRates::cascaded(),
            ExcitationPattern::end(2),
            TimeGrid::new(4.0, 0.05).unwrap(),
            fluctuation,
            master_seed,
        );
        cfg.batch_size = 8;
        cfg.max_realizations = 64;
        cfg
    }

    #[test]
    fn zero_fluctuation_collapses_to_the_deterministic_run() {
        let cfg = tiny_config(0.0, 5);
        let result = run_ensemble(&cfg).unwrap();
        assert!(result.converged);
        // Converged right after the first comparison: exactly two batches.
        assert_eq!(result.realizations_used, 2 * cfg.batch_size);
        assert_eq!(result.batch_deltas, vec![0.0]);
        for s in &result.std {
            assert_eq!(*s, 0.0);
        }
        let geom = build_positions(4, PI, 0.0, 0).unwrap();
        let v = build_coupling_matrix(&geom, &cfg.rates);
        let a0 = build_initial_state(cfg.pattern, 4).unwrap();
        let direct = evolve_total_population(&v, &a0, &cfg.grid).unwrap();
        assert_eq!(result.mean, direct);
    }

    #[test]
    fn result_is_bit_identical_across_worker_counts() {
        let cfg = tiny_config(0.25, 99);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_ensemble(&cfg))
            .unwrap();
        let several = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_ensemble(&cfg))
            .unwrap();
        assert_eq!(single, several);
    }

    #[test]
    fn mean_population_never_increases() {
        let cfg = tiny_config(0.3, 11);
        let result = run_ensemble(&cfg).unwrap();
        for w in result.mean.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert_abs_diff_eq!(result.mean[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn capped_runs_report_not_converged() {
        let mut cfg = tiny_config(0.4, 3);
        cfg.batch_size = 4;
        cfg.max_realizations = 8;
        cfg.convergence_tol = 1e-12;
        let result = run_ensemble(&cfg).unwrap();
        assert!(!result.converged);
        assert_eq!(result.realizations_used, 8);
    }

    #[test]
    fn invalid_configs_are_rejected_before_running() {
        let mut cfg = tiny_config(0.2, 1);
        cfg.batch_size = 0;
        assert!(run_ensemble(&cfg).is_err());

        let mut cfg = tiny_config(0.2, 1);
        cfg.convergence_tol = 0.0;
        assert!(run_ensemble(&cfg).is_err());

        let mut cfg = tiny_config(1.2, 1);
        cfg.fluctuation = 1.2;
        assert!(run_ensemble(&cfg).is_err());

        let mut cfg = tiny_config(0.2, 1);
        cfg.pattern = ExcitationPattern::central(3);
        assert!(run_ensemble(&cfg).is_err());
    }
}
