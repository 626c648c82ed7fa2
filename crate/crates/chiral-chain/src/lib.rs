// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Single-photon collective decay in a chirally coupled 1D atomic chain.
//!
//! Atoms along a waveguide exchange photons through infinite-range couplings
//! with independently tunable left/right decay rates γ_L, γ_R. This crate
//! builds the nonreciprocal coupling matrix, evolves the single-excitation
//! amplitudes with a precomputed matrix exponential (the matrix can be
//! defective, so no eigendecomposition is ever required), and layers the
//! observables on top: per-atom populations, atom-atom correlations,
//! emission channel rates, effective decay constants with confidence
//! intervals, excitation plateaus, spectral diagnostics, and seeded
//! Monte Carlo ensembles over frozen position disorder.
//!
//! In the cascaded limit (γ_L = 0) every amplitude has an exact closed form;
//! [`dynamics::cascaded`] provides those polynomials as an independent check
//! on the numerics.
//!
//! Start with the runnable examples:
//!
//! ```text
//! examples/
//! ├── closed_form_cascade.rs    # numerics vs. exact cascaded amplitudes
//! ├── decay_constant_sweep.rs   # Γ_f against N and N_i
//! ├── excitation_plateaus.rs    # plateau detection on both schemes
//! ├── atom_atom_correlations.rs # C_μν lifetimes, cascaded vs. two-way
//! ├── spectral_diagnostics.rs   # eigenvalues, defectiveness, normality
//! ├── central_excitation.rs     # central vs. end placement equivalence
//! └── position_disorder.rs      # seeded disorder ensembles
//! ```
//!
//! Each runs standalone: `cargo run --release --example closed_form_cascade`.
//! The `chiral-chain` binary wraps the same library behind `simulate`,
//! `sweep`, `disorder`, `spectrum`, and `reproduce` subcommands.
//!
//! Units: rates in units of the reference rate γ (γ_R unless it vanishes),
//! times dimensionless τ = γt, positions as phases k·x.

// Validation guards are written `!(x > 0.0)` on purpose: the negation is
// true for NaN, where `x <= 0.0` would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod chain;
pub mod disorder;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod spectrum;

pub use analysis::{detect_plateaus, ensemble_stats, fit_decay, DecayFit, Plateau, PlateauSet};
pub use chain::{
    build_coupling_matrix, build_initial_state, build_positions, build_positions_with_law,
    reciprocal_kernel, ChainGeometry, ChiralRates, CouplingKind, CouplingMatrix,
    ExcitationPattern, FluctuationLaw, Placement,
};
pub use disorder::{derive_seed, run_ensemble, EnsembleConfig, EnsembleResult};
pub use dynamics::cascaded::{cascaded_oracle, zero_crossings, CascadedPolynomial};
pub use dynamics::{
    channel_rates, correlations, evolve, evolve_total_population, step_propagator,
    CorrelationMatrix, TimeGrid, Trajectory,
};
pub use error::{Error, Result};
pub use spectrum::{defectiveness, eigenvalues, non_normality, SpectralReport};
