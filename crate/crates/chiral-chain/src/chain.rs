// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Chain geometries, nonreciprocal decay rates, coupling matrices, and
//! initial single-excitation states.
//!
//! Atoms sit on a line at positions x_1 < x_2 < ... < x_N. Only the
//! dimensionless phases k·x_μ enter the dynamics, so positions are stored as
//! phases (radians) and never as lengths. Rates are expressed in units of the
//! reference rate γ, which is γ_R unless γ_R = 0, in which case γ_L.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distribution family for per-atom position deviations.
///
/// `Uniform` draws δ_μ ~ U(−fξ/2, +fξ/2). `Gaussian` draws a normal deviate
/// with the same variance as the uniform law (σ = fξ/(2√3)), re-sampled until
/// it falls inside ±fξ/2 so that the ordering bound below still holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FluctuationLaw {
    #[default]
    Uniform,
    Gaussian,
}

/// Atom positions of a 1D chain, stored as phases k·x_μ.
///
/// Invariants, enforced at construction:
/// - phases strictly increasing;
/// - with `fluctuation_fraction` f = 0 the lattice is exactly equidistant,
///   phase_μ = μ·ξ;
/// - with f > 0, |phase_μ − μ·ξ| ≤ f·ξ/2 for every atom.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainGeometry {
    phases: Vec<f64>,
    nominal_spacing: f64,
    fluctuation_fraction: f64,
}

impl ChainGeometry {
    /// Exact equidistant lattice with spacing ξ, phase_μ = μ·ξ.
    pub fn equidistant(n_atoms: usize, xi: f64) -> Result<Self> {
        build_positions(n_atoms, xi, 0.0, 0)
    }

    /// Build a geometry from explicit phases. Ordering is enforced; the
    /// fluctuation bound is the caller's responsibility and recorded as-is.
    pub fn from_phases(phases: Vec<f64>, nominal_spacing: f64, fluctuation_fraction: f64) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::InvalidGeometry("need at least one atom".into()));
        }
        if !(nominal_spacing > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "nominal spacing must be > 0, got {nominal_spacing}"
            )));
        }
        if phases.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGeometry(
                "phases must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            phases,
            nominal_spacing,
            fluctuation_fraction,
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.phases.len()
    }

    /// Phases k·x_μ, strictly increasing.
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Nominal spacing ξ = k·|x_{μ,μ+1}|.
    pub fn nominal_spacing(&self) -> f64 {
        self.nominal_spacing
    }

    pub fn fluctuation_fraction(&self) -> f64 {
        self.fluctuation_fraction
    }
}

/// Place N atoms on a lattice of spacing ξ with frozen random deviations.
///
/// phase_μ = μ·ξ + δ_μ with δ_μ drawn independently per atom from the uniform
/// law (see [`build_positions_with_law`] for the Gaussian variant). f = 0
/// yields the exact lattice; any f < 1 keeps the ordering strict since
/// consecutive gaps are at least ξ(1 − f). Deterministic for a fixed seed.
pub fn build_positions(n_atoms: usize, xi: f64, fluctuation: f64, seed: u64) -> Result<ChainGeometry> {
    build_positions_with_law(n_atoms, xi, fluctuation, seed, FluctuationLaw::Uniform)
}

/// [`build_positions`] with a selectable deviation law.
pub fn build_positions_with_law(
    n_atoms: usize,
    xi: f64,
    fluctuation: f64,
    seed: u64,
    law: FluctuationLaw,
) -> Result<ChainGeometry> {
    if n_atoms == 0 {
        return Err(Error::InvalidGeometry("need at least one atom".into()));
    }
    if !(xi > 0.0) {
        return Err(Error::InvalidGeometry(format!(
            "spacing must be > 0, got {xi}"
        )));
    }
    if !(fluctuation >= 0.0) {
        return Err(Error::InvalidGeometry(format!(
            "fluctuation fraction must be >= 0, got {fluctuation}"
        )));
    }
    if fluctuation >= 1.0 {
        return Err(Error::InvalidGeometry(format!(
            "fluctuation fraction {fluctuation} >= 1 permits ordering violations"
        )));
    }

    let half_width = fluctuation * xi / 2.0;
    let mut phases = Vec::with_capacity(n_atoms);
    if fluctuation == 0.0 {
        for mu in 1..=n_atoms {
            phases.push(mu as f64 * xi);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match law {
            FluctuationLaw::Uniform => {
                for mu in 1..=n_atoms {
                    let delta: f64 = rng.random_range(-half_width..=half_width);
                    phases.push(mu as f64 * xi + delta);
                }
            }
            FluctuationLaw::Gaussian => {
                // Same variance as the uniform law, truncated to the same
                // bound so that |phase_μ − μ·ξ| ≤ fξ/2 holds for both laws.
                let sigma = half_width / 3.0_f64.sqrt();
                let normal = Normal::new(0.0, sigma).map_err(|e| {
                    Error::InvalidGeometry(format!("gaussian law: {e}"))
                })?;
                for mu in 1..=n_atoms {
                    let delta = loop {
                        let d: f64 = normal.sample(&mut rng);
                        if d.abs() <= half_width {
                            break d;
                        }
                    };
                    phases.push(mu as f64 * xi + delta);
                }
            }
        }
    }

    ChainGeometry::from_phases(phases, xi, fluctuation)
}

/// Left/right decay rates of the chiral coupling, in units of γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralRates {
    gamma_left: f64,
    gamma_right: f64,
}

impl ChiralRates {
    pub fn new(gamma_left: f64, gamma_right: f64) -> Result<Self> {
        if !(gamma_left >= 0.0) || !(gamma_right >= 0.0) {
            return Err(Error::InvalidRates(format!(
                "rates must be >= 0, got gamma_left={gamma_left}, gamma_right={gamma_right}"
            )));
        }
        if gamma_left + gamma_right <= 0.0 {
            return Err(Error::InvalidRates(
                "at least one rate must be strictly positive".into(),
            ));
        }
        Ok(Self {
            gamma_left,
            gamma_right,
        })
    }

    /// Uni-directional limit γ_L = 0, γ_R = 1: no backward light transfer.
    pub fn cascaded() -> Self {
        Self {
            gamma_left: 0.0,
            gamma_right: 1.0,
        }
    }

    /// Reciprocal coupling γ_L = γ_R = γ.
    pub fn reciprocal(gamma: f64) -> Result<Self> {
        Self::new(gamma, gamma)
    }

    pub fn gamma_left(&self) -> f64 {
        self.gamma_left
    }

    pub fn gamma_right(&self) -> f64 {
        self.gamma_right
    }

    /// Directionality D = (γ_R − γ_L)/(γ_R + γ_L) ∈ [−1, 1].
    pub fn directionality(&self) -> f64 {
        (self.gamma_right - self.gamma_left) / (self.gamma_right + self.gamma_left)
    }

    /// The reference rate γ: γ_R unless γ_R = 0, then γ_L.
    pub fn reference_rate(&self) -> f64 {
        if self.gamma_right > 0.0 {
            self.gamma_right
        } else {
            self.gamma_left
        }
    }

    /// True in the uni-directional limit γ_L = 0.
    pub fn is_cascaded(&self) -> bool {
        self.gamma_left == 0.0
    }
}

/// Where the initially excited block of atoms sits in the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    #[default]
    End,
    Central,
}

/// Which atoms share the absorbed photon: a block of `n_excited` atoms at the
/// end of the chain or centered in it (central placement requires equal
/// flanks, i.e. N − N_i even).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcitationPattern {
    pub n_excited: usize,
    pub placement: Placement,
}

impl ExcitationPattern {
    pub fn end(n_excited: usize) -> Self {
        Self {
            n_excited,
            placement: Placement::End,
        }
    }

    pub fn central(n_excited: usize) -> Self {
        Self {
            n_excited,
            placement: Placement::Central,
        }
    }

    /// Index (0-based) of the first excited atom for a chain of `n` atoms.
    pub fn first_excited(&self, n_atoms: usize) -> Result<usize> {
        self.validate(n_atoms)?;
        Ok(match self.placement {
            Placement::End => 0,
            Placement::Central => (n_atoms - self.n_excited) / 2,
        })
    }

    pub fn validate(&self, n_atoms: usize) -> Result<()> {
        if self.n_excited == 0 {
            return Err(Error::InvalidPattern("need at least one excited atom".into()));
        }
        if self.n_excited > n_atoms {
            return Err(Error::InvalidPattern(format!(
                "{} excited atoms exceed chain length {n_atoms}",
                self.n_excited
            )));
        }
        if self.placement == Placement::Central && !(n_atoms - self.n_excited).is_multiple_of(2) {
            return Err(Error::InvalidPattern(format!(
                "central placement needs equal flanks: N - N_i = {} is odd",
                n_atoms - self.n_excited
            )));
        }
        Ok(())
    }
}

/// The W state over the excited block: A_μ(0) = 1/√N_i on the block, 0
/// elsewhere. Unit norm by construction.
pub fn build_initial_state(pattern: ExcitationPattern, n_atoms: usize) -> Result<Array1<Complex64>> {
    let first = pattern.first_excited(n_atoms)?;
    let amp = Complex64::new(1.0 / (pattern.n_excited as f64).sqrt(), 0.0);
    let mut state = Array1::zeros(n_atoms);
    for mu in first..first + pattern.n_excited {
        state[mu] = amp;
    }
    Ok(state)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingKind {
    Chiral,
    Reciprocal,
}

/// N×N complex coupling matrix, in units of γ.
///
/// For the chiral kind the entries follow
///   V_μν = −γ_L e^{−i|φ_μ−φ_ν|}  (μ < ν),
///   V_μμ = −(γ_L + γ_R)/2,
///   V_μν = −γ_R e^{−i|φ_μ−φ_ν|}  (μ > ν),
/// which is reciprocal (V = Vᵀ) exactly when γ_L = γ_R. The matrix is not
/// normal for γ_L ≠ γ_R and is defective in the cascaded limit.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    matrix: Array2<Complex64>,
    kind: CouplingKind,
}

impl CouplingMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn kind(&self) -> CouplingKind {
        self.kind
    }

    pub fn as_array(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn into_array(self) -> Array2<Complex64> {
        self.matrix
    }
}

/// The dynamical coupling matrix V of the chiral-coupled chain.
pub fn build_coupling_matrix(geometry: &ChainGeometry, rates: &ChiralRates) -> CouplingMatrix {
    let n = geometry.n_atoms();
    let phases = geometry.phases();
    let diag = Complex64::new(-(rates.gamma_left() + rates.gamma_right()) / 2.0, 0.0);
    let matrix = Array2::from_shape_fn((n, n), |(mu, nu)| {
        if mu == nu {
            diag
        } else {
            let rate = if mu < nu {
                rates.gamma_left()
            } else {
                rates.gamma_right()
            };
            let separation = (phases[mu] - phases[nu]).abs();
            -rate * Complex64::new(0.0, -separation).exp()
        }
    });
    CouplingMatrix {
        matrix,
        kind: CouplingKind::Chiral,
    }
}

/// The reciprocal infinite-range kernel
/// J_μν = γ[cos(φ_μ−φ_ν) + i·sin(|φ_μ−φ_ν|)].
///
/// Re(J) is the dissipative part, Im(J) the coherent part. For γ_L = γ_R = γ
/// it relates to the dynamical matrix by V_μν = −J*_μν; that bridge is
/// asserted in tests rather than assumed.
pub fn reciprocal_kernel(geometry: &ChainGeometry, gamma: f64) -> Result<CouplingMatrix> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidRates(format!(
            "reciprocal kernel needs gamma > 0, got {gamma}"
        )));
    }
    let n = geometry.n_atoms();
    let phases = geometry.phases();
    let matrix = Array2::from_shape_fn((n, n), |(mu, nu)| {
        let diff = phases[mu] - phases[nu];
        gamma * Complex64::new(diff.cos(), diff.abs().sin())
    });
    Ok(CouplingMatrix {
        matrix,
        kind: CouplingKind::Reciprocal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn lattice_without_fluctuations_is_exact() {
        let geom = build_positions(3, PI, 0.0, 12345).unwrap();
        assert_eq!(geom.phases(), &[PI, 2.0 * PI, 3.0 * PI]);

        let geom = build_positions(2, PI / 2.0, 0.0, 0).unwrap();
        assert_eq!(geom.phases(), &[PI / 2.0, PI]);
    }

    #[test]
    fn fluctuations_stay_within_bound_and_ordered() {
        // Bound check by sampling: 10^4 seeds, every deviation within
        // ±fξ/2 = ±0.1π of its lattice site, ordering preserved.
        let f = 0.2;
        let bound = f * PI / 2.0;
        for seed in 0..10_000u64 {
            let geom = build_positions(12, PI, f, seed).unwrap();
            for (idx, &phase) in geom.phases().iter().enumerate() {
                let site = (idx + 1) as f64 * PI;
                assert!(
                    (phase - site).abs() <= bound + 1e-15,
                    "seed {seed}: atom {idx} deviates by {}",
                    (phase - site).abs()
                );
            }
            assert!(geom.phases().windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn gaussian_law_respects_the_same_bound() {
        let f = 0.3;
        let bound = f * PI / 2.0;
        for seed in 0..500u64 {
            let geom =
                build_positions_with_law(8, PI, f, seed, FluctuationLaw::Gaussian).unwrap();
            for (idx, &phase) in geom.phases().iter().enumerate() {
                let site = (idx + 1) as f64 * PI;
                assert!((phase - site).abs() <= bound + 1e-15);
            }
        }
    }

    #[test]
    fn positions_are_a_pure_function_of_inputs() {
        let a = build_positions(10, 1.7, 0.35, 99).unwrap();
        let b = build_positions(10, 1.7, 0.35, 99).unwrap();
        assert_eq!(a, b);
        let c = build_positions(10, 1.7, 0.35, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_position_inputs_are_rejected() {
        assert!(build_positions(0, PI, 0.0, 0).is_err());
        assert!(build_positions(3, 0.0, 0.0, 0).is_err());
        assert!(build_positions(3, -1.0, 0.0, 0).is_err());
        assert!(build_positions(3, PI, 1.0, 0).is_err());
        assert!(build_positions(3, PI, -0.1, 0).is_err());
    }

    #[test]
    fn cascaded_two_atom_matrix_at_xi_pi() {
        let geom = ChainGeometry::equidistant(2, PI).unwrap();
        let rates = ChiralRates::cascaded();
        let v = build_coupling_matrix(&geom, &rates);
        let m = v.as_array();
        // e^{-iπ} = -1, so the lower off-diagonal is +γ_R.
        assert_abs_diff_eq!(m[[0, 0]].re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m[[0, 1]].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m[[1, 0]].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m[[1, 0]].im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m[[1, 1]].re, -0.5, epsilon = 1e-15);
    }

    #[test]
    fn reciprocal_two_atom_matrix_at_xi_pi() {
        let geom = ChainGeometry::equidistant(2, PI).unwrap();
        let rates = ChiralRates::reciprocal(1.0).unwrap();
        let v = build_coupling_matrix(&geom, &rates);
        let m = v.as_array();
        for ((i, j), expect) in [((0, 0), -1.0), ((0, 1), 1.0), ((1, 0), 1.0), ((1, 1), -1.0)] {
            assert_abs_diff_eq!(m[[i, j]].re, expect, epsilon = 1e-12);
            assert_abs_diff_eq!(m[[i, j]].im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_atom_matrix_is_diagonal_only() {
        let geom = ChainGeometry::equidistant(1, 1.3).unwrap();
        let rates = ChiralRates::new(0.4, 0.8).unwrap();
        let v = build_coupling_matrix(&geom, &rates);
        assert_eq!(v.dim(), 1);
        assert_abs_diff_eq!(v.as_array()[[0, 0]].re, -0.6, epsilon = 1e-15);
    }

    #[test]
    fn off_diagonal_moduli_match_the_rates() {
        let geom = build_positions(5, 1.1, 0.3, 7).unwrap();
        let rates = ChiralRates::new(0.3, 0.9).unwrap();
        let v = build_coupling_matrix(&geom, &rates);
        let m = v.as_array();
        for i in 0..5 {
            for j in 0..5 {
                if i < j {
                    assert_relative_eq!(m[[i, j]].norm(), 0.3, epsilon = 1e-13);
                } else if i > j {
                    assert_relative_eq!(m[[i, j]].norm(), 0.9, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn shared_phase_factor_between_mirror_entries() {
        // V_μν/γ_L = V_νμ/γ_R when both rates are nonzero.
        let geom = build_positions(4, 2.2, 0.4, 3).unwrap();
        let rates = ChiralRates::new(0.5, 1.0).unwrap();
        let v = build_coupling_matrix(&geom, &rates);
        let m = v.as_array();
        for i in 0..4 {
            for j in 0..4 {
                if i < j {
                    let upper = m[[i, j]] / rates.gamma_left();
                    let lower = m[[j, i]] / rates.gamma_right();
                    assert_abs_diff_eq!((upper - lower).norm(), 0.0, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn swapping_rates_transposes_the_matrix() {
        let geom = build_positions(5, 0.9, 0.2, 11).unwrap();
        let a = build_coupling_matrix(&geom, &ChiralRates::new(0.2, 1.0).unwrap());
        let b = build_coupling_matrix(&geom, &ChiralRates::new(1.0, 0.2).unwrap());
        let bt = b.as_array().t();
        for i in 0..5 {
            for j in 0..5 {
                assert_abs_diff_eq!((a.as_array()[[i, j]] - bt[[i, j]]).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn reciprocity_holds_exactly_when_rates_match() {
        let geom = build_positions(4, 1.4, 0.1, 5).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::reciprocal(0.7).unwrap());
        let m = v.as_array();
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!((m[[i, j]] - m[[j, i]]).norm(), 0.0, epsilon = 1e-14);
            }
        }
        let w = build_coupling_matrix(&geom, &ChiralRates::new(0.3, 0.7).unwrap());
        let wm = w.as_array();
        assert!((wm[[0, 1]] - wm[[1, 0]]).norm() > 1e-3);
    }

    #[test]
    fn reciprocal_kernel_special_values() {
        let geom = ChainGeometry::equidistant(2, PI).unwrap();
        let j = reciprocal_kernel(&geom, 1.0).unwrap();
        let m = j.as_array();
        // Neighbors at ξ=π: J = γ(cos π + i sin π) = −γ; zero separation: γ.
        assert_abs_diff_eq!(m[[0, 1]].re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m[[0, 1]].im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m[[0, 0]].re, 1.0, epsilon = 1e-15);

        let geom = ChainGeometry::equidistant(2, PI / 2.0).unwrap();
        let j = reciprocal_kernel(&geom, 1.0).unwrap();
        let m = j.as_array();
        assert_abs_diff_eq!(m[[0, 1]].re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m[[0, 1]].im, 1.0, epsilon = 1e-12);

        assert!(reciprocal_kernel(&geom, 0.0).is_err());
    }

    #[test]
    fn kernel_bridge_to_dynamical_matrix() {
        // V_μν = −J*_μν entrywise when γ_L = γ_R = γ (diagonal included).
        let geom = build_positions(5, 1.9, 0.25, 21).unwrap();
        let gamma = 0.8;
        let v = build_coupling_matrix(&geom, &ChiralRates::reciprocal(gamma).unwrap());
        let j = reciprocal_kernel(&geom, gamma).unwrap();
        for i in 0..5 {
            for k in 0..5 {
                let bridged = -j.as_array()[[i, k]].conj();
                assert_abs_diff_eq!(
                    (v.as_array()[[i, k]] - bridged).norm(),
                    0.0,
                    epsilon = 1e-13
                );
            }
        }
    }

    #[test]
    fn directionality_values() {
        assert_abs_diff_eq!(ChiralRates::cascaded().directionality(), 1.0);
        assert_abs_diff_eq!(ChiralRates::reciprocal(0.6).unwrap().directionality(), 0.0);
        assert_abs_diff_eq!(
            ChiralRates::new(0.5, 1.0).unwrap().directionality(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn rates_validation() {
        assert!(ChiralRates::new(-0.1, 1.0).is_err());
        assert!(ChiralRates::new(0.0, 0.0).is_err());
        assert!(ChiralRates::new(f64::NAN, 1.0).is_err());
        let r = ChiralRates::new(0.5, 0.0).unwrap();
        assert_abs_diff_eq!(r.reference_rate(), 0.5);
        assert_abs_diff_eq!(r.directionality(), -1.0);
    }

    #[test]
    fn initial_states() {
        let w = build_initial_state(ExcitationPattern::end(2), 4).unwrap();
        let amp = 1.0 / 2.0_f64.sqrt();
        assert_abs_diff_eq!(w[0].re, amp, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1].re, amp, epsilon = 1e-15);
        assert_abs_diff_eq!(w[2].norm(), 0.0);
        assert_abs_diff_eq!(w[3].norm(), 0.0);

        let single = build_initial_state(ExcitationPattern::end(1), 3).unwrap();
        assert_abs_diff_eq!(single[0].re, 1.0);
        assert_abs_diff_eq!(single[1].norm(), 0.0);

        let central = build_initial_state(ExcitationPattern::central(3), 5).unwrap();
        let amp3 = 1.0 / 3.0_f64.sqrt();
        assert_abs_diff_eq!(central[0].norm(), 0.0);
        assert_abs_diff_eq!(central[1].re, amp3, epsilon = 1e-15);
        assert_abs_diff_eq!(central[2].re, amp3, epsilon = 1e-15);
        assert_abs_diff_eq!(central[3].re, amp3, epsilon = 1e-15);
        assert_abs_diff_eq!(central[4].norm(), 0.0);

        let norm: f64 = central.iter().map(|a| a.norm_sqr()).sum();
        assert_relative_eq!(norm, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn invalid_patterns_are_rejected() {
        assert!(build_initial_state(ExcitationPattern::central(3), 10).is_err());
        assert!(build_initial_state(ExcitationPattern::end(5), 4).is_err());
        assert!(build_initial_state(ExcitationPattern::end(0), 4).is_err());
    }
}
