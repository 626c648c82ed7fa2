// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution of the single-excitation amplitudes Ȧ = V·A and the
//! observables derived from them.
//!
//! V is constant in time (and possibly defective), so each trajectory is
//! generated from one precomputed matrix exponential exp(V·dt) applied step
//! by step; eigendecomposition is deliberately avoided. Times are
//! dimensionless, τ = γt.

pub mod cascaded;
pub mod expm;

use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64;

use crate::chain::{ChainGeometry, ChiralRates, CouplingMatrix};
use crate::error::{Error, Result};

/// Uniform time grid starting at t = 0 with an integer number of steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    dt: f64,
    n_steps: usize,
}

impl TimeGrid {
    /// Grid covering [0, t_end] in steps of dt. t_end must be an integer
    /// multiple of dt (to one part in 10⁶) with at least one step.
    pub fn new(t_end: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::InvalidGrid(format!("dt must be > 0, got {dt}")));
        }
        if !(t_end > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "t_end must be > 0, got {t_end}"
            )));
        }
        let ratio = t_end / dt;
        let steps = ratio.round();
        if steps < 1.0 || (ratio - steps).abs() > 1e-6 * steps.max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "t_end = {t_end} is not an integer number of dt = {dt} steps"
            )));
        }
        Ok(Self {
            dt,
            n_steps: steps as usize,
        })
    }

    pub fn with_steps(n_steps: usize, dt: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::InvalidGrid(format!("dt must be > 0, got {dt}")));
        }
        if n_steps == 0 {
            return Err(Error::InvalidGrid("need at least one step".into()));
        }
        Ok(Self { dt, n_steps })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Number of stored time points, n_steps + 1.
    pub fn n_points(&self) -> usize {
        self.n_steps + 1
    }

    pub fn t_end(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_points()).map(|k| k as f64 * self.dt).collect()
    }
}

/// Amplitudes A_μ(t_k) on a grid, with populations derived on demand.
#[derive(Debug, Clone)]
pub struct Trajectory {
    grid: TimeGrid,
    /// Row k holds A(t_k).
    amplitudes: Array2<Complex64>,
}

impl Trajectory {
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn n_atoms(&self) -> usize {
        self.amplitudes.ncols()
    }

    pub fn times(&self) -> Vec<f64> {
        self.grid.times()
    }

    pub fn amplitudes(&self) -> &Array2<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude_at(&self, step: usize) -> ArrayView1<'_, Complex64> {
        self.amplitudes.row(step)
    }

    /// P_μ(t_k) = |A_μ(t_k)|² for every atom at one time point.
    pub fn populations_at(&self, step: usize) -> Array1<f64> {
        self.amplitudes.row(step).mapv(|a| a.norm_sqr())
    }

    /// P_μ(t) over the whole grid for one atom (0-based index).
    pub fn population_series(&self, atom: usize) -> Vec<f64> {
        self.amplitudes
            .column(atom)
            .iter()
            .map(|a| a.norm_sqr())
            .collect()
    }

    /// P_tot(t_k) = Σ_μ |A_μ(t_k)|².
    pub fn total_population(&self) -> Vec<f64> {
        self.amplitudes
            .rows()
            .into_iter()
            .map(|row| row.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }
}

/// One-step propagator exp(V·dt), reusable across all steps.
pub fn step_propagator(coupling: &CouplingMatrix, dt: f64) -> Result<Array2<Complex64>> {
    if dt < 0.0 {
        return Err(Error::InvalidGrid(format!("dt must be >= 0, got {dt}")));
    }
    if dt == 0.0 {
        return Ok(Array2::from_diag_elem(
            coupling.dim(),
            Complex64::new(1.0, 0.0),
        ));
    }
    let scaled = coupling.as_array().mapv(|z| z * dt);
    expm::matrix_exponential(&scaled)
}

fn check_state(coupling: &CouplingMatrix, initial: &Array1<Complex64>) -> Result<()> {
    if initial.len() != coupling.dim() {
        return Err(Error::DimensionMismatch {
            expected: coupling.dim(),
            got: initial.len(),
        });
    }
    let norm: f64 = initial.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidPattern(format!(
            "initial state norm² = {norm}, expected 1"
        )));
    }
    Ok(())
}

/// Evolve A(t_{k+1}) = exp(V·dt)·A(t_k) over the grid, storing amplitudes.
pub fn evolve(
    coupling: &CouplingMatrix,
    initial: &Array1<Complex64>,
    grid: &TimeGrid,
) -> Result<Trajectory> {
    check_state(coupling, initial)?;
    let propagator = step_propagator(coupling, grid.dt())?;
    let n = coupling.dim();
    let mut amplitudes = Array2::zeros((grid.n_points(), n));
    let mut state = initial.clone();
    amplitudes.row_mut(0).assign(&state);
    for k in 1..grid.n_points() {
        state = propagator.dot(&state);
        amplitudes.row_mut(k).assign(&state);
    }
    Ok(Trajectory {
        grid: *grid,
        amplitudes,
    })
}

/// Like [`evolve`] but keeping only P_tot(t_k); used for large ensembles.
pub fn evolve_total_population(
    coupling: &CouplingMatrix,
    initial: &Array1<Complex64>,
    grid: &TimeGrid,
) -> Result<Vec<f64>> {
    check_state(coupling, initial)?;
    let propagator = step_propagator(coupling, grid.dt())?;
    let mut state = initial.clone();
    let mut totals = Vec::with_capacity(grid.n_points());
    totals.push(state.iter().map(|a| a.norm_sqr()).sum());
    for _ in 0..grid.n_steps() {
        state = propagator.dot(&state);
        totals.push(state.iter().map(|a| a.norm_sqr()).sum());
    }
    Ok(totals)
}

/// Atom-atom correlations C_μν = |A_μ* A_ν|² at one instant.
///
/// For a pure single-excitation state these factorize, C_μν = P_μ·P_ν, so
/// C is symmetric with C_μμ = P_μ².
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    entries: Array2<f64>,
}

impl CorrelationMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.entries[[mu, nu]]
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.entries
    }
}

/// C_μν = |A_μ* A_ν|², evaluated from the amplitude products.
pub fn correlations(amplitudes: ArrayView1<'_, Complex64>) -> CorrelationMatrix {
    let n = amplitudes.len();
    let entries = Array2::from_shape_fn((n, n), |(mu, nu)| {
        (amplitudes[mu].conj() * amplitudes[nu]).norm_sqr()
    });
    CorrelationMatrix { entries }
}

/// Instantaneous emission rates into the left and right channels,
///
///   R_L = γ_L·|Σ_μ e^{−iφ_μ} A_μ|²,  R_R = γ_R·|Σ_μ e^{+iφ_μ} A_μ|²,
///
/// which satisfy dP_tot/dt = −(R_L + R_R).
pub fn channel_rates(
    amplitudes: ArrayView1<'_, Complex64>,
    geometry: &ChainGeometry,
    rates: &ChiralRates,
) -> (f64, f64) {
    let mut left_sum = Complex64::new(0.0, 0.0);
    let mut right_sum = Complex64::new(0.0, 0.0);
    for (a, &phase) in amplitudes.iter().zip(geometry.phases()) {
        left_sum += Complex64::new(0.0, -phase).exp() * a;
        right_sum += Complex64::new(0.0, phase).exp() * a;
    }
    (
        rates.gamma_left() * left_sum.norm_sqr(),
        rates.gamma_right() * right_sum.norm_sqr(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{
        build_coupling_matrix, build_initial_state, build_positions, ChainGeometry, ChiralRates,
        ExcitationPattern,
    };
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn grid_rejects_non_integer_spans() {
        assert!(TimeGrid::new(1.0, 0.3).is_err());
        assert!(TimeGrid::new(0.0, 0.1).is_err());
        assert!(TimeGrid::new(1.0, 0.0).is_err());
        let g = TimeGrid::new(1.0, 0.25).unwrap();
        assert_eq!(g.n_points(), 5);
        assert_abs_diff_eq!(g.t_end(), 1.0);
    }

    #[test]
    fn single_atom_decays_at_total_rate() {
        // Diagonal entry −(γ_L+γ_R)/2 = −1, so P_tot(t) = e^{−2t}.
        let geom = ChainGeometry::equidistant(1, PI).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::reciprocal(1.0).unwrap());
        let a0 = build_initial_state(ExcitationPattern::end(1), 1).unwrap();
        let grid = TimeGrid::new(5.0, 0.01).unwrap();
        let traj = evolve(&v, &a0, &grid).unwrap();
        let ptot = traj.total_population();
        for (k, t) in grid.times().iter().enumerate().step_by(50) {
            assert_relative_eq!(ptot[k], (-2.0 * t).exp(), max_relative = 1e-9);
        }
    }

    #[test]
    fn second_atom_population_peaks_at_t_two() {
        // Cascaded N=2, N_i=1: P_2(t) = t²e^{−t}, max 4e^{−2} at t = 2.
        let geom = ChainGeometry::equidistant(2, 1.234).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::cascaded());
        let a0 = build_initial_state(ExcitationPattern::end(1), 2).unwrap();
        let grid = TimeGrid::new(6.0, 0.001).unwrap();
        let traj = evolve(&v, &a0, &grid).unwrap();
        let p2 = traj.population_series(1);
        let times = grid.times();
        for (k, &t) in times.iter().enumerate().step_by(100) {
            assert_abs_diff_eq!(p2[k], t * t * (-t).exp(), epsilon = 1e-10);
        }
        let (argmax, &max) = p2
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        assert_abs_diff_eq!(times[argmax], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(max, 4.0 * (-2.0f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn even_chain_uniform_state_is_decoherence_free() {
        // Even N, reciprocal ξ=π, W over all atoms: orthogonal to the
        // single superradiant mode, so P_tot stays 1.
        let geom = ChainGeometry::equidistant(6, PI).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::reciprocal(1.0).unwrap());
        let a0 = build_initial_state(ExcitationPattern::end(6), 6).unwrap();
        let grid = TimeGrid::new(10.0, 0.01).unwrap();
        let traj = evolve(&v, &a0, &grid).unwrap();
        for p in traj.total_population() {
            assert_abs_diff_eq!(p, 1.0, epsilon = 1e-11);
        }
    }

    #[test]
    fn stepping_matches_direct_exponential() {
        // ‖A(t_k) − exp(V·t_k)·A0‖ stays below 1e−9 on spot-checked points.
        let geom = build_positions(5, 1.1, 0.2, 17).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::new(0.3, 1.0).unwrap());
        let a0 = build_initial_state(ExcitationPattern::end(2), 5).unwrap();
        let grid = TimeGrid::new(20.0, 0.01).unwrap();
        let traj = evolve(&v, &a0, &grid).unwrap();
        for &t in &[0.5, 5.0, 20.0] {
            let k = (t / grid.dt()).round() as usize;
            let direct = expm::matrix_exponential(&v.as_array().mapv(|z| z * t))
                .unwrap()
                .dot(&a0);
            let diff: f64 = traj
                .amplitude_at(k)
                .iter()
                .zip(direct.iter())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(diff <= 1e-9, "residual {diff:e} at t = {t}");
        }
    }

    #[test]
    fn total_population_never_increases() {
        let geom = build_positions(6, 2.7, 0.3, 4).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::new(0.8, 0.6).unwrap());
        let a0 = build_initial_state(ExcitationPattern::end(3), 6).unwrap();
        let grid = TimeGrid::new(30.0, 0.02).unwrap();
        let ptot = evolve_total_population(&v, &a0, &grid).unwrap();
        for w in ptot.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "{} -> {}", w[0], w[1]);
        }
        assert_abs_diff_eq!(ptot[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn streaming_totals_agree_with_stored_trajectory() {
        let geom = build_positions(4, 1.6, 0.1, 9).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::new(0.5, 1.0).unwrap());
        let a0 = build_initial_state(ExcitationPattern::end(2), 4).unwrap();
        let grid = TimeGrid::new(8.0, 0.05).unwrap();
        let a = evolve(&v, &a0, &grid).unwrap().total_population();
        let b = evolve_total_population(&v, &a0, &grid).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let geom = ChainGeometry::equidistant(3, PI).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::cascaded());
        let a0 = build_initial_state(ExcitationPattern::end(1), 2).unwrap();
        let grid = TimeGrid::new(1.0, 0.1).unwrap();
        assert!(evolve(&v, &a0, &grid).is_err());
    }

    #[test]
    fn propagator_at_zero_dt_is_identity() {
        let geom = ChainGeometry::equidistant(3, 1.0).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::cascaded());
        let p = step_propagator(&v, 0.0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(p[[i, j]].re, expect);
                assert_abs_diff_eq!(p[[i, j]].im, 0.0);
            }
        }
    }

    #[test]
    fn correlation_values() {
        let w = build_initial_state(ExcitationPattern::end(2), 4).unwrap();
        let c = correlations(w.view());
        assert_abs_diff_eq!(c.get(0, 1), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(c.get(0, 0), 0.25, epsilon = 1e-15);
        // An unexcited atom has zero correlation with everyone.
        for nu in 0..4 {
            assert_abs_diff_eq!(c.get(2, nu), 0.0);
        }
        // Symmetry and diagonal identity C_μμ = P_μ².
        for mu in 0..4 {
            for nu in 0..4 {
                assert_abs_diff_eq!(c.get(mu, nu), c.get(nu, mu));
            }
            let p = w[mu].norm_sqr();
            assert_abs_diff_eq!(c.get(mu, mu), p * p, epsilon = 1e-15);
        }
    }

    #[test]
    fn single_atom_channel_rates_sum_to_population_rate() {
        let geom = ChainGeometry::equidistant(1, PI).unwrap();
        let rates = ChiralRates::new(0.4, 0.9).unwrap();
        let a = Array1::from_elem(1, Complex64::new(0.6, 0.3));
        let p1 = a[0].norm_sqr();
        let (rl, rr) = channel_rates(a.view(), &geom, &rates);
        assert_relative_eq!(rl + rr, (0.4 + 0.9) * p1, epsilon = 1e-14);
    }

    #[test]
    fn cascaded_left_channel_is_dark() {
        let geom = build_positions(4, PI, 0.1, 2).unwrap();
        let v = build_coupling_matrix(&geom, &ChiralRates::cascaded());
        let a0 = build_initial_state(ExcitationPattern::end(2), 4).unwrap();
        let grid = TimeGrid::new(5.0, 0.05).unwrap();
        let traj = evolve(&v, &a0, &grid).unwrap();
        for k in (0..grid.n_points()).step_by(10) {
            let (rl, _) = channel_rates(traj.amplitude_at(k), &geom, &ChiralRates::cascaded());
            assert_abs_diff_eq!(rl, 0.0);
        }
    }

    #[test]
    fn emission_rates_balance_the_population_loss() {
        // P_tot(0) − P_tot(T) = ∫ (R_L+R_R) dt, trapezoidal, within 1e−6.
        let geom = build_positions(3, 1.9, 0.2, 5).unwrap();
        let rates = ChiralRates::new(0.5, 1.0).unwrap();
        let v = build_coupling_matrix(&geom, &rates);
        let a0 = build_initial_state(ExcitationPattern::end(2), 3).unwrap();
        let grid = TimeGrid::new(10.0, 0.0002).unwrap();
        let traj = evolve(&v, &a0, &grid).unwrap();
        let emitted: Vec<f64> = (0..grid.n_points())
            .map(|k| {
                let (rl, rr) = channel_rates(traj.amplitude_at(k), &geom, &rates);
                rl + rr
            })
            .collect();
        let mut integral = 0.0;
        for w in emitted.windows(2) {
            integral += 0.5 * (w[0] + w[1]) * grid.dt();
        }
        let ptot = traj.total_population();
        let lost = ptot[0] - ptot[ptot.len() - 1];
        assert_abs_diff_eq!(integral, lost, epsilon = 1e-6);
    }
}
