// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Exact closed forms for the cascaded scheme (γ_L = 0).
//!
//! With no backward channel the coupled equations become lower-triangular
//! and integrate in closed form. Writing A_m(t) = p_m(t)·e^{−t/2}·e^{−i(m−1)ξ}
//! (γ = 1 units), the prefactors obey the polynomial recursion
//!
//!   p_m'(t) = −Σ_{m'<m} p_{m'}(t),
//!   p_m(0) = e^{i(m−1)ξ}/√N_i for m ≤ N_i,  p_m(0) = 0 for m > N_i,
//!
//! which this module integrates exactly over polynomial coefficients - no
//! quadrature enters. For N_i = 1 the populations are ξ-independent; the
//! strictly positive real zeros of p_m mark the ordered population exchanges
//! between neighbors and interlace with those of p_{m+1}.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Residual level to which polished roots must satisfy |p(r)| ≤ tol·scale.
const ROOT_RESIDUAL: f64 = 1e-10;
/// Roots with |Im| below this (relative to the root cluster scale) count as real.
const ROOT_IMAG_TOL: f64 = 1e-8;

/// Polynomial prefactor of one atom's closed-form amplitude,
/// A_m(t) = p_m(t)·e^{−t/2}·e^{−i(m−1)ξ}.
#[derive(Debug, Clone)]
pub struct CascadedPolynomial {
    atom_index: usize,
    n_initial: usize,
    spacing: f64,
    /// Coefficients of p_m in ascending powers of t.
    coeffs: Vec<Complex64>,
}

impl CascadedPolynomial {
    /// 1-based atom index m.
    pub fn atom_index(&self) -> usize {
        self.atom_index
    }

    pub fn n_initial(&self) -> usize {
        self.n_initial
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > 0.0)
            .unwrap_or(0)
    }

    /// p_m(t) by Horner evaluation.
    pub fn poly_at(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// The full amplitude A_m(t) = p_m(t)·e^{−t/2}·e^{−i(m−1)ξ}.
    pub fn amplitude(&self, t: f64) -> Complex64 {
        let phase = Complex64::new(0.0, -((self.atom_index - 1) as f64) * self.spacing).exp();
        self.poly_at(t) * (-t / 2.0).exp() * phase
    }

    /// |A_m(t)|² = |p_m(t)|²·e^{−t}.
    pub fn population(&self, t: f64) -> f64 {
        self.poly_at(t).norm_sqr() * (-t).exp()
    }
}

/// Closed-form prefactor polynomial for atom m of a cascaded chain of
/// `n_atoms` atoms with the first `n_initial` sharing the excitation.
pub fn cascaded_oracle(
    n_atoms: usize,
    n_initial: usize,
    xi: f64,
    m: usize,
) -> Result<CascadedPolynomial> {
    if n_initial == 0 || n_initial > n_atoms {
        return Err(Error::InvalidPattern(format!(
            "need 1 <= N_i <= N, got N_i = {n_initial}, N = {n_atoms}"
        )));
    }
    if m == 0 || m > n_atoms {
        return Err(Error::InvalidPattern(format!(
            "atom index m = {m} outside 1..={n_atoms}"
        )));
    }

    let norm = 1.0 / (n_initial as f64).sqrt();
    // Running sum of the already-built prefactors, as coefficients.
    let mut partial_sum: Vec<Complex64> = Vec::new();
    let mut poly: Vec<Complex64> = Vec::new();
    for index in 1..=m {
        let constant = if index <= n_initial {
            Complex64::new(0.0, (index - 1) as f64 * xi).exp() * norm
        } else {
            Complex64::new(0.0, 0.0)
        };
        // p(t) = p(0) − ∫₀ᵗ Σ_{m'<index} p_{m'}(s) ds, term by term.
        poly = Vec::with_capacity(partial_sum.len() + 1);
        poly.push(constant);
        for (j, &s) in partial_sum.iter().enumerate() {
            poly.push(-s / (j as f64 + 1.0));
        }
        if partial_sum.len() < poly.len() {
            partial_sum.resize(poly.len(), Complex64::new(0.0, 0.0));
        }
        for (acc, &c) in partial_sum.iter_mut().zip(&poly) {
            *acc += c;
        }
    }

    Ok(CascadedPolynomial {
        atom_index: m,
        n_initial,
        spacing: xi,
        coeffs: poly,
    })
}

/// All strictly positive real zeros of p_m, sorted ascending.
///
/// Valid where the coefficients are real after phase extraction (N_i = 1,
/// or ξ a multiple of π); anything else is rejected. Roots come from the
/// companion-matrix eigenvalues and are polished with Newton steps to a
/// 1e−10 relative residual.
pub fn zero_crossings(poly: &CascadedPolynomial) -> Result<Vec<f64>> {
    let max_mag = poly
        .coeffs
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max);
    if max_mag == 0.0 {
        return Ok(Vec::new());
    }
    if poly
        .coeffs
        .iter()
        .any(|c| c.im.abs() > 1e-10 * max_mag)
    {
        return Err(Error::Unsupported(
            "zero crossings need real prefactor coefficients (N_i = 1 or ξ = nπ)".into(),
        ));
    }
    let real: Vec<f64> = poly.coeffs.iter().map(|c| c.re).collect();

    // Strip zeros at t = 0 (leading coefficients) and the zero tail.
    let lead = match real.iter().position(|&c| c.abs() > 1e-14 * max_mag) {
        Some(k) => k,
        None => return Ok(Vec::new()),
    };
    let tail = real.iter().rposition(|&c| c.abs() > 1e-14 * max_mag).unwrap();
    let reduced = &real[lead..=tail];
    let degree = reduced.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }

    // Companion matrix of the monic polynomial.
    let leading = reduced[degree];
    let companion = Mat::<f64>::from_fn(degree, degree, |i, j| {
        if j == degree - 1 {
            -reduced[i] / leading
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eigenvalues = companion.eigenvalues().map_err(|e| Error::Numerical {
        context: "zero_crossings",
        reason: format!("companion eigensolver failed: {e:?}"),
    })?;

    let scale = eigenvalues
        .iter()
        .map(|z| z.norm())
        .fold(1.0f64, f64::max);
    let mut roots: Vec<f64> = Vec::new();
    for z in eigenvalues {
        if z.im.abs() > ROOT_IMAG_TOL * scale {
            continue;
        }
        if z.re <= ROOT_IMAG_TOL * scale {
            continue;
        }
        let polished = polish_root(reduced, z.re)?;
        if polished > 0.0 {
            roots.push(polished);
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Newton polish can land two eigenvalue estimates on one root.
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-8 * b.abs().max(1.0));
    Ok(roots)
}

/// A few Newton iterations on the real polynomial, then a residual check.
fn polish_root(coeffs: &[f64], start: f64) -> Result<f64> {
    let eval = |x: f64| -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for &c in coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    let max_mag = coeffs.iter().map(|c| c.abs()).fold(0.0f64, f64::max);
    let mut x = start;
    for _ in 0..50 {
        let (p, dp) = eval(x);
        let scale = max_mag * x.abs().max(1.0).powi(coeffs.len() as i32 - 1);
        if p.abs() <= ROOT_RESIDUAL * scale {
            return Ok(x);
        }
        if dp == 0.0 {
            break;
        }
        let step = p / dp;
        x -= step;
        if step.abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    let (p, _) = eval(x);
    let scale = max_mag * x.abs().max(1.0).powi(coeffs.len() as i32 - 1);
    if p.abs() <= ROOT_RESIDUAL * scale {
        Ok(x)
    } else {
        Err(Error::Numerical {
            context: "zero_crossings",
            reason: format!("root polish stalled at x = {x}, residual {:e}", p.abs()),
        })
    }
}
