// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrix exponential via scaling-and-squaring with Padé
//! approximants.
//!
//! Implements the algorithm from Higham (2005), "The Scaling and Squaring
//! Method for the Matrix Exponential Revisited", SIAM J. Matrix Anal. Appl.
//! 26(4), 1179: the Padé order (3, 5, 7, 9, 13) is chosen from the 1-norm of
//! the input, and for larger norms the matrix is scaled by 2^{-s}, the order
//! 13 approximant evaluated, and the result squared s times.
//!
//! Padé works for any square complex matrix; in particular it needs no
//! eigendecomposition, so defective inputs are handled exactly like any
//! other. Failures (non-finite input, singular Padé denominator) surface as
//! diagnostic errors, never as silent fallbacks.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

// Padé numerator coefficients b_0..b_m from Higham (2005), Table 10.4 /
// equation (10.33). The order-m approximant is p_m(A)/p_m(-A) with
// p_m(A) = Σ b_k A^k.
const B3: [f64; 4] = [120., 60., 12., 1.];
const B5: [f64; 6] = [30240., 15120., 3360., 420., 30., 1.];
const B7: [f64; 8] = [17_297_280., 8_648_640., 1_995_840., 277_200., 25_200., 1_512., 56., 1.];
const B9: [f64; 10] = [
    17_643_225_600.,
    8_821_612_800.,
    2_075_673_600.,
    302_702_400.,
    30_270_240.,
    2_162_160.,
    110_880.,
    3_960.,
    90.,
    1.,
];
const B13: [f64; 14] = [
    64_764_752_532_480_000.,
    32_382_376_266_240_000.,
    7_771_770_303_897_600.,
    1_187_353_796_428_800.,
    129_060_195_264_000.,
    10_559_470_521_600.,
    670_442_572_800.,
    33_522_128_640.,
    1_323_241_920.,
    40_840_800.,
    960_960.,
    16_380.,
    182.,
    1.,
];

// 1-norm thresholds θ_m below which the order-m approximant meets double
// precision (Higham 2005, Table 10.2).
const THETA3: f64 = 1.495_585_217_958_292e-2;
const THETA5: f64 = 2.539_398_330_063_23e-1;
const THETA7: f64 = 9.504_178_996_162_932e-1;
const THETA9: f64 = 2.097_847_961_257_068;
const THETA13: f64 = 5.371_920_351_148_152;

/// Compute exp(A) for a square complex matrix.
pub fn matrix_exponential(a: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.ncols(),
        });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical {
            context: "matrix_exponential",
            reason: "input contains non-finite entries".into(),
        });
    }
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }
    if n == 1 {
        return Ok(Array2::from_elem((1, 1), a[[0, 0]].exp()));
    }

    let norm = one_norm(a);
    let result = if norm <= THETA13 {
        let (u, v) = if norm <= THETA3 {
            pade_low(a, &B3)
        } else if norm <= THETA5 {
            pade_low(a, &B5)
        } else if norm <= THETA7 {
            pade_low(a, &B7)
        } else if norm <= THETA9 {
            pade_low(a, &B9)
        } else {
            pade13(a)
        };
        pade_solve(u, v)?
    } else {
        let squarings = ((norm / THETA13).log2().ceil() as u32).max(1);
        let scale = Complex64::new((0.5f64).powi(squarings as i32), 0.0);
        let scaled = a.mapv(|z| z * scale);
        let (u, v) = pade13(&scaled);
        let mut r = pade_solve(u, v)?;
        for _ in 0..squarings {
            r = r.dot(&r);
        }
        r
    };

    if result.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical {
            context: "matrix_exponential",
            reason: "result contains non-finite entries".into(),
        });
    }
    Ok(result)
}

/// U and V for orders 3–9, where even powers up to A^{m-1} are formed
/// explicitly: U = A·(b_m A^{m-1} + … + b_1 I) over odd coefficients,
/// V the even ones.
fn pade_low(a: &Array2<Complex64>, b: &[f64]) -> (Array2<Complex64>, Array2<Complex64>) {
    let n = a.nrows();
    let eye = Array2::from_diag_elem(n, Complex64::new(1.0, 0.0));
    let a2 = a.dot(a);

    // powers[k] = A^{2k}
    let mut powers: Vec<Array2<Complex64>> = vec![eye, a2];
    while powers.len() < b.len() / 2 {
        let next = powers.last().unwrap().dot(&powers[1]);
        powers.push(next);
    }

    let mut odd = Array2::<Complex64>::zeros((n, n));
    let mut even = Array2::<Complex64>::zeros((n, n));
    for (k, pow) in powers.iter().enumerate() {
        odd = odd + pow.mapv(|z| z * b[2 * k + 1]);
        even = even + pow.mapv(|z| z * b[2 * k]);
    }
    (a.dot(&odd), even)
}

/// U and V for the order-13 approximant, grouped to use six multiplies
/// (Higham 2005, equation (10.34)).
fn pade13(a: &Array2<Complex64>) -> (Array2<Complex64>, Array2<Complex64>) {
    let n = a.nrows();
    let eye = Array2::from_diag_elem(n, Complex64::new(1.0, 0.0));
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let u_high = a6.mapv(|z| z * B13[13]) + a4.mapv(|z| z * B13[11]) + a2.mapv(|z| z * B13[9]);
    let u_poly = a6.dot(&u_high)
        + a6.mapv(|z| z * B13[7])
        + a4.mapv(|z| z * B13[5])
        + a2.mapv(|z| z * B13[3])
        + eye.mapv(|z| z * B13[1]);
    let u = a.dot(&u_poly);

    let v_high = a6.mapv(|z| z * B13[12]) + a4.mapv(|z| z * B13[10]) + a2.mapv(|z| z * B13[8]);
    let v = a6.dot(&v_high)
        + a6.mapv(|z| z * B13[6])
        + a4.mapv(|z| z * B13[4])
        + a2.mapv(|z| z * B13[2])
        + eye.mapv(|z| z * B13[0]);
    (u, v)
}

/// Solve (V − U) X = (V + U) for the final approximant.
fn pade_solve(u: Array2<Complex64>, v: Array2<Complex64>) -> Result<Array2<Complex64>> {
    let numer = &v + &u;
    let denom = &v - &u;
    solve_linear(denom, numer)
}

/// Gaussian elimination with partial pivoting for A X = B.
fn solve_linear(a: Array2<Complex64>, b: Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    let m = b.ncols();
    let mut lhs = a;
    let mut rhs = b;

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = lhs[[col, col]].norm();
        for row in col + 1..n {
            let mag = lhs[[row, col]].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if !(pivot_mag > f64::MIN_POSITIVE) {
            return Err(Error::Numerical {
                context: "matrix_exponential",
                reason: format!("singular Padé denominator at column {col}"),
            });
        }
        if pivot_row != col {
            for j in 0..n {
                lhs.swap([col, j], [pivot_row, j]);
            }
            for j in 0..m {
                rhs.swap([col, j], [pivot_row, j]);
            }
        }
        let pivot = lhs[[col, col]];
        for row in col + 1..n {
            let factor = lhs[[row, col]] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = lhs[[col, j]];
                lhs[[row, j]] -= factor * v;
            }
            for j in 0..m {
                let v = rhs[[col, j]];
                rhs[[row, j]] -= factor * v;
            }
        }
    }

    let mut x = Array2::<Complex64>::zeros((n, m));
    for col in (0..n).rev() {
        let pivot = lhs[[col, col]];
        for j in 0..m {
            let mut sum = rhs[[col, j]];
            for k in col + 1..n {
                sum -= lhs[[col, k]] * x[[k, j]];
            }
            x[[col, j]] = sum / pivot;
        }
    }
    Ok(x)
}

/// Max column sum of entry moduli.
fn one_norm(a: &Array2<Complex64>) -> f64 {
    let mut max = 0.0f64;
    for col in a.columns() {
        let sum: f64 = col.iter().map(|z| z.norm()).sum();
        max = max.max(sum);
    }
    max
}
