// SPDX-License-Identifier: MIT OR Apache-2.0

//! Reference implementations shared by the integration suites. None of them
//! call into the crate's numerical code.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

/// Solves `-Γ_p β = γ^p` densely and returns `(β, γ(0) + γ'β)`.
pub fn dense_yule_walker(gamma: &[f64], p: usize) -> (Vec<f64>, f64) {
    let toeplitz = DMatrix::from_fn(p, p, |i, j| gamma[i.abs_diff(j)]);
    let rhs = DVector::from_fn(p, |i, _| -gamma[i + 1]);
    let beta = toeplitz.lu().solve(&rhs).expect("nonsingular Toeplitz");
    let sigma2 = gamma[0] + (0..p).map(|i| gamma[i + 1] * beta[i]).sum::<f64>();
    (beta.iter().copied().collect(), sigma2)
}

/// Stationary AR coefficients (simulation convention) from partial
/// autocorrelations in (-1, 1).
pub fn ar_from_pacf(pacf: &[f64]) -> Vec<f64> {
    let mut phi: Vec<f64> = Vec::new();
    for &k in pacf {
        let prev = phi.clone();
        for j in 0..phi.len() {
            phi[j] = prev[j] - k * prev[prev.len() - 1 - j];
        }
        phi.push(k);
    }
    phi
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-12)
}

/// Γ(k/2) by the half-integer recursion from Γ(1) = 1 and Γ(1/2) = √π.
fn gamma_half(k: usize) -> f64 {
    let mut g = if k.is_multiple_of(2) { 1.0 } else { PI.sqrt() };
    let mut a = if k.is_multiple_of(2) { 1.0 } else { 0.5 };
    while a < k as f64 / 2.0 {
        g *= a;
        a += 1.0;
    }
    g
}

/// Composite Simpson integration of the chi-square density over
/// `[x, x + 400]`. The tail beyond is far below 1e-12 for small df.
pub fn chi_sq_tail_by_quadrature(x: f64, k: usize) -> f64 {
    let norm = 2f64.powf(k as f64 / 2.0) * gamma_half(k);
    let f = |t: f64| t.powf(k as f64 / 2.0 - 1.0) * (-t / 2.0).exp() / norm;
    let (a, b, n) = (x, x + 400.0, 400_000);
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Step-up by exhaustive search: the largest k for which at least k
/// p-values lie at or below `k α / q`. Everything at or below that
/// threshold is rejected.
pub fn bh_brute_force(p: &[f64], alpha: f64) -> Vec<bool> {
    let q = p.len();
    for k in (1..=q).rev() {
        let t = k as f64 * alpha / q as f64;
        if p.iter().filter(|&&v| v <= t).count() >= k {
            return p.iter().map(|&v| v <= t).collect();
        }
    }
    vec![false; q]
}

pub fn bonferroni_brute_force(p: &[f64], alpha: f64) -> Vec<bool> {
    p.iter().map(|&v| v * p.len() as f64 <= alpha).collect()
}
