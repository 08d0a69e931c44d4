// SPDX-License-Identifier: MIT OR Apache-2.0

//! Chi-square upper tail through the regularized incomplete gamma function.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const MAX_ITER: usize = 500;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx).
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x) / Γ(a)`.
pub fn gamma_q(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(x >= 0.0) {
        return Err(Error::invalid(format!(
            "incomplete gamma needs a > 0 and x >= 0, got a = {a}, x = {x}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let log_prefactor = -x + a * x.ln() - ln_gamma(a);
    if x < a + 1.0 {
        Ok((1.0 - lower_series(a, x, log_prefactor)).clamp(0.0, 1.0))
    } else {
        Ok(upper_continued_fraction(a, x, log_prefactor).clamp(0.0, 1.0))
    }
}

/// `P(a, x) = e^{-x} x^a / Γ(a) · Σ_n x^n / (a (a+1) … (a+n))`.
fn lower_series(a: f64, x: f64, log_prefactor: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * log_prefactor.exp()
}

/// Modified Lentz evaluation of the continued fraction for `Q(a, x)`.
fn upper_continued_fraction(a: f64, x: f64, log_prefactor: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    log_prefactor.exp() * h
}

/// `P(X > stat)` for `X ~ χ²(df)`.
pub fn chi_sq_upper_tail(stat: f64, df: usize) -> Result<f64> {
    if !(stat >= 0.0) {
        return Err(Error::invalid(format!(
            "chi-square statistic must be non-negative, got {stat}"
        )));
    }
    if df == 0 {
        return Err(Error::invalid(
            "chi-square degrees of freedom must be positive",
        ));
    }
    gamma_q(df as f64 / 2.0, stat / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_known_values() {
        assert!(ln_gamma(1.0).abs() < 1e-14);
        assert!(ln_gamma(2.0).abs() < 1e-14);
        assert!((ln_gamma(0.5) - PI.sqrt().ln()).abs() < 1e-14);
        assert!((ln_gamma(10.0) - 362_880f64.ln()).abs() < 1e-12);
        assert!((ln_gamma(0.1) - 2.252_712_651_734_206).abs() < 1e-12);
    }

    #[test]
    fn zero_statistic_has_full_mass() {
        for df in 1..20 {
            assert_eq!(chi_sq_upper_tail(0.0, df).unwrap(), 1.0);
        }
    }

    #[test]
    fn two_degrees_of_freedom_closed_form() {
        assert!((chi_sq_upper_tail(2.0, 2).unwrap() - (-1.0f64).exp()).abs() < 1e-14);
        assert!((chi_sq_upper_tail(2.0, 2).unwrap() - 0.367879).abs() < 1e-6);
    }

    #[test]
    fn one_degree_of_freedom_matches_erfc_relation() {
        // Q(1/2, x/2) = erfc(sqrt(x/2)); at x = 1, erfc(1/√2) = 0.31731050786291404.
        assert!((chi_sq_upper_tail(1.0, 1).unwrap() - 0.317_310_507_862_914).abs() < 1e-13);
    }

    #[test]
    fn odd_df_closed_form() {
        // df = 3: Q = erfc(√(x/2)) + √(2x/π) e^{-x/2}; at x = 4: erfc(√2) = 0.04550026389635842.
        let expected = 0.045_500_263_896_358_42 + (8.0 / PI).sqrt() * (-2.0f64).exp();
        assert!((chi_sq_upper_tail(4.0, 3).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn even_df_closed_form_far_tail() {
        // df = 2k: Q = e^{-x/2} Σ_{i<k} (x/2)^i / i!
        for (x, k) in [(30.0f64, 5usize), (80.0, 10), (3.0, 8)] {
            let half = x / 2.0;
            let mut term = 1.0;
            let mut sum = 0.0;
            for i in 0..k {
                if i > 0 {
                    term *= half / i as f64;
                }
                sum += term;
            }
            let expected = (-half).exp() * sum;
            let got = chi_sq_upper_tail(x, 2 * k).unwrap();
            assert!(
                (got - expected).abs() < 1e-13,
                "x={x} k={k}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn negative_statistic_is_rejected() {
        assert!(chi_sq_upper_tail(-0.1, 2).is_err());
        assert!(chi_sq_upper_tail(f64::NAN, 2).is_err());
        assert!(chi_sq_upper_tail(1.0, 0).is_err());
    }
}
