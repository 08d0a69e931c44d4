// SPDX-License-Identifier: MIT OR Apache-2.0

//! Fit autoregressions of increasing order and let BIC pick one.
//!
//! `cargo run --example fit_ar`

use mcp2::ar::{bic, bic_select_order, fit_ar, mean_correct};
use mcp2::simulate::{simulate_piecewise, ArmaSpec, PiecewiseSpec};

fn main() -> mcp2::Result<()> {
    // x_t = 1.69 x_{t-1} - 0.81 x_{t-2} + e_t
    let spec = PiecewiseSpec::stationary(ArmaSpec::ar(&[1.69, -0.81]), 2048)?;
    let x = mean_correct(&simulate_piecewise(&spec, 1));

    println!("order  sigma2      loglik       BIC");
    for p in 0..=5 {
        let fit = fit_ar(&x, p)?;
        println!(
            "{p:>5}  {:<10.4}  {:<11.2}  {:.2}",
            fit.sigma2,
            fit.loglik.unwrap_or(f64::NAN),
            bic(&fit, x.len())
        );
    }

    let p = bic_select_order(&x, 10)?;
    let fit = fit_ar(&x, p)?;
    // Coefficients are in whitening form: x_t + b_1 x_{t-1} + ... = e_t.
    println!("BIC order {p}, coefficients {:.3?}", fit.coeffs);
    Ok(())
}
