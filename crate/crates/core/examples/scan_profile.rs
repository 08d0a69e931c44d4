// SPDX-License-Identifier: MIT OR Apache-2.0

//! Compute the sliding-window likelihood-ratio profile and its local maxima.
//!
//! `cargo run --example scan_profile`

use mcp2::ar::mean_correct;
use mcp2::scan::{extract_candidates, scan_statistics, ScanConfig};
use mcp2::simulate::{builtin_model, simulate_piecewise, BuiltinModel};

fn main() -> mcp2::Result<()> {
    let spec = builtin_model(BuiltinModel::C);
    let x = mean_correct(&simulate_piecewise(&spec, 1));

    let profile = scan_statistics(&x, &ScanConfig::default())?;
    println!(
        "window radius {}, scan order {}",
        profile.radius, profile.order
    );

    // Coarse text plot of the profile, one row per 16 positions.
    let top = profile.values.iter().cloned().fold(0.0, f64::max);
    for (i, chunk) in profile.values.chunks(16).enumerate() {
        let peak = chunk.iter().cloned().fold(0.0, f64::max);
        let bar = "#".repeat((60.0 * peak / top).round() as usize);
        println!("{:>5} {bar}", profile.position(i * 16));
    }

    let cands = extract_candidates(&profile);
    println!("true changes {:?}", spec.true_cps());
    for (k, ls) in cands.positions.iter().zip(&cands.ls_values) {
        println!("candidate {k:>5}  LS {ls:.4}");
    }
    Ok(())
}
