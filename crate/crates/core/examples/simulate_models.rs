// SPDX-License-Identifier: MIT OR Apache-2.0

//! Simulate every built-in benchmark model and a custom piecewise process.
//!
//! `cargo run --example simulate_models`

use mcp2::simulate::{
    builtin_model, simulate_piecewise, simulate_replicate, ArmaSpec, BuiltinModel, PiecewiseSpec,
    Segment,
};

fn main() -> mcp2::Result<()> {
    for m in BuiltinModel::all() {
        let spec = builtin_model(m);
        let x = simulate_piecewise(&spec, 1);
        let var = x.values().iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
        println!(
            "{:<7} T={:<5} changes at {:?}  mean square {var:.2}",
            m.to_string(),
            x.len(),
            spec.true_cps()
        );
    }

    // An AR(1) that flips sign, then an MA(1) with larger noise.
    let spec = PiecewiseSpec::new(vec![
        Segment {
            process: ArmaSpec::ar(&[0.6]),
            end: 300,
        },
        Segment {
            process: ArmaSpec::ar(&[-0.6]),
            end: 500,
        },
        Segment {
            process: ArmaSpec::arma(&[], &[0.8]).with_noise_sd(2.0),
            end: 800,
        },
    ])?;
    // Replicates draw from independent streams of one seed.
    let a = simulate_replicate(&spec, 42, 0);
    let b = simulate_replicate(&spec, 42, 1);
    println!(
        "custom: T={}, first values {:.3?} / {:.3?}",
        a.len(),
        &a.values()[..3],
        &b.values()[..3]
    );
    Ok(())
}
