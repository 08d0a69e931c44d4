// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact-detection rates over seeded replicates for all built-in models.
//!
//! `cargo run --release --example benchmark_table -- [replicates] [seed]`

use mcp2::bench::run_models;
use mcp2::pipeline::DetectConfig;
use mcp2::simulate::BuiltinModel;

fn main() -> mcp2::Result<()> {
    let mut args = std::env::args().skip(1);
    let replicates = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let results = run_models(
        &BuiltinModel::all(),
        replicates,
        seed,
        &DetectConfig::default(),
    )?;
    println!("{:<8} {:>8} {:>8}", "model", "BH", "BONF");
    for pair in results.chunks(2) {
        println!(
            "{:<8} {:>8.2} {:>8.2}",
            pair[0].model, pair[0].exact_detection_rate, pair[1].exact_detection_rate
        );
    }
    Ok(())
}
