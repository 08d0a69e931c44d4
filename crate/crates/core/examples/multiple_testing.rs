// SPDX-License-Identifier: MIT OR Apache-2.0

//! Compare the step-up FDR procedure with Bonferroni on one p-value vector.
//!
//! `cargo run --example multiple_testing`

use mcp2::multtest::Correction;

fn main() -> mcp2::Result<()> {
    let p = [
        0.001, 0.008, 0.039, 0.041, 0.042, 0.06, 0.074, 0.205, 0.212, 0.216,
    ];
    for alpha in [0.05, 0.25] {
        for c in [Correction::Bh, Correction::Bonferroni] {
            let out = c.apply(&p, alpha)?;
            let kept: Vec<usize> = out.rejected_indices().collect();
            println!("alpha {alpha:<4} {:<10} rejects {kept:?}", c.label());
        }
    }
    Ok(())
}
