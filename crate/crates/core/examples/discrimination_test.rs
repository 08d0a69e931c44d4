// SPDX-License-Identifier: MIT OR Apache-2.0

//! Two-sample test of equal autocovariance structure.
//!
//! `cargo run --example discrimination_test`

use mcp2::sdtest::{discrimination_test, OrderMode};
use mcp2::simulate::{simulate_replicate, ArmaSpec, PiecewiseSpec};

fn main() -> mcp2::Result<()> {
    let same = PiecewiseSpec::stationary(ArmaSpec::ar(&[0.4]), 300)?;
    let other = PiecewiseSpec::stationary(ArmaSpec::ar(&[-0.6]), 300)?;

    let x = simulate_replicate(&same, 7, 0);
    let y_same = simulate_replicate(&same, 7, 1);
    let y_other = simulate_replicate(&other, 7, 2);

    for mode in [
        OrderMode::Fixed { v: 1.5 },
        OrderMode::Bic { max_order: 10 },
    ] {
        for (label, y) in [("same process", &y_same), ("different process", &y_other)] {
            let r = discrimination_test(&x, y, mode)?;
            println!(
                "{mode:?} {label:<18} lambda {:>8.3}  df {}  p {:.3e}  orders {:?}",
                r.lambda, r.df, r.p_value, r.orders
            );
        }
    }
    Ok(())
}
