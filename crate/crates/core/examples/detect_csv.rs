// SPDX-License-Identifier: MIT OR Apache-2.0

//! Full detection on a CSV column, with a JSON report and an SVG plot.
//!
//! `cargo run --example detect_csv -- [series.csv] [column]`
//!
//! Without arguments a Model C series is simulated and written to a
//! temporary file first.

use mcp2::io::{read_series_file, write_series_csv, ColumnSelector};
use mcp2::plot::series_svg;
use mcp2::prelude::*;
use std::fs::File;
use std::path::PathBuf;

fn main() -> mcp2::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = match args.next() {
        Some(p) => PathBuf::from(p),
        None => {
            let p = std::env::temp_dir().join("mcp2_model_c.csv");
            let x = simulate_piecewise(&builtin_model(BuiltinModel::C), 1);
            write_series_csv(&x, File::create(&p).map_err(|e| Error::Io(e.to_string()))?)?;
            p
        }
    };
    let column = args
        .next()
        .map(|c| ColumnSelector::parse(&c))
        .unwrap_or_default();
    let series = read_series_file(&path, &column)?;

    let cfg = DetectConfig {
        correction: Correction::Bonferroni,
        ..Default::default()
    };
    let report = detect_changepoints(&series, &cfg)?;

    println!("{}: T = {}", path.display(), report.series_length);
    for t in &report.boundary_tests {
        println!(
            "candidate {:>5}  segments {:?} | {:?}  p {:.3e}",
            t.position, t.left, t.right, t.p_value
        );
    }
    println!("change points: {:?}", report.final_cps);
    for d in &report.diagnostics {
        println!("note: {d}");
    }

    let svg = path.with_extension("svg");
    std::fs::write(
        &svg,
        series_svg(series.values(), &report.final_cps, "detected change points"),
    )
    .map_err(|e| Error::Io(e.to_string()))?;
    println!("plot written to {}", svg.display());
    Ok(())
}
