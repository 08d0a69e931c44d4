// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line front end: `detect`, `simulate` and `bench`.
//!
//! Exit codes: 0 on success, 1 when the analysis cannot run on the data
//! (series too short, numerical breakdown), 2 for malformed input, unknown
//! models and other usage errors.

use crate::bench::{run_models, write_locations_csv, write_rates_csv, BenchResult};
use crate::error::{Error, Result};
use crate::io::{read_series_file, write_series_csv, ColumnSelector};
use crate::multtest::{Correction, DEFAULT_ALPHA};
use crate::pipeline::{detect_changepoints, DetectConfig};
use crate::plot::{locations_svg, series_svg};
use crate::scan::{ScanConfig, ScanOrder};
use crate::sdtest::{OrderMode, DEFAULT_BIC_MAX_ORDER, DEFAULT_ORDER_EXPONENT};
use crate::simulate::{simulate_piecewise, BuiltinModel};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "mcp2",
    version,
    about = "Multiple change-point detection for piecewise autoregressive series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect change points in one column of a CSV file.
    Detect(DetectCmd),
    /// Simulate a benchmark model to CSV.
    Simulate(SimulateCmd),
    /// Monte Carlo exact-detection rates on benchmark models.
    Bench(BenchCmd),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderModeArg {
    Fixed,
    Bic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CorrectionArg {
    Bh,
    Bonferroni,
}

#[derive(Debug, Clone, Args)]
pub struct DetectOptions {
    /// Scan window radius (default max(50, ceil(ln T))).
    #[arg(short = 'w', long = "window")]
    pub window: Option<usize>,
    /// Scan AR order: `auto` (BIC, capped at 10) or an integer.
    #[arg(long = "scan-order", default_value = "auto")]
    pub scan_order: String,
    /// Fixed-order exponent v in floor((ln T_min)^v).
    #[arg(long = "v", default_value_t = DEFAULT_ORDER_EXPONENT)]
    pub v: f64,
    #[arg(long = "order-mode", value_enum, default_value_t = OrderModeArg::Fixed)]
    pub order_mode: OrderModeArg,
    /// Largest order BIC may pick in `bic` order mode.
    #[arg(long = "max-order", default_value_t = DEFAULT_BIC_MAX_ORDER)]
    pub max_order: usize,
    #[arg(long = "alpha", default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Re-test merged segments until no candidate is removed.
    #[arg(long = "iterate")]
    pub iterate: bool,
}

impl DetectOptions {
    pub fn to_config(&self, correction: Correction) -> Result<DetectConfig> {
        let order = match self.scan_order.as_str() {
            "auto" => ScanOrder::Auto,
            s => ScanOrder::Fixed(s.parse().map_err(|_| {
                Error::invalid(format!(
                    "--scan-order must be 'auto' or an integer, got '{s}'"
                ))
            })?),
        };
        let order_mode = match self.order_mode {
            OrderModeArg::Fixed => OrderMode::Fixed { v: self.v },
            OrderModeArg::Bic => OrderMode::Bic {
                max_order: self.max_order,
            },
        };
        let cfg = DetectConfig {
            scan: ScanConfig {
                window_radius: self.window,
                order,
            },
            order_mode,
            correction,
            alpha: self.alpha,
            iterate: self.iterate,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct DetectCmd {
    /// CSV file with one numeric column (header optional).
    pub input: PathBuf,
    /// Column to read: 0-based index or header name.
    #[arg(long = "column")]
    pub column: Option<String>,
    #[arg(long = "correction", value_enum, default_value_t = CorrectionArg::Bh)]
    pub correction: CorrectionArg,
    #[command(flatten)]
    pub options: DetectOptions,
    /// Write the JSON report here instead of stdout.
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
    /// Draw the series and the detected change points as SVG.
    #[arg(long = "plot")]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateCmd {
    /// Model name: A:<beta> or one of B..I.
    #[arg(long = "model", value_parser = parse_model)]
    pub model: BuiltinModel,
    #[arg(long = "seed", default_value_t = 1)]
    pub seed: u64,
    /// Output CSV; a sidecar `.json` with the spec is written next to it.
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchCmd {
    /// Models to run (repeatable or comma separated); default all twelve.
    #[arg(long = "model", value_delimiter = ',', value_parser = parse_model)]
    pub models: Vec<BuiltinModel>,
    #[arg(long = "replicates", default_value_t = 100)]
    pub replicates: usize,
    #[arg(long = "seed", default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub options: DetectOptions,
    /// Directory for rates.csv, locations.csv and per-model SVG plots.
    #[arg(long = "out", default_value = "bench_out")]
    pub out: PathBuf,
}

fn parse_model(s: &str) -> std::result::Result<BuiltinModel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::MalformedInput(_) | Error::InvalidArgument(_) | Error::Io(_) => 2,
        Error::SeriesTooShort { .. }
        | Error::SegmentTooShort { .. }
        | Error::NumericalDegeneracy { .. }
        | Error::NoFittableOrder { .. } => 1,
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Detect(cmd) => detect(&cmd),
        Command::Simulate(cmd) => simulate(&cmd),
        Command::Bench(cmd) => bench(&cmd),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(io_err(path))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))
}

pub fn detect(cmd: &DetectCmd) -> Result<()> {
    let correction = match cmd.correction {
        CorrectionArg::Bh => Correction::Bh,
        CorrectionArg::Bonferroni => Correction::Bonferroni,
    };
    let cfg = cmd.options.to_config(correction)?;
    let column = cmd
        .column
        .as_deref()
        .map(ColumnSelector::parse)
        .unwrap_or_default();
    let series = read_series_file(&cmd.input, &column)?;
    let report = detect_changepoints(&series, &cfg)?;
    let json = to_json(&report)? + "\n";
    match &cmd.out {
        Some(path) => write_file(path, &json)?,
        None => print!("{json}"),
    }
    if let Some(path) = &cmd.plot {
        let title = format!(
            "{}: {} change point(s)",
            cmd.input.display(),
            report.final_cps.len()
        );
        write_file(
            path,
            &series_svg(series.values(), &report.final_cps, &title),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SimulationSidecar<'a> {
    model: String,
    seed: u64,
    total_length: usize,
    true_cps: Vec<usize>,
    spec: &'a crate::simulate::PiecewiseSpec,
}

pub fn simulate(cmd: &SimulateCmd) -> Result<()> {
    let spec = cmd.model.spec();
    let series = simulate_piecewise(&spec, cmd.seed);
    let file = File::create(&cmd.output).map_err(io_err(&cmd.output))?;
    write_series_csv(&series, BufWriter::new(file))?;
    let sidecar = SimulationSidecar {
        model: cmd.model.to_string(),
        seed: cmd.seed,
        total_length: spec.total_length(),
        true_cps: spec.true_cps(),
        spec: &spec,
    };
    write_file(
        &cmd.output.with_extension("json"),
        &(to_json(&sidecar)? + "\n"),
    )
}

/// File-system safe model tag, e.g. `A_0.4`.
fn model_tag(model: &str) -> String {
    model.replace(':', "_")
}

pub fn bench(cmd: &BenchCmd) -> Result<()> {
    let cfg = cmd.options.to_config(Correction::Bh)?;
    let models = if cmd.models.is_empty() {
        BuiltinModel::all()
    } else {
        cmd.models.clone()
    };
    let results = run_models(&models, cmd.replicates, cmd.seed, &cfg)?;
    fs::create_dir_all(&cmd.out).map_err(io_err(&cmd.out))?;

    let rates_path = cmd.out.join("rates.csv");
    write_rates_csv(
        &results,
        File::create(&rates_path).map_err(io_err(&rates_path))?,
    )?;
    let locs_path = cmd.out.join("locations.csv");
    write_locations_csv(
        &results,
        File::create(&locs_path).map_err(io_err(&locs_path))?,
    )?;

    for model in &models {
        let name = model.to_string();
        let group: Vec<BenchResult> = results
            .iter()
            .filter(|r| r.model == name)
            .cloned()
            .collect();
        let path = cmd.out.join(format!("locations_{}.svg", model_tag(&name)));
        write_file(&path, &locations_svg(&group, model.spec().total_length()))?;
    }

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for r in &results {
        let _ = writeln!(
            out,
            "{:<8} {:<10} {:.2}",
            r.model,
            r.label(),
            r.exact_detection_rate
        );
    }
    Ok(())
}
