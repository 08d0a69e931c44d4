// SPDX-License-Identifier: MIT OR Apache-2.0

//! Multiple change-point detection for piecewise stationary autoregressive
//! time series.
//!
//! The detector runs in three steps:
//!
//! 1. a likelihood-ratio scan ([`scan`]) proposes a deliberately generous set
//!    of candidate change points;
//! 2. each candidate is checked with a parametric spectral-discrimination test
//!    ([`sdtest`]) comparing the segments on either side of it;
//! 3. the resulting p-values go through a multiple-testing correction
//!    ([`multtest`]), Benjamini–Hochberg or Bonferroni.
//!
//! [`pipeline::detect_changepoints`] composes the steps. [`simulate`] and
//! [`bench`] provide the benchmark models and the Monte Carlo harness.
//!
//! ```
//! use mcp2::prelude::*;
//!
//! let spec = builtin_model(BuiltinModel::C);
//! let series = simulate_piecewise(&spec, 7);
//! let report = detect_changepoints(&series, &DetectConfig::default()).unwrap();
//! assert!(report.final_cps.iter().all(|k| report.candidates.positions.contains(k)));
//! ```

#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ar;
pub mod bench;
pub mod chisq;
pub mod cli;
pub mod error;
pub mod io;
mod linalg;
pub mod multtest;
pub mod pipeline;
pub mod plot;
pub mod scan;
pub mod sdtest;
pub mod simulate;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::ar::{fit_ar, mean_correct, ArFit, TimeSeries};
    pub use crate::error::{Error, Result};
    pub use crate::multtest::{bh_procedure, bonferroni_procedure, Correction};
    pub use crate::pipeline::{detect_changepoints, ChangePointReport, DetectConfig};
    pub use crate::scan::{ScanConfig, ScanOrder};
    pub use crate::sdtest::{discrimination_test, OrderMode};
    pub use crate::simulate::{
        builtin_model, simulate_piecewise, simulate_replicate, BuiltinModel,
    };
}
