// SPDX-License-Identifier: MIT OR Apache-2.0

//! Multiple-testing corrections over the per-boundary p-values.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Correction {
    /// Benjamini–Hochberg step-up FDR control.
    #[default]
    Bh,
    /// Bonferroni-adjusted p-values `min(1, q p_i)`.
    Bonferroni,
}

impl Correction {
    pub fn apply(self, pvals: &[f64], alpha: f64) -> Result<MultipleTestOutcome> {
        match self {
            Correction::Bh => bh_procedure(pvals, alpha),
            Correction::Bonferroni => bonferroni_procedure(pvals, alpha),
        }
    }

    /// Method label used in benchmark tables.
    pub fn label(self) -> &'static str {
        match self {
            Correction::Bh => "MCP2-BH",
            Correction::Bonferroni => "MCP2-BONF",
        }
    }
}

impl fmt::Display for Correction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Correction::Bh => "bh",
            Correction::Bonferroni => "bonferroni",
        })
    }
}

impl FromStr for Correction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bh" | "fdr" => Ok(Correction::Bh),
            "bonferroni" | "bonf" | "wright" => Ok(Correction::Bonferroni),
            other => Err(Error::invalid(format!(
                "unknown correction '{other}'; expected 'bh' or 'bonferroni'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultipleTestOutcome {
    pub method: Correction,
    pub alpha: f64,
    /// One flag per hypothesis, in input order.
    pub rejected: Vec<bool>,
    /// BH: the step-up threshold `rank · α / q` each p-value was compared
    /// against. Bonferroni: the adjusted p-value `min(1, q p_i)`.
    pub adjusted_or_threshold: Vec<f64>,
}

impl MultipleTestOutcome {
    pub fn rejected_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.rejected
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.then_some(i))
    }
}

fn validate(pvals: &[f64], alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if let Some((i, p)) = pvals
        .iter()
        .enumerate()
        .find(|(_, p)| !(0.0..=1.0).contains(*p))
    {
        return Err(Error::invalid(format!(
            "p-value {p} at position {i} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// Step-up: find the largest rank `i` with `P_(i) <= i α / q` and reject the
/// `i` smallest p-values. Ties keep input order.
pub fn bh_procedure(pvals: &[f64], alpha: f64) -> Result<MultipleTestOutcome> {
    validate(pvals, alpha)?;
    let q = pvals.len();
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by(|&a, &b| pvals[a].total_cmp(&pvals[b]));

    let mut thresholds = vec![0.0; q];
    let mut cutoff = 0;
    for (rank0, &idx) in order.iter().enumerate() {
        let threshold = (rank0 + 1) as f64 * alpha / q as f64;
        thresholds[idx] = threshold;
        if pvals[idx] <= threshold {
            cutoff = rank0 + 1;
        }
    }
    let mut rejected = vec![false; q];
    for &idx in &order[..cutoff] {
        rejected[idx] = true;
    }
    Ok(MultipleTestOutcome {
        method: Correction::Bh,
        alpha,
        rejected,
        adjusted_or_threshold: thresholds,
    })
}

/// Rejects hypothesis `i` iff `q p_i <= α`.
pub fn bonferroni_procedure(pvals: &[f64], alpha: f64) -> Result<MultipleTestOutcome> {
    validate(pvals, alpha)?;
    let q = pvals.len() as f64;
    let rejected = pvals.iter().map(|p| q * p <= alpha).collect();
    let adjusted = pvals.iter().map(|p| (q * p).min(1.0)).collect();
    Ok(MultipleTestOutcome {
        method: Correction::Bonferroni,
        alpha,
        rejected,
        adjusted_or_threshold: adjusted,
    })
}
