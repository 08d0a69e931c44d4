// SPDX-License-Identifier: MIT OR Apache-2.0

//! End-to-end detector: mean-correct, scan, extract candidates, test each
//! candidate boundary against its neighbours, then prune with one multiple
//! testing pass.

use crate::ar::{mean_correct, TimeSeries};
use crate::error::{Error, Result};
use crate::multtest::{Correction, MultipleTestOutcome, DEFAULT_ALPHA};
use crate::scan::{extract_candidates, scan_statistics, CandidateSet, ScanConfig, ScanProfile};
use crate::sdtest::{discrimination_test, DiscriminationResult, OrderMode};
use serde::Serialize;

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectConfig {
    pub scan: ScanConfig,
    pub order_mode: OrderMode,
    pub correction: Correction,
    pub alpha: f64,
    /// Re-test merged segments until no candidate is removed.
    pub iterate: bool,
}

impl Default for DetectConfig {
    fn default() -> Self {
        Self {
            scan: ScanConfig::default(),
            order_mode: OrderMode::default(),
            correction: Correction::Bh,
            alpha: DEFAULT_ALPHA,
            iterate: false,
        }
    }
}

impl DetectConfig {
    pub fn validate(&self) -> Result<()> {
        self.order_mode.validate()?;
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.scan.window_radius == Some(0) {
            return Err(Error::invalid("window radius must be positive"));
        }
        Ok(())
    }
}

/// One adjacent-segment test. Ranges are 1-based and inclusive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryTest {
    pub position: usize,
    pub left: (usize, usize),
    pub right: (usize, usize),
    /// Raw p-value fed to the correction; 1 when the test failed.
    pub p_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<DiscriminationResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChangePointReport {
    pub schema: u32,
    pub series_length: usize,
    pub window_radius: usize,
    pub scan_order: usize,
    pub config: DetectConfig,
    pub candidates: CandidateSet,
    pub boundary_tests: Vec<BoundaryTest>,
    pub outcome: MultipleTestOutcome,
    pub final_cps: Vec<usize>,
    /// Test rounds run; 1 unless iterating.
    pub rounds: usize,
    pub diagnostics: Vec<String>,
}

/// Output of the scan half of the pipeline, reusable across corrections.
#[derive(Debug, Clone)]
pub struct ScanStage {
    /// Globally mean-corrected input.
    pub series: TimeSeries,
    pub profile: ScanProfile,
    /// Candidates that survived end-effect screening.
    pub candidates: CandidateSet,
    pub diagnostics: Vec<String>,
}

pub fn scan_stage(series: &TimeSeries, cfg: &DetectConfig) -> Result<ScanStage> {
    cfg.validate()?;
    let centered = mean_correct(series);
    let profile = scan_statistics(&centered, &cfg.scan)?;
    let mut diagnostics = Vec::new();
    if !profile.degenerate.is_empty() {
        diagnostics.push(format!(
            "{} scan window(s) had degenerate fits and were recorded as 0",
            profile.degenerate.len()
        ));
    }
    let raw = extract_candidates(&profile);
    let n = centered.len();
    let mut candidates = CandidateSet::default();
    for (&k, &ls) in raw.positions.iter().zip(&raw.ls_values) {
        let need = cfg.order_mode.nominal_order(k, n - k) + 2;
        if k < need || n - k < need {
            diagnostics.push(format!(
                "candidate {k} dropped: closer than {need} observations to a series end"
            ));
        } else {
            candidates.positions.push(k);
            candidates.ls_values.push(ls);
        }
    }
    Ok(ScanStage {
        series: centered,
        profile,
        candidates,
        diagnostics,
    })
}

/// Tests each position against its neighbours; `k_0 = 0`, `k_{q+1} = T`.
pub fn test_boundaries(
    series: &TimeSeries,
    positions: &[usize],
    mode: OrderMode,
) -> Vec<BoundaryTest> {
    let n = series.len();
    (0..positions.len())
        .map(|i| {
            let start = if i == 0 { 0 } else { positions[i - 1] };
            let k = positions[i];
            let end = positions.get(i + 1).copied().unwrap_or(n);
            let left = series.slice(start..k);
            let right = series.slice(k..end);
            let (p_value, result, error) = match discrimination_test(&left, &right, mode) {
                Ok(r) => (r.p_value, Some(r), None),
                Err(e) => (1.0, None, Some(e.to_string())),
            };
            BoundaryTest {
                position: k,
                left: (start + 1, k),
                right: (k + 1, end),
                p_value,
                result,
                error,
            }
        })
        .collect()
}

/// Runs the tests and the correction on a finished scan.
pub fn test_stage(stage: &ScanStage, cfg: &DetectConfig) -> Result<ChangePointReport> {
    let mut diagnostics = stage.diagnostics.clone();
    let mut positions = stage.candidates.positions.clone();
    let mut rounds = 0;
    let (tests, outcome) = loop {
        rounds += 1;
        let tests = test_boundaries(&stage.series, &positions, cfg.order_mode);
        let pvals: Vec<f64> = tests.iter().map(|t| t.p_value).collect();
        let mut outcome = cfg.correction.apply(&pvals, cfg.alpha)?;
        for (flag, t) in outcome.rejected.iter_mut().zip(&tests) {
            if t.error.is_some() {
                *flag = false;
            }
        }
        let survivors: Vec<usize> = outcome.rejected_indices().map(|i| positions[i]).collect();
        if !cfg.iterate || survivors.len() == positions.len() || survivors.is_empty() {
            break (tests, outcome);
        }
        positions = survivors;
    };

    for t in &tests {
        if let Some(e) = &t.error {
            diagnostics.push(format!("boundary {} not tested: {e}", t.position));
        }
        if let Some(r) = &t.result {
            if r.order_capped {
                diagnostics.push(format!(
                    "boundary {}: test order capped at a third of the shorter segment",
                    t.position
                ));
            }
            if r.df_floored {
                diagnostics.push(format!(
                    "boundary {}: degrees of freedom raised to 1",
                    t.position
                ));
            }
        }
    }
    let final_cps = outcome
        .rejected_indices()
        .map(|i| tests[i].position)
        .collect();
    Ok(ChangePointReport {
        schema: REPORT_SCHEMA,
        series_length: stage.series.len(),
        window_radius: stage.profile.radius,
        scan_order: stage.profile.order,
        config: *cfg,
        candidates: stage.candidates.clone(),
        boundary_tests: tests,
        outcome,
        final_cps,
        rounds,
        diagnostics,
    })
}

pub fn detect_changepoints(series: &TimeSeries, cfg: &DetectConfig) -> Result<ChangePointReport> {
    let stage = scan_stage(series, cfg)?;
    test_stage(&stage, cfg)
}
