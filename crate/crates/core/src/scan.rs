// SPDX-License-Identifier: MIT OR Apache-2.0

//! Likelihood-ratio scan over a sliding window of radius `h`.
//!
//! For each split point `t` (1-based, `h <= t <= T - h`) the window
//! `x_{t-h+1} .. x_{t+h}` is fitted three times with the same AR order `p`:
//! the left half, the right half and the whole window. Every fit maximizes the
//! conditional Gaussian likelihood, conditioning on the preceding in-window
//! observations, so the right half regresses on left-half lags near the split
//! and the pooled log-likelihood decomposes into the two half sums. The scan
//! value is
//!
//! ```text
//! LS_h(t) = (L_left(θ_1) + L_right(θ_2) - L_full(θ)) / h
//! ```
//!
//! which is a log-likelihood ratio and therefore non-negative. The pooled term
//! carries coefficient `1/h`, not `2/h`: with `2/h` the statistic would not be
//! a likelihood ratio and would have no fixed sign.

use crate::ar::{bic_select_order, TimeSeries};
use crate::error::{Error, Result};
use crate::linalg::cholesky_solve;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest order the automatic scan order may select.
pub const MAX_AUTO_SCAN_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "order")]
pub enum ScanOrder {
    /// BIC order of the full series, capped at [`MAX_AUTO_SCAN_ORDER`].
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    /// Window radius `h`; `None` uses [`default_window`].
    pub window_radius: Option<usize>,
    pub order: ScanOrder,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            window_radius: None,
            order: ScanOrder::Auto,
        }
    }
}

impl ScanConfig {
    pub fn resolve_window(&self, len: usize) -> usize {
        self.window_radius.unwrap_or_else(|| default_window(len))
    }

    /// Resolves the scan order for a mean-corrected series and radius `h`.
    pub fn resolve_order(&self, series: &TimeSeries, h: usize) -> Result<usize> {
        match self.order {
            ScanOrder::Fixed(p) => {
                if h < p + 2 {
                    return Err(Error::invalid(format!(
                        "window radius {h} must be at least scan order {p} + 2"
                    )));
                }
                Ok(p)
            }
            ScanOrder::Auto => {
                let cap = MAX_AUTO_SCAN_ORDER
                    .min(h.saturating_sub(2))
                    .min(series.len().saturating_sub(1));
                if cap == 0 {
                    return Ok(0);
                }
                bic_select_order(series, cap)
            }
        }
    }
}

/// `max(50, ⌈ln T⌉)`.
pub fn default_window(len: usize) -> usize {
    let log_len = (len.max(1) as f64).ln().ceil() as usize;
    log_len.max(50)
}

/// `LS_h(t)` for `t = h, h+1, …, T-h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanProfile {
    pub values: Vec<f64>,
    /// Position of `values[0]`; equals the radius.
    pub offset: usize,
    pub radius: usize,
    pub order: usize,
    /// Positions whose window fits broke down; recorded as 0.
    pub degenerate: Vec<usize>,
}

impl ScanProfile {
    pub fn position(&self, index: usize) -> usize {
        self.offset + index
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.values.len()).map(|i| self.offset + i)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Position of the largest value (first one on ties).
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, v) in self.values.iter().enumerate() {
            if best.is_none_or(|(_, b)| *v > b) {
                best = Some((i, *v));
            }
        }
        best.map(|(i, _)| self.position(i))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct CandidateSet {
    pub positions: Vec<usize>,
    pub ls_values: Vec<f64>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Computes the scan profile. The series should already be mean-corrected.
pub fn scan_statistics(series: &TimeSeries, cfg: &ScanConfig) -> Result<ScanProfile> {
    let len = series.len();
    let h = cfg.resolve_window(len);
    if h == 0 {
        return Err(Error::invalid("window radius must be positive"));
    }
    if len < 2 * h {
        return Err(Error::SeriesTooShort {
            len,
            required: 2 * h,
        });
    }
    let p = cfg.resolve_order(series, h)?;
    Ok(scan_with_order(series, h, p))
}

/// Scan with an already resolved radius and order.
pub fn scan_with_order(series: &TimeSeries, h: usize, p: usize) -> ScanProfile {
    let x = series.values();
    let moments = LagMoments::new(x, p);
    let mut values = Vec::with_capacity(x.len() - 2 * h + 1);
    let mut degenerate = Vec::new();
    for t in h..=x.len() - h {
        let start = t - h;
        let ls = (|| -> Result<f64> {
            let left = moments.max_loglik(start + p, t)?;
            let right = moments.max_loglik(t, t + h)?;
            let full = moments.max_loglik(start + p, t + h)?;
            Ok((left + right - full) / h as f64)
        })();
        match ls {
            Ok(v) if v.is_finite() => values.push(v),
            _ => {
                values.push(0.0);
                degenerate.push(t);
            }
        }
    }
    ScanProfile {
        values,
        offset: h,
        radius: h,
        order: p,
        degenerate,
    }
}

/// Local maximizers over `±h`, ties to the smallest position.
///
/// Degenerate positions never become candidates.
pub fn extract_candidates(profile: &ScanProfile) -> CandidateSet {
    let v = &profile.values;
    let h = profile.radius;
    let mut out = CandidateSet::default();
    for i in 0..v.len() {
        if profile
            .degenerate
            .binary_search(&profile.position(i))
            .is_ok()
        {
            continue;
        }
        let lo = i.saturating_sub(h);
        let hi = (i + h).min(v.len() - 1);
        let dominates_left = v[lo..i].iter().all(|s| v[i] > *s);
        let dominates_right = v[i + 1..=hi].iter().all(|s| v[i] >= *s);
        if dominates_left && dominates_right {
            out.positions.push(profile.position(i));
            out.ls_values.push(v[i]);
        }
    }
    out
}

/// Prefix sums of lagged products, `prefix[d][u] = Σ_{w=d}^{u-1} x_w x_{w-d}`,
/// giving O(1) access to any windowed cross-product of lags.
struct LagMoments<'a> {
    x: &'a [f64],
    order: usize,
    prefix: Vec<Vec<f64>>,
}

impl<'a> LagMoments<'a> {
    fn new(x: &'a [f64], order: usize) -> Self {
        let prefix = (0..=order)
            .map(|d| {
                let mut acc = vec![0.0; x.len() + 1];
                for w in 0..x.len() {
                    acc[w + 1] = acc[w] + if w >= d { x[w] * x[w - d] } else { 0.0 };
                }
                acc
            })
            .collect();
        Self { x, order, prefix }
    }

    /// `Σ_{r=lo}^{hi-1} x_{r-i} x_{r-j}`, requires `lo >= max(i, j)`.
    fn cross(&self, lo: usize, hi: usize, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let d = j - i;
        self.prefix[d][hi - i] - self.prefix[d][lo - i]
    }

    /// Maximized conditional log-likelihood of the order-`p` regression of
    /// `x_r` on its `p` lags over rows `lo..hi`.
    fn max_loglik(&self, lo: usize, hi: usize) -> Result<f64> {
        let p = self.order;
        debug_assert!(lo >= p && hi <= self.x.len());
        let n = hi - lo;
        if n == 0 {
            return Err(Error::degenerate("scan window", "no rows to fit"));
        }
        let s00 = self.cross(lo, hi, 0, 0);
        let rss = if p == 0 {
            s00
        } else {
            let mut gram = vec![0.0; p * p];
            let mut rhs = vec![0.0; p];
            for i in 1..=p {
                rhs[i - 1] = -self.cross(lo, hi, 0, i);
                for j in 1..=p {
                    gram[(i - 1) * p + (j - 1)] = self.cross(lo, hi, i, j);
                }
            }
            let beta = cholesky_solve(&mut gram, &rhs, p)
                .ok_or_else(|| Error::degenerate("scan window", "singular lag Gram matrix"))?;
            s00 - beta.iter().zip(&rhs).map(|(b, r)| b * r).sum::<f64>()
        };
        if !(rss > s00 * 1e-12) || !(s00 > 0.0) {
            return Err(Error::degenerate("scan window", "window fits exactly"));
        }
        let sigma2 = rss / n as f64;
        Ok(-0.5 * n as f64 * ((2.0 * PI * sigma2).ln() + 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(values: &[f64], h: usize) -> ScanProfile {
        ScanProfile {
            values: values.to_vec(),
            offset: 0,
            radius: h,
            order: 0,
            degenerate: vec![],
        }
    }

    #[test]
    fn default_window_values() {
        assert_eq!(default_window(2048), 50);
        assert_eq!(default_window(100), 50);
        assert_eq!((1e30f64).ln().ceil(), 70.0);
        assert_eq!(default_window(usize::MAX), 50);
    }

    #[test]
    fn candidate_rule_examples() {
        let c = extract_candidates(&profile(&[0.0, 1.0, 0.0, 0.0, 2.0, 0.0], 2));
        assert_eq!(c.positions, vec![1, 4]);
        assert_eq!(c.ls_values, vec![1.0, 2.0]);

        let c = extract_candidates(&profile(&[5.0, 4.0, 3.0, 2.0, 1.0], 1));
        assert_eq!(c.positions, vec![0]);

        let c = extract_candidates(&profile(&[1.0; 4], 4));
        assert_eq!(c.positions, vec![0]);
    }

    #[test]
    fn plateau_yields_only_its_first_point() {
        let c = extract_candidates(&profile(&[1.0; 7], 2));
        assert_eq!(c.positions, vec![0]);
        let c = extract_candidates(&profile(&[0.0, 2.0, 2.0, 2.0, 0.0, 0.0, 0.0, 1.0], 2));
        assert_eq!(c.positions, vec![1, 7]);
    }

    #[test]
    fn degenerate_positions_are_skipped() {
        let values = [-1.0, 0.0, -1.0, -1.0, -1.0];
        assert_eq!(extract_candidates(&profile(&values, 1)).positions, vec![1]);
        let mut p = profile(&values, 1);
        p.degenerate = vec![1];
        assert!(extract_candidates(&p).is_empty());
    }

    #[test]
    fn too_short_series_is_rejected() {
        let x = TimeSeries::new((0..99).map(|i| (i as f64).sin()).collect()).unwrap();
        let err = scan_statistics(&x, &ScanConfig::default()).unwrap_err();
        assert_eq!(
            err,
            Error::SeriesTooShort {
                len: 99,
                required: 100
            }
        );
    }

    #[test]
    fn fixed_order_must_fit_the_window() {
        let x = TimeSeries::new((0..40).map(|i| (i as f64 * 0.7).sin()).collect()).unwrap();
        let cfg = ScanConfig {
            window_radius: Some(5),
            order: ScanOrder::Fixed(4),
        };
        assert!(matches!(
            scan_statistics(&x, &cfg),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn profile_length_is_n_minus_2h_plus_1() {
        let x: Vec<f64> = (0..1024)
            .map(|i| ((i * 7919) % 113) as f64 / 113.0 - 0.5)
            .collect();
        let x = TimeSeries::new(x).unwrap();
        let prof = scan_statistics(
            &x,
            &ScanConfig {
                window_radius: Some(50),
                order: ScanOrder::Fixed(1),
            },
        )
        .unwrap();
        assert_eq!(prof.len(), 925);
        assert_eq!(prof.offset, 50);
    }

    #[test]
    fn identical_halves_give_zero() {
        // Periodic with period 4: with p = 0 each half and the pooled window
        // have the same mean square, so the three maximizers coincide.
        let x: Vec<f64> = (0..16).map(|i| [1.0, -2.0, 0.5, 0.5][i % 4]).collect();
        let x = TimeSeries::new(x).unwrap();
        let prof = scan_with_order(&x, 4, 0);
        for v in &prof.values {
            assert!(v.abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn lag_moments_match_direct_sums() {
        let x: Vec<f64> = (0..30).map(|i| ((i * 37) % 11) as f64 - 5.0).collect();
        let m = LagMoments::new(&x, 3);
        for (lo, hi) in [(3, 30), (5, 12), (7, 8)] {
            for i in 0..=3 {
                for j in 0..=3 {
                    let direct: f64 = (lo..hi).map(|r| x[r - i] * x[r - j]).sum();
                    assert!((m.cross(lo, hi, i, j) - direct).abs() < 1e-9);
                }
            }
        }
    }
}
