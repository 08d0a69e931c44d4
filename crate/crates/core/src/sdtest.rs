// SPDX-License-Identifier: MIT OR Apache-2.0

//! Parametric spectral-discrimination test for two adjacent segments.
//!
//! Under the alternative each segment gets its own Yule–Walker fit; under the
//! null both share one fit computed from the pooled autocovariances
//!
//! ```text
//! c(j) = (Σ_t x_t x_{t-j} + Σ_t y_t y_{t-j}) / (T1 + T2)
//! ```
//!
//! and the statistic is `Λ = T1 ln(σ0² / σx²) + T2 ln(σ0² / σy²)`, referred
//! to a chi-square distribution. Each segment is mean-corrected on its own,
//! so a pure level shift between segments is not evidence of a change.

use crate::ar::{
    bic_select_order, fit_ar, lag_product_sum, levinson_durbin, levinson_durbin_path, mean_correct,
    ArFit, AutocovSeq, TimeSeries,
};
use crate::chisq::chi_sq_upper_tail;
use crate::error::{Error, Result};
use serde::Serialize;

pub const DEFAULT_ORDER_EXPONENT: f64 = 1.5;
pub const DEFAULT_BIC_MAX_ORDER: usize = 10;

/// How the autoregressive orders of the test are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum OrderMode {
    /// Orders picked by BIC per segment; `df = p_x + p_y - p + 1`.
    Bic { max_order: usize },
    /// `p_x = p_y = p = ⌊(ln T_min)^v⌋`; `df = p + 1`.
    Fixed { v: f64 },
}

impl Default for OrderMode {
    fn default() -> Self {
        OrderMode::Fixed {
            v: DEFAULT_ORDER_EXPONENT,
        }
    }
}

impl OrderMode {
    pub fn validate(&self) -> Result<()> {
        match *self {
            OrderMode::Bic { max_order: 0 } => {
                Err(Error::invalid("BIC order mode needs max_order >= 1"))
            }
            OrderMode::Fixed { v } if !(v > 1.0) || !v.is_finite() => Err(Error::invalid(format!(
                "fixed order exponent must be a finite number > 1, got {v}"
            ))),
            _ => Ok(()),
        }
    }

    /// Order the test would use for segments of these lengths, for end-effect
    /// screening before a test is run. In BIC mode this is the largest order
    /// BIC may pick.
    pub fn nominal_order(&self, t1: usize, t2: usize) -> usize {
        match *self {
            OrderMode::Fixed { v } => fixed_order(t1, t2, v),
            OrderMode::Bic { max_order } => max_order.min(t1.min(t2) / 3).max(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminationResult {
    pub lambda: f64,
    pub df: usize,
    pub p_value: f64,
    pub fit_x: ArFit,
    pub fit_y: ArFit,
    pub fit_pooled: ArFit,
    /// `(p_x, p_y, p)`.
    pub orders: (usize, usize, usize),
    /// The segment-length cap `⌊T_min / 3⌋` lowered the order.
    pub order_capped: bool,
    /// BIC-mode degrees of freedom came out below 1 and were raised to 1.
    pub df_floored: bool,
}

/// Pooled autocovariances of two mean-corrected segments.
pub fn pooled_autocov(x: &TimeSeries, y: &TimeSeries, max_lag: usize) -> Result<AutocovSeq> {
    let t_min = x.len().min(y.len());
    if max_lag >= t_min {
        return Err(Error::invalid(format!(
            "max_lag {max_lag} must be smaller than the shorter segment length {t_min}"
        )));
    }
    let n = x.len() + y.len();
    let gamma = (0..=max_lag)
        .map(|j| (lag_product_sum(x.values(), j) + lag_product_sum(y.values(), j)) / n as f64)
        .collect();
    Ok(AutocovSeq {
        gamma,
        sample_size: n,
    })
}

fn fixed_order_uncapped(t_min: usize, v: f64) -> usize {
    ((t_min as f64).ln().powf(v).floor() as usize).max(1)
}

/// `⌊(ln T_min)^v⌋`, at least 1, capped at `⌊T_min / 3⌋`.
pub fn fixed_order(t1: usize, t2: usize, v: f64) -> usize {
    let t_min = t1.min(t2);
    fixed_order_uncapped(t_min, v).min(t_min / 3).max(1)
}

/// Tests whether `x` and `y` share one autoregressive structure. Rejection is
/// left to the caller.
pub fn discrimination_test(
    x: &TimeSeries,
    y: &TimeSeries,
    mode: OrderMode,
) -> Result<DiscriminationResult> {
    mode.validate()?;
    let x = mean_correct(x);
    let y = mean_correct(y);
    let (t1, t2) = (x.len(), y.len());
    let t_min = t1.min(t2);

    let (fit_x, fit_y, fit_pooled, df, order_capped, df_floored) = match mode {
        OrderMode::Fixed { v } => {
            let p = fixed_order(t1, t2, v);
            if t_min < p + 2 {
                return Err(Error::SegmentTooShort {
                    len: t_min,
                    required: p + 2,
                });
            }
            let capped = p < fixed_order_uncapped(t_min, v);
            let fit_x = fit_ar(&x, p)?;
            let fit_y = fit_ar(&y, p)?;
            let pooled = levinson_durbin(&pooled_autocov(&x, &y, p)?, p)?;
            (fit_x, fit_y, pooled, p + 1, capped, false)
        }
        OrderMode::Bic { max_order } => {
            if t_min < 3 {
                return Err(Error::SegmentTooShort {
                    len: t_min,
                    required: 3,
                });
            }
            let select = |s: &TimeSeries| {
                let cap = max_order.min(s.len() / 3).max(1);
                bic_select_order(s, cap).map(|p| (p, cap < max_order))
            };
            let (px, cap_x) = select(&x)?;
            let (py, cap_y) = select(&y)?;
            let fit_x = fit_ar(&x, px)?;
            let fit_y = fit_ar(&y, py)?;
            let pooled = pooled_bic_fit(&x, &y, px.max(py))?;
            let raw_df = px as i64 + py as i64 - pooled.order as i64 + 1;
            (
                fit_x,
                fit_y,
                pooled,
                raw_df.max(1) as usize,
                cap_x || cap_y,
                raw_df < 1,
            )
        }
    };

    for (name, fit) in [
        ("segment x", &fit_x),
        ("segment y", &fit_y),
        ("pooled", &fit_pooled),
    ] {
        if !(fit.sigma2 > 0.0) {
            return Err(Error::degenerate(
                format!("{name} fit"),
                "innovation variance is zero",
            ));
        }
    }
    let s0 = fit_pooled.sigma2;
    let lambda = t1 as f64 * (s0 / fit_x.sigma2).ln() + t2 as f64 * (s0 / fit_y.sigma2).ln();
    let p_value = chi_sq_upper_tail(lambda.max(0.0), df)?;
    Ok(DiscriminationResult {
        lambda,
        df,
        p_value,
        orders: (fit_x.order, fit_y.order, fit_pooled.order),
        fit_x,
        fit_y,
        fit_pooled,
        order_capped,
        df_floored,
    })
}

/// Pooled order by BIC over `0..=max_order`, scoring
/// `N ln σ̂²_p + (p + 1) ln N` with `N = T1 + T2`.
fn pooled_bic_fit(x: &TimeSeries, y: &TimeSeries, max_order: usize) -> Result<ArFit> {
    let acov = pooled_autocov(x, y, max_order)?;
    let n = acov.sample_size as f64;
    let path = levinson_durbin_path(&acov, max_order)?;
    path.into_iter()
        .filter(|f| f.sigma2 > 0.0)
        .map(|f| {
            let score = n * f.sigma2.ln() + (f.order as f64 + 1.0) * n.ln();
            (f, score)
        })
        .fold(None::<(ArFit, f64)>, |best, (f, s)| match best {
            Some((bf, bs)) if bs <= s => Some((bf, bs)),
            _ => Some((f, s)),
        })
        .map(|(f, _)| f)
        .ok_or_else(|| Error::degenerate("pooled fit", "pooled autocovariance is zero"))
}
