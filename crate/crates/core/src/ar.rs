// SPDX-License-Identifier: MIT OR Apache-2.0

//! Autoregressive kernel shared by the scan and the discrimination test.
//!
//! Coefficients follow the whitening convention
//! `x_t + β_1 x_{t-1} + … + β_p x_{t-p} = ε_t`, so an AR(1) process simulated
//! as `x_t = 0.7 x_{t-1} + ε_t` fits to `β_1 ≈ -0.7`.

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Ordered, finite, real-valued observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid(
                "time series must contain at least one value",
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "time series value at index {i} is not finite"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; a `TimeSeries` holds at least one value.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Sub-series over `range`. Panics if the range is empty or out of bounds.
    pub fn slice(&self, range: std::ops::Range<usize>) -> TimeSeries {
        assert!(!range.is_empty(), "empty slice of a time series");
        TimeSeries {
            values: self.values[range].to_vec(),
        }
    }

    pub fn scaled(&self, c: f64) -> TimeSeries {
        TimeSeries {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// Sample autocovariances `gamma[0..=max_lag]` of a series of length `sample_size`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutocovSeq {
    pub gamma: Vec<f64>,
    pub sample_size: usize,
}

impl AutocovSeq {
    pub fn max_lag(&self) -> usize {
        self.gamma.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArFit {
    pub order: usize,
    pub coeffs: Vec<f64>,
    pub sigma2: f64,
    /// Conditional Gaussian log-likelihood, present when the fit was evaluated
    /// against data.
    pub loglik: Option<f64>,
}

impl ArFit {
    pub fn new(coeffs: Vec<f64>, sigma2: f64) -> Self {
        Self {
            order: coeffs.len(),
            coeffs,
            sigma2,
            loglik: None,
        }
    }

    /// Residual `e_t = x_t + Σ β_j x_{t-j}` at index `t >= order`.
    pub fn residual(&self, x: &[f64], t: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .fold(x[t], |acc, (j, b)| acc + b * x[t - j - 1])
    }
}

pub fn mean_correct(series: &TimeSeries) -> TimeSeries {
    let mean = series.mean();
    TimeSeries {
        values: series.values.iter().map(|v| v - mean).collect(),
    }
}

/// `gamma[j] = (1/T) Σ_{t=j}^{T-1} x_t x_{t-j}`, divisor `T` at every lag.
///
/// No mean is subtracted; mean-correct the series first.
pub fn sample_autocov(series: &TimeSeries, max_lag: usize) -> Result<AutocovSeq> {
    let x = series.values();
    let n = x.len();
    if max_lag >= n {
        return Err(Error::invalid(format!(
            "max_lag {max_lag} must be smaller than the series length {n}"
        )));
    }
    let gamma = (0..=max_lag)
        .map(|j| lag_product_sum(x, j) / n as f64)
        .collect();
    Ok(AutocovSeq {
        gamma,
        sample_size: n,
    })
}

/// `Σ_{t=lag}^{n-1} x_t x_{t-lag}`.
pub(crate) fn lag_product_sum(x: &[f64], lag: usize) -> f64 {
    x[lag..].iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Yule–Walker fit of order `order` from autocovariances.
pub fn levinson_durbin(acov: &AutocovSeq, order: usize) -> Result<ArFit> {
    let mut path = levinson_durbin_path(acov, order)?;
    Ok(path.pop().expect("path holds orders 0..=order"))
}

/// Every fit produced along the recursion, orders `0..=order`.
///
/// The innovation variances are non-increasing along the path.
pub fn levinson_durbin_path(acov: &AutocovSeq, order: usize) -> Result<Vec<ArFit>> {
    let g = &acov.gamma;
    if order > acov.max_lag() {
        return Err(Error::invalid(format!(
            "order {order} exceeds the available autocovariance lags ({})",
            acov.max_lag()
        )));
    }
    if let Some(j) = g.iter().position(|v| !v.is_finite()) {
        return Err(Error::invalid(format!(
            "autocovariance at lag {j} is not finite"
        )));
    }
    if g[0] < 0.0 {
        return Err(Error::invalid("autocovariance at lag 0 is negative"));
    }

    // phi holds the predictor form x_t ≈ Σ phi_j x_{t-j}; beta = -phi.
    let mut phi: Vec<f64> = Vec::with_capacity(order);
    let mut err = g[0];
    let mut path = Vec::with_capacity(order + 1);
    path.push(ArFit::new(Vec::new(), err));

    let floor = g[0] * 1e-13;
    for k in 1..=order {
        if !(err > floor) {
            return Err(Error::degenerate(
                format!("Levinson-Durbin stage {k}"),
                format!("prediction error variance {err:e} vanished before order {k}"),
            ));
        }
        let acc = g[k]
            - phi
                .iter()
                .enumerate()
                .map(|(j, p)| p * g[k - j - 1])
                .sum::<f64>();
        let kappa = acc / err;
        if !kappa.is_finite() || kappa.abs() > 1.0 + 1e-10 {
            return Err(Error::degenerate(
                format!("Levinson-Durbin stage {k}"),
                format!("reflection coefficient {kappa} outside [-1, 1]"),
            ));
        }
        let prev = phi.clone();
        for j in 0..phi.len() {
            phi[j] = prev[j] - kappa * prev[k - 2 - j];
        }
        phi.push(kappa);
        err = (err * (1.0 - kappa * kappa)).max(0.0);
        path.push(ArFit::new(phi.iter().map(|p| -p).collect(), err));
    }
    Ok(path)
}

/// `Σ_{t=p+1}^{T} log φ(e_t; 0, σ²)`; the first `p` points only condition.
pub fn conditional_loglik(series: &TimeSeries, fit: &ArFit) -> Result<f64> {
    let x = series.values();
    let p = fit.coeffs.len();
    if !(fit.sigma2 > 0.0) {
        return Err(Error::invalid(format!(
            "innovation variance must be positive, got {}",
            fit.sigma2
        )));
    }
    if x.len() <= p {
        return Err(Error::invalid(format!(
            "series length {} must exceed the order {p}",
            x.len()
        )));
    }
    let rss: f64 = (p..x.len()).map(|t| fit.residual(x, t).powi(2)).sum();
    let n = (x.len() - p) as f64;
    Ok(-0.5 * n * (2.0 * PI * fit.sigma2).ln() - 0.5 * rss / fit.sigma2)
}

/// Levinson–Durbin fit on the sample autocovariances, with the conditional
/// log-likelihood evaluated on `series`.
pub fn fit_ar(series: &TimeSeries, order: usize) -> Result<ArFit> {
    if series.len() <= order {
        return Err(Error::invalid(format!(
            "series length {} must exceed the order {order}",
            series.len()
        )));
    }
    let acov = sample_autocov(series, order)?;
    let mut fit = levinson_durbin(&acov, order)?;
    fit.loglik = Some(conditional_loglik(series, &fit)?);
    Ok(fit)
}

/// `-2 loglik + (p + 1) log T` for a fit carrying its log-likelihood.
pub fn bic(fit: &ArFit, sample_size: usize) -> f64 {
    let ll = fit.loglik.unwrap_or(f64::NEG_INFINITY);
    -2.0 * ll + (fit.order as f64 + 1.0) * (sample_size as f64).ln()
}

/// Order in `0..=max_order` minimizing BIC; ties go to the smaller order.
///
/// Orders whose fit fails are skipped.
pub fn bic_select_order(series: &TimeSeries, max_order: usize) -> Result<usize> {
    if max_order == 0 {
        return Err(Error::invalid("max_order must be at least 1"));
    }
    if series.len() <= max_order {
        return Err(Error::invalid(format!(
            "series length {} must exceed max_order {max_order}",
            series.len()
        )));
    }
    let mut best: Option<(usize, f64)> = None;
    let mut last_err = None;
    for p in 0..=max_order {
        match fit_ar(series, p) {
            Ok(fit) => {
                let score = bic(&fit, series.len());
                if best.is_none_or(|(_, b)| score < b) {
                    best = Some((p, score));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some((p, _)) => Ok(p),
        None => Err(Error::NoFittableOrder {
            max_order,
            last: Box::new(last_err.expect("at least one order was attempted")),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    fn naive_autocov(x: &[f64], j: usize) -> f64 {
        let mut s = 0.0;
        for t in j..x.len() {
            s += x[t] * x[t - j];
        }
        s / x.len() as f64
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(TimeSeries::new(vec![]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn mean_correct_examples() {
        assert_eq!(
            mean_correct(&ts(&[1.0, 2.0, 3.0])).values(),
            &[-1.0, 0.0, 1.0]
        );
        assert_eq!(
            mean_correct(&ts(&[5.0, 5.0, 5.0])).values(),
            &[0.0, 0.0, 0.0]
        );
        assert_eq!(mean_correct(&ts(&[0.5, -0.5])).values(), &[0.5, -0.5]);
    }

    #[test]
    fn autocov_examples() {
        let x = [1.0, -1.0, 1.0, -1.0];
        let expected: Vec<f64> = (0..=1).map(|j| naive_autocov(&x, j)).collect();
        assert_eq!(expected, vec![1.0, -0.75]);
        assert_eq!(sample_autocov(&ts(&x), 1).unwrap().gamma, expected);

        let x = [2.0, 0.0, 0.0, 0.0];
        assert_eq!(naive_autocov(&x, 0), 1.0);
        assert_eq!(naive_autocov(&x, 1), 0.0);
        assert_eq!(sample_autocov(&ts(&x), 1).unwrap().gamma, vec![1.0, 0.0]);

        let zeros = sample_autocov(&ts(&[0.0; 6]), 5).unwrap();
        assert!(zeros.gamma.iter().all(|g| *g == 0.0));
        assert_eq!(zeros.sample_size, 6);
    }

    #[test]
    fn autocov_lag_must_be_below_length() {
        assert!(matches!(
            sample_autocov(&ts(&[1.0, 2.0]), 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn levinson_small_systems() {
        let acov = AutocovSeq {
            gamma: vec![1.0, 0.5],
            sample_size: 10,
        };
        let fit = levinson_durbin(&acov, 1).unwrap();
        assert!((fit.coeffs[0] + 0.5).abs() < 1e-15);
        assert!((fit.sigma2 - 0.75).abs() < 1e-15);

        let acov = AutocovSeq {
            gamma: vec![1.0, 0.5, 0.25],
            sample_size: 10,
        };
        let fit = levinson_durbin(&acov, 2).unwrap();
        assert!((fit.coeffs[0] + 0.5).abs() < 1e-15);
        assert!(fit.coeffs[1].abs() < 1e-15);
        assert!((fit.sigma2 - 0.75).abs() < 1e-15);
    }

    #[test]
    fn levinson_white_noise() {
        let acov = AutocovSeq {
            gamma: vec![2.5, 0.0, 0.0, 0.0, 0.0],
            sample_size: 100,
        };
        for p in 0..=4 {
            let fit = levinson_durbin(&acov, p).unwrap();
            assert_eq!(fit.coeffs, vec![0.0; p]);
            assert_eq!(fit.sigma2, 2.5);
        }
    }

    #[test]
    fn levinson_degenerate_inputs() {
        let zero = AutocovSeq {
            gamma: vec![0.0, 0.0],
            sample_size: 4,
        };
        let err = levinson_durbin(&zero, 1).unwrap_err();
        assert!(
            matches!(&err, Error::NumericalDegeneracy { stage, .. } if stage.contains("stage 1"))
        );
        // Perfectly predictable after one lag: stage 2 has nothing left to divide.
        let perfect = AutocovSeq {
            gamma: vec![1.0, 1.0, 1.0],
            sample_size: 4,
        };
        let err = levinson_durbin(&perfect, 2).unwrap_err();
        assert!(
            matches!(&err, Error::NumericalDegeneracy { stage, .. } if stage.contains("stage 2"))
        );
        assert!(levinson_durbin(&perfect, 3).is_err());
    }

    #[test]
    fn loglik_examples() {
        let ll = conditional_loglik(&ts(&[0.0, 0.0]), &ArFit::new(vec![], 1.0)).unwrap();
        assert!((ll + (2.0 * PI).ln()).abs() < 1e-12);
        assert!((ll + 1.83788).abs() < 1e-5);

        let ll = conditional_loglik(&ts(&[1.0, 1.0]), &ArFit::new(vec![-1.0], 1.0)).unwrap();
        assert!((ll + 0.5 * (2.0 * PI).ln()).abs() < 1e-12);
        assert!((ll + 0.91894).abs() < 1e-5);

        let ll = conditional_loglik(&ts(&[0.0]), &ArFit::new(vec![], 1.0)).unwrap();
        assert!((ll + 0.91894).abs() < 1e-5);
    }

    #[test]
    fn loglik_argument_errors() {
        assert!(conditional_loglik(&ts(&[1.0, 2.0]), &ArFit::new(vec![], 0.0)).is_err());
        assert!(conditional_loglik(&ts(&[1.0, 2.0]), &ArFit::new(vec![0.1, 0.2], 1.0)).is_err());
    }

    #[test]
    fn order_zero_fit_is_mean_of_squares() {
        let x = ts(&[0.3, -1.2, 0.8, 0.1]);
        let fit = fit_ar(&x, 0).unwrap();
        let ms = x.values().iter().map(|v| v * v).sum::<f64>() / 4.0;
        assert!(fit.coeffs.is_empty());
        assert!((fit.sigma2 - ms).abs() < 1e-15);
    }

    #[test]
    fn fit_ar_composes_its_parts() {
        let x = ts(&[0.3, -1.2, 0.8, 0.1, -0.4, 0.9, -0.2, 0.5]);
        let fit = fit_ar(&x, 2).unwrap();
        let direct = levinson_durbin(&sample_autocov(&x, 2).unwrap(), 2).unwrap();
        assert_eq!(fit.coeffs, direct.coeffs);
        assert_eq!(fit.sigma2, direct.sigma2);
        assert_eq!(
            fit.loglik.unwrap(),
            conditional_loglik(&x, &direct).unwrap()
        );
    }

    #[test]
    fn bic_on_tiny_series_stays_in_range() {
        let x = mean_correct(&ts(&[0.4, -1.0, 2.0, 0.3, -0.7]));
        let p = bic_select_order(&x, 3).unwrap();
        assert!(p <= 3);
    }

    #[test]
    fn bic_on_zero_series_aggregates_failure() {
        let err = bic_select_order(&ts(&[0.0; 8]), 2).unwrap_err();
        assert!(matches!(err, Error::NoFittableOrder { max_order: 2, .. }));
    }
}
