use serde::{Deserialize, Serialize};

use crate::error::DiagnosticsError;
use crate::model::TimeSeries;

/// Two-sided 95% white-noise band multiplier.
pub const BAND_Z: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelogramPoint {
    pub lag: usize,
    pub value: f64,
    /// Half-width `1.96/√n` of the white-noise band.
    pub conf_band: f64,
    /// Set on the lag-0 point, which is 1 by definition rather than estimated.
    pub definitional: bool,
}

impl CorrelogramPoint {
    pub fn outside_band(&self) -> bool {
        !self.definitional && self.value.abs() > self.conf_band
    }
}

fn check(y: &TimeSeries, max_lag: usize) -> Result<(), DiagnosticsError> {
    if max_lag >= y.len() {
        return Err(DiagnosticsError::LagTooLarge {
            max_lag,
            len: y.len(),
        });
    }
    Ok(())
}

/// Biased autocorrelations `r_k = c_k / c_0` for `k = 0, …, max_lag`.
pub fn autocorrelations(values: &[f64], max_lag: usize) -> Result<Vec<f64>, DiagnosticsError> {
    let n = values.len();
    if n == 0 {
        return Err(DiagnosticsError::EmptySample);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let dev: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let c0: f64 = dev.iter().map(|d| d * d).sum();
    if !(c0 > 0.0) {
        return Err(DiagnosticsError::ZeroVariance);
    }
    Ok((0..=max_lag.min(n - 1))
        .map(|k| {
            if k == 0 {
                1.0
            } else {
                dev.iter().zip(&dev[k..]).map(|(a, b)| a * b).sum::<f64>() / c0
            }
        })
        .collect())
}

/// Partial autocorrelations from autocorrelations `r[0..=K]` by the
/// Durbin–Levinson recursion; entry 0 is 1.
pub fn durbin_levinson(r: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(r.len());
    if r.is_empty() {
        return out;
    }
    out.push(1.0);
    let mut phi: Vec<f64> = Vec::new();
    let mut v = 1.0;
    for k in 1..r.len() {
        let num = r[k] - phi.iter().enumerate().map(|(j, p)| p * r[k - 1 - j]).sum::<f64>();
        let kk = if v > 0.0 { num / v } else { 0.0 };
        let prev = phi.clone();
        for j in 0..prev.len() {
            phi[j] = prev[j] - kk * prev[prev.len() - 1 - j];
        }
        phi.push(kk);
        v *= 1.0 - kk * kk;
        out.push(kk);
    }
    out
}

fn points(values: Vec<f64>, n: usize) -> Vec<CorrelogramPoint> {
    let band = BAND_Z / (n as f64).sqrt();
    values
        .into_iter()
        .enumerate()
        .map(|(lag, value)| CorrelogramPoint {
            lag,
            value,
            conf_band: band,
            definitional: lag == 0,
        })
        .collect()
}

pub fn acf(y: &TimeSeries, max_lag: usize) -> Result<Vec<CorrelogramPoint>, DiagnosticsError> {
    check(y, max_lag)?;
    Ok(points(autocorrelations(y.values(), max_lag)?, y.len()))
}

pub fn pacf(y: &TimeSeries, max_lag: usize) -> Result<Vec<CorrelogramPoint>, DiagnosticsError> {
    check(y, max_lag)?;
    let r = autocorrelations(y.values(), max_lag)?;
    Ok(points(durbin_levinson(&r), y.len()))
}
