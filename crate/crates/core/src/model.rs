//! The NIG autoregression `Y_t = ρ Y_{t−1} + ε_t`, `ε_t ~ NIG(α, β, μ, δ)` iid.

use serde::{Deserialize, Serialize};

use crate::distributions::{nig_moments, nig_sample, NigParams, RngStream};
use crate::error::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NigArModel {
    pub rho: f64,
    pub innov: NigParams,
}

impl NigArModel {
    pub fn new(rho: f64, innov: NigParams) -> Result<Self, ModelError> {
        if !rho.is_finite() {
            return Err(crate::error::ParamError::NonFinite {
                name: "rho",
                value: rho,
            }
            .into());
        }
        Ok(Self { rho, innov })
    }

    /// The equivalent intercept form `Y_t = μ + ρY_{t−1} + ε'_t` used when
    /// reporting fits whose asymmetry is negligible.
    pub fn intercept_form(&self) -> InterceptForm {
        InterceptForm {
            rho: self.rho,
            intercept: self.innov.mu(),
            gamma: self.innov.gamma(),
            delta: self.innov.delta(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterceptForm {
    pub rho: f64,
    pub intercept: f64,
    pub gamma: f64,
    pub delta: f64,
}

/// Ordered finite observations with optional, strictly increasing labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self, ModelError> {
        if values.is_empty() {
            return Err(ModelError::TooShort { needed: 1, got: 0 });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(ModelError::NonFiniteValue { index });
        }
        Ok(Self {
            values,
            labels: None,
        })
    }

    pub fn with_labels(values: Vec<f64>, labels: Vec<String>) -> Result<Self, ModelError> {
        if labels.len() != values.len() {
            return Err(ModelError::LabelLength {
                labels: labels.len(),
                values: values.len(),
            });
        }
        if let Some(i) = labels.windows(2).position(|w| w[0] >= w[1]) {
            return Err(ModelError::LabelOrder { index: i + 1 });
        }
        let mut series = Self::new(values)?;
        series.labels = Some(labels);
        Ok(series)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// How the first observation of a simulated path is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathStart {
    /// `y₀ = ε₀`.
    #[default]
    FirstInnovation,
    /// Start after a discarded burn-in long enough that `|ρ|^burn < 1e-12`.
    /// Needs `|ρ| < 1`.
    Stationary,
}

/// A simulated path together with the innovations that produced it, each
/// recorded as `y_t − ρ y_{t−1}` so residual extraction reproduces them bit
/// for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedPath {
    pub series: TimeSeries,
    pub innovations: Vec<f64>,
}

/// `n` observations `y₀ = ε₀`, `y_t = ρ y_{t−1} + ε_t`.
pub fn simulate_path(m: &NigArModel, n: usize, rng: &mut RngStream) -> Result<TimeSeries, ModelError> {
    simulate_path_recorded(m, n, PathStart::FirstInnovation, rng).map(|p| p.series)
}

pub fn simulate_path_recorded(
    m: &NigArModel,
    n: usize,
    start: PathStart,
    rng: &mut RngStream,
) -> Result<SimulatedPath, ModelError> {
    if n == 0 {
        return Err(ModelError::EmptyPath);
    }
    let mut level = 0.0;
    if start == PathStart::Stationary {
        let r = m.rho.abs();
        if r >= 1.0 {
            return Err(ModelError::UnitRoot(m.rho));
        }
        let burn = if r == 0.0 {
            0
        } else {
            ((1e-12_f64).ln() / r.ln()).ceil() as usize
        };
        for _ in 0..burn {
            level = m.rho * level + nig_sample(&m.innov, rng);
        }
    }
    let mut values = Vec::with_capacity(n);
    let mut innovations = Vec::with_capacity(n);
    for t in 0..n {
        let eps = nig_sample(&m.innov, rng);
        if t == 0 && start == PathStart::FirstInnovation {
            level = eps;
            innovations.push(eps);
        } else {
            let prev = level;
            level = m.rho * prev + eps;
            // the innovation as realized in floating point
            innovations.push(level - m.rho * prev);
        }
        values.push(level);
    }
    let series = TimeSeries::new(values)?;
    Ok(SimulatedPath {
        series,
        innovations,
    })
}

/// `ε_t = y_t − ρ y_{t−1}` for `t = 1, …, len − 1`.
pub fn residuals(y: &TimeSeries, rho: f64) -> Result<Vec<f64>, ModelError> {
    if y.len() < 2 {
        return Err(ModelError::TooShort {
            needed: 2,
            got: y.len(),
        });
    }
    Ok(residuals_of(y.values(), rho))
}

pub(crate) fn residuals_of(values: &[f64], rho: f64) -> Vec<f64> {
    values.windows(2).map(|w| w[1] - rho * w[0]).collect()
}

/// Mean and variance of `Y_t` when `y₀ = ε₀`:
/// `E(Y_t) = E(ε)(1 − ρ^{t+1})/(1 − ρ)` and
/// `Var(Y_t) = Var(ε)(1 − ρ^{2(t+1)})/(1 − ρ²)`, the closed form of
/// `Var(Y_t) = Var(ε) + ρ² Var(Y_{t−1})` started at `Var(Y₀) = Var(ε)`.
pub fn theoretical_moments(m: &NigArModel, t: u32) -> Result<(f64, f64), ModelError> {
    let rho = m.rho;
    if rho.abs() == 1.0 {
        return Err(ModelError::UnitRoot(rho));
    }
    let (mean_eps, var_eps) = nig_moments(&m.innov);
    let steps = t as i32 + 1;
    let mean = mean_eps * geometric_sum(rho, steps);
    let variance = var_eps * geometric_sum(rho * rho, steps);
    Ok((mean, variance))
}

/// `1 + r + … + r^{k−1}`.
fn geometric_sum(r: f64, k: i32) -> f64 {
    if r == 0.0 {
        return 1.0;
    }
    if r > 0.0 {
        // (r^k − 1)/(r − 1) via expm1 keeps digits as r → 1
        let ln_r = r.ln();
        (k as f64 * ln_r).exp_m1() / ln_r.exp_m1()
    } else {
        (1.0 - r.powi(k)) / (1.0 - r)
    }
}
