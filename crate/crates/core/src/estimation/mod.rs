//! Parameter estimation: conditional least squares for `ρ`, the E-step,
//! the M-step strategies, and the EM driver.
//!
//! The driver resolves its M-step and stopping rule by name through a
//! [`StrategyRegistry`], so the two modes (`joint`, `two-stage`) and the two
//! stopping criteria (`loglik`, `params`) are interchangeable at runtime.

mod cls;
mod estep;
mod init;
pub mod mstep;
mod registry;
pub mod stopping;

use serde::{Deserialize, Serialize};

pub use cls::cls_rho;
pub use estep::{e_step, log_likelihood};
pub use init::{init_four_moment, init_method_of_moments, KURTOSIS_FLOOR};
pub use mstep::{m_step_joint, m_step_joint_literal, m_step_two_stage, MStep};
pub use registry::StrategyRegistry;
pub use stopping::StoppingRule;

use crate::error::EstimationError;
use crate::model::{residuals_of, InterceptForm, NigArModel, TimeSeries};

/// Shortest series the driver accepts (two residuals).
pub const MIN_SERIES_LEN: usize = 3;

/// How `(ρ, μ, β)` are updated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// All five parameters from the joint score equations.
    #[default]
    Joint,
    /// `ρ` fixed at the conditional least squares estimate.
    TwoStage,
    /// Literal transcription of the typeset joint formulas; diagnostic only.
    JointLiteral,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Joint => "joint",
            Mode::TwoStage => "two-stage",
            Mode::JointLiteral => "joint-literal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// Relative change of the log-likelihood.
    #[default]
    LogLikRelChange,
    /// Largest relative change over `(α, β, μ, γ, δ)`.
    ParamRelChange,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::LogLikRelChange => "loglik",
            Criterion::ParamRelChange => "params",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Init {
    /// `ρ⁽⁰⁾` by conditional least squares, innovations by
    /// [`init_four_moment`] on the implied residuals.
    #[default]
    FourMoment,
    /// As [`Init::FourMoment`] with the symmetric [`init_method_of_moments`].
    MethodOfMoments,
    Explicit(NigArModel),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmConfig {
    pub max_iterations: usize,
    pub tolerance: f64,
    pub criterion: Criterion,
    pub mode: Mode,
    pub init: Init,
}

impl Default for EmConfig {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            tolerance: 1e-5,
            criterion: Criterion::default(),
            mode: Mode::default(),
            init: Init::default(),
        }
    }
}

impl EmConfig {
    pub fn validate(&self) -> Result<(), EstimationError> {
        if self.max_iterations == 0 {
            return Err(EstimationError::Config("max_iterations must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(EstimationError::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Parameters and observed log-likelihood after `iteration` EM steps
/// (iteration 0 is the starting point).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub params: NigArModel,
    pub log_likelihood: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Converged,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub params: NigArModel,
    pub log_likelihood: f64,
    pub iterations: usize,
    pub stop_reason: StopReason,
    pub criterion_used: String,
    pub mode_used: String,
    pub tolerance: f64,
    /// `Y_t = μ + ρY_{t−1} + ε'_t` reading of the fitted model.
    pub intercept_form: InterceptForm,
    pub trace: Vec<TracePoint>,
}

impl FitReport {
    pub fn converged(&self) -> bool {
        self.stop_reason == StopReason::Converged
    }

    /// Largest decrease between consecutive trace log-likelihoods (0 when the
    /// trace is monotone).
    pub fn max_loglik_drop(&self) -> f64 {
        self.trace
            .windows(2)
            .map(|w| w[0].log_likelihood - w[1].log_likelihood)
            .fold(0.0, f64::max)
    }
}

/// Fits the model with the built-in strategies named by `cfg.mode` and
/// `cfg.criterion`.
pub fn em_fit(y: &TimeSeries, cfg: &EmConfig) -> Result<FitReport, EstimationError> {
    let registry = StrategyRegistry::builtin();
    em_fit_with(&registry, y, cfg.mode.name(), cfg.criterion.name(), cfg)
}

/// Fits the model with strategies looked up by name in `registry`;
/// `cfg.mode` and `cfg.criterion` are ignored in favour of the names.
pub fn em_fit_with(
    registry: &StrategyRegistry,
    y: &TimeSeries,
    m_step: &str,
    stopping: &str,
    cfg: &EmConfig,
) -> Result<FitReport, EstimationError> {
    cfg.validate()?;
    let m_step = registry.m_step(m_step)?;
    let stopping = registry.stopping(stopping)?;
    if y.len() < MIN_SERIES_LEN {
        return Err(EstimationError::TooShort {
            needed: MIN_SERIES_LEN,
            got: y.len(),
        });
    }
    let values = y.values();

    let mut model = match cfg.init {
        Init::Explicit(m) => m,
        Init::FourMoment | Init::MethodOfMoments => {
            let rho = cls_rho(y)?;
            let eps = residuals_of(values, rho);
            let innov = if eps.len() < 4 {
                init::symmetric_start(&eps)?
            } else if cfg.init == Init::FourMoment {
                init_four_moment(&eps)?
            } else {
                init_method_of_moments(&eps)?
            };
            NigArModel::new(rho, innov)?
        }
    };
    if m_step.fixes_rho() {
        model.rho = cls_rho(y)?;
    }

    let mut eps = residuals_of(values, model.rho);
    let start_ll = log_likelihood(&eps, &model.innov);
    let mut trace = vec![TracePoint {
        iteration: 0,
        params: model,
        log_likelihood: start_ll,
    }];
    if !start_ll.is_finite() {
        return Err(EstimationError::NonFiniteLikelihood { iteration: 0, trace });
    }

    let mut stop_reason = StopReason::MaxIterations;
    for iteration in 1..=cfg.max_iterations {
        let (s, w) = e_step(&eps, &model.innov);
        let next = m_step.update(values, &model, &s, &w)?;
        eps = residuals_of(values, next.rho);
        let ll = log_likelihood(&eps, &next.innov);
        let point = TracePoint {
            iteration,
            params: next,
            log_likelihood: ll,
        };
        if !ll.is_finite() {
            trace.push(point);
            return Err(EstimationError::NonFiniteLikelihood { iteration, trace });
        }
        let change = stopping.change(trace.last().expect("trace is never empty"), &point);
        trace.push(point);
        model = next;
        log::debug!("em iteration {iteration}: loglik {ll:.10} change {change:.3e}");
        if change < cfg.tolerance {
            stop_reason = StopReason::Converged;
            break;
        }
    }

    let last = *trace.last().expect("trace is never empty");
    Ok(FitReport {
        params: last.params,
        log_likelihood: last.log_likelihood,
        iterations: last.iteration,
        stop_reason,
        criterion_used: stopping.name().to_owned(),
        mode_used: m_step.name().to_owned(),
        tolerance: cfg.tolerance,
        intercept_form: last.params.intercept_form(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{NigParams, RngStream};
    use crate::model::simulate_path;

    fn design() -> NigArModel {
        NigArModel::new(0.5, NigParams::new(2.24, 1.0, 1.0, 2.0).unwrap()).unwrap()
    }

    #[test]
    fn length_three_series() {
        let y = TimeSeries::new(vec![0.3, 1.9, 0.7]).unwrap();
        let r = em_fit(&y, &EmConfig::default()).unwrap();
        let p = r.params.innov;
        assert!([r.params.rho, p.alpha(), p.beta(), p.mu(), p.delta()].iter().all(|v| v.is_finite()));
    }

    #[test]
    fn deterministic() {
        let y = simulate_path(&design(), 500, &mut RngStream::new(3, 0)).unwrap();
        let cfg = EmConfig::default();
        assert_eq!(em_fit(&y, &cfg).unwrap(), em_fit(&y, &cfg).unwrap());
    }

    #[test]
    fn two_stage_keeps_cls_rho() {
        let y = simulate_path(&design(), 500, &mut RngStream::new(4, 0)).unwrap();
        let cfg = EmConfig {
            mode: Mode::TwoStage,
            ..Default::default()
        };
        let r = em_fit(&y, &cfg).unwrap();
        let rho = cls_rho(&y).unwrap();
        assert!(r.trace.iter().all(|t| t.params.rho == rho));
        assert_eq!(r.mode_used, "two-stage");
    }

    #[test]
    fn invalid_config() {
        let y = TimeSeries::new(vec![0.3, 1.9, 0.7, 1.0]).unwrap();
        for cfg in [
            EmConfig { tolerance: 0.0, ..Default::default() },
            EmConfig { max_iterations: 0, ..Default::default() },
        ] {
            assert!(matches!(em_fit(&y, &cfg), Err(EstimationError::Config(_))));
        }
    }

    #[test]
    fn max_iterations_reported() {
        let y = simulate_path(&design(), 300, &mut RngStream::new(5, 0)).unwrap();
        let cfg = EmConfig {
            max_iterations: 2,
            tolerance: 1e-300,
            ..Default::default()
        };
        let r = em_fit(&y, &cfg).unwrap();
        assert_eq!(r.stop_reason, StopReason::MaxIterations);
        assert_eq!(r.iterations, 2);
        assert_eq!(r.trace.len(), 3);
    }
}
