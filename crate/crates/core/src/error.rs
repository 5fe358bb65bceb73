use thiserror::Error;

use crate::special_fn::BesselError;

/// Parameter validation failures for the distribution and model types.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("delta must be positive, got {0}")]
    Delta(f64),
    #[error("gamma must be positive, got {0}")]
    Gamma(f64),
    #[error("alpha must exceed |beta| (alpha = {alpha}, beta = {beta})")]
    Tail { alpha: f64, beta: f64 },
    #[error("density argument must be positive, got {0}")]
    Domain(f64),
}

/// Errors raised by the time-series model helpers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("series needs at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("path length must be at least 1")]
    EmptyPath,
    #[error("series value at index {index} is not finite")]
    NonFiniteValue { index: usize },
    #[error("labels must match values in length ({labels} labels for {values} values)")]
    LabelLength { labels: usize, values: usize },
    #[error("labels must be strictly increasing (violated at index {index})")]
    LabelOrder { index: usize },
    #[error("stationary-limit quantities need |rho| != 1, got {0}")]
    UnitRoot(f64),
}

/// Errors raised while estimating model parameters.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimationError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Bessel(#[from] BesselError),
    #[error("series needs at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("series is constant; the lag-1 regression is undefined")]
    ConstantSeries,
    #[error("sample variance is zero")]
    ZeroVariance,
    #[error("E-step weights are degenerate: mean(s) * mean(w) = {0} <= 1")]
    DegenerateWeights(f64),
    #[error("score equations are singular")]
    SingularSystem,
    #[error("weight sequences have length {s}/{w}, expected {expected}")]
    WeightLength { s: usize, w: usize, expected: usize },
    #[error("log-likelihood became non-finite at iteration {iteration}")]
    NonFiniteLikelihood {
        iteration: usize,
        trace: Vec<crate::estimation::TracePoint>,
    },
    #[error("invalid EM configuration: {0}")]
    Config(String),
    #[error("no {kind} strategy named `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
}

/// Errors raised by the diagnostic routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagnosticsError {
    #[error("sample is empty")]
    EmptySample,
    #[error("sample needs at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("sample variance is zero")]
    ZeroVariance,
    #[error("max lag {max_lag} must be below the series length {len}")]
    LagTooLarge { max_lag: usize, len: usize },
    #[error("replication study needs at least 2 replicates, got {0}")]
    TooFewReplicates(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Estimation(#[from] EstimationError),
}
