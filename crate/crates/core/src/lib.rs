#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Normal inverse Gaussian autoregression of order one: simulation,
//! EM estimation, and the diagnostics used to check a fit.

pub mod diagnostics;
pub mod distributions;
pub mod error;
pub mod estimation;
pub mod model;
pub mod special_fn;

pub use distributions::{CondMoments, IgParams, NigParams, RngStream};
pub use error::{DiagnosticsError, EstimationError, ModelError, ParamError};
pub use estimation::{em_fit, Criterion, EmConfig, FitReport, Init, Mode, StopReason};
pub use model::{NigArModel, TimeSeries};
