use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::qq::quantile_sorted;
use crate::distributions::RngStream;
use crate::error::DiagnosticsError;
use crate::estimation::{em_fit, EmConfig};
use crate::model::{simulate_path, NigArModel};

/// Whisker reach in interquartile ranges.
pub const WHISKER_IQR: f64 = 1.5;

pub const PARAMETER_NAMES: [&str; 6] = ["alpha", "beta", "mu", "delta", "gamma", "rho"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiveNumber {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl FiveNumber {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Some(Self {
            min: v[0],
            q1: quantile_sorted(&v, 0.25),
            median: quantile_sorted(&v, 0.5),
            q3: quantile_sorted(&v, 0.75),
            max: v[v.len() - 1],
        })
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterSummary {
    pub name: String,
    pub truth: f64,
    /// Estimates in replicate order (failed replicates omitted).
    pub estimates: Vec<f64>,
    pub mean: f64,
    pub five: FiveNumber,
    /// Most extreme estimates within `WHISKER_IQR` interquartile ranges of
    /// the box.
    pub lower_whisker: f64,
    pub upper_whisker: f64,
    pub outliers: Vec<f64>,
}

impl ParameterSummary {
    fn new(name: &str, truth: f64, estimates: Vec<f64>) -> Option<Self> {
        let five = FiveNumber::of(&estimates)?;
        let lo_fence = five.q1 - WHISKER_IQR * five.iqr();
        let hi_fence = five.q3 + WHISKER_IQR * five.iqr();
        let inside = estimates.iter().copied().filter(|v| *v >= lo_fence && *v <= hi_fence);
        let lower_whisker = inside.clone().fold(f64::INFINITY, f64::min);
        let upper_whisker = inside.fold(f64::NEG_INFINITY, f64::max);
        let outliers = estimates
            .iter()
            .copied()
            .filter(|v| *v < lo_fence || *v > hi_fence)
            .collect();
        Some(Self {
            name: name.to_owned(),
            truth,
            mean: estimates.iter().sum::<f64>() / estimates.len() as f64,
            estimates,
            five,
            lower_whisker,
            upper_whisker,
            outliers,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateFailure {
    pub replicate: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationSummary {
    pub truth: NigArModel,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub succeeded: usize,
    pub failures: Vec<ReplicateFailure>,
    /// Replicates that stopped at the iteration cap (still summarized).
    pub not_converged: usize,
    /// In [`PARAMETER_NAMES`] order.
    pub parameters: Vec<ParameterSummary>,
}

impl ReplicationSummary {
    pub fn parameter(&self, name: &str) -> Option<&ParameterSummary> {
        self.parameters.iter().find(|p| p.name == name)
    }
}

fn as_row(m: &NigArModel) -> [f64; 6] {
    let p = m.innov;
    [p.alpha(), p.beta(), p.mu(), p.delta(), p.gamma(), m.rho]
}

/// Simulates `reps` paths of length `n` from `truth` and fits each with
/// `cfg`. Replicate `r` draws from stream `r` of `rng`'s seed, so the result
/// does not depend on how replicates are scheduled across threads.
pub fn replication_study(
    truth: &NigArModel,
    n: usize,
    reps: usize,
    cfg: &EmConfig,
    rng: &RngStream,
) -> Result<ReplicationSummary, DiagnosticsError> {
    if reps < 2 {
        return Err(DiagnosticsError::TooFewReplicates(reps));
    }
    cfg.validate()?;
    let outcomes: Vec<Result<(NigArModel, bool), String>> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut stream = rng.substream(r as u64);
            let y = simulate_path(truth, n, &mut stream).map_err(|e| e.to_string())?;
            let fit = em_fit(&y, cfg).map_err(|e| e.to_string())?;
            Ok((fit.params, fit.converged()))
        })
        .collect();

    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(reps); PARAMETER_NAMES.len()];
    let mut failures = Vec::new();
    let mut not_converged = 0;
    for (replicate, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok((m, converged)) => {
                for (col, v) in columns.iter_mut().zip(as_row(&m)) {
                    col.push(v);
                }
                if !converged {
                    not_converged += 1;
                }
            }
            Err(message) => {
                log::warn!("replicate {replicate} failed: {message}");
                failures.push(ReplicateFailure { replicate, message });
            }
        }
    }
    let truth_row = as_row(truth);
    let parameters = PARAMETER_NAMES
        .iter()
        .zip(truth_row)
        .zip(columns)
        .filter_map(|((name, t), est)| ParameterSummary::new(name, t, est))
        .collect();
    Ok(ReplicationSummary {
        truth: *truth,
        n,
        reps,
        seed: rng.seed(),
        succeeded: reps - failures.len(),
        failures,
        not_converged,
        parameters,
    })
}
