//! Checks applied to a series or a fit: correlograms, normality and
//! two-sample tests, QQ data, and the simulate-and-refit replication study.

mod correlogram;
mod qq;
mod replication;
mod tests;

pub use correlogram::{acf, autocorrelations, durbin_levinson, pacf, CorrelogramPoint, BAND_Z};
pub use qq::{qq_points, quantile_sorted};
pub use replication::{
    replication_study, FiveNumber, ParameterSummary, ReplicateFailure, ReplicationSummary,
    PARAMETER_NAMES, WHISKER_IQR,
};
pub use tests::{
    jarque_bera, kolmogorov_sf, ks_2sample, ks_2sample_statistic, ks_normality,
    ks_normality_statistic, lilliefors_p_value, normal_cdf, skewness_kurtosis, TestName,
    TestResult, KOLMOGOROV_TERMS, MIN_NORMALITY_N, P_VALUE_FLOOR,
};

/// Histogram counts over `bins` equal-width bins spanning the sample range;
/// returns the `bins + 1` edges and the counts.
pub fn histogram(a: &[f64], bins: usize) -> Result<(Vec<f64>, Vec<usize>), crate::error::DiagnosticsError> {
    if a.is_empty() || bins == 0 {
        return Err(crate::error::DiagnosticsError::EmptySample);
    }
    let lo = a.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
    let edges = (0..=bins).map(|i| lo + i as f64 * width).collect();
    let mut counts = vec![0; bins];
    for x in a {
        let idx = (((x - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok((edges, counts))
}
