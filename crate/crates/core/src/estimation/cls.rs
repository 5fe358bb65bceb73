use crate::error::EstimationError;
use crate::model::TimeSeries;

/// Conditional least squares estimate of the lag-1 coefficient:
///
/// ```text
/// ρ̂ = Σ_{t=0}^{n−2} (y_t − ȳ)(y_{t+1} − ȳ) / Σ_{t=0}^{n−2} (y_t − ȳ)²
/// ```
///
/// over the `n − 1` adjacent pairs, with `ȳ` the full-sample mean.
pub fn cls_rho(y: &TimeSeries) -> Result<f64, EstimationError> {
    let v = y.values();
    if v.len() < 3 {
        return Err(EstimationError::TooShort {
            needed: 3,
            got: v.len(),
        });
    }
    let mean = y.mean();
    let (num, den) = v.windows(2).fold((0.0, 0.0), |(num, den), w| {
        let a = w[0] - mean;
        let b = w[1] - mean;
        (num + a * b, den + a * a)
    });
    if den == 0.0 || v.iter().all(|&x| x == v[0]) {
        return Err(EstimationError::ConstantSeries);
    }
    Ok(num / den)
}
