//! Stopping rules for the EM iteration.

use super::TracePoint;

/// Guard added to `|L^{(k)}|` so a log-likelihood crossing zero cannot blow
/// up the relative change.
pub const LOGLIK_DENOM_GUARD: f64 = 1e-12;

/// Distance between successive iterates; the driver stops once it drops
/// below the configured tolerance.
pub trait StoppingRule: Send + Sync {
    /// Registry key, e.g. `"loglik"`.
    fn name(&self) -> &str;

    fn change(&self, prev: &TracePoint, next: &TracePoint) -> f64;
}

/// `|(L^{(k)} − L^{(k+1)}) / L^{(k)}|`.
pub struct LogLikRelChange;

impl StoppingRule for LogLikRelChange {
    fn name(&self) -> &str {
        "loglik"
    }

    fn change(&self, prev: &TracePoint, next: &TracePoint) -> f64 {
        let l0 = prev.log_likelihood;
        ((l0 - next.log_likelihood) / (l0.abs() + LOGLIK_DENOM_GUARD)).abs()
    }
}

/// Largest relative change over `(α, β, μ, γ, δ)`.
pub struct ParamRelChange;

impl StoppingRule for ParamRelChange {
    fn name(&self) -> &str {
        "params"
    }

    fn change(&self, prev: &TracePoint, next: &TracePoint) -> f64 {
        let a = &prev.params.innov;
        let b = &next.params.innov;
        [
            (a.alpha(), b.alpha()),
            (a.beta(), b.beta()),
            (a.mu(), b.mu()),
            (a.gamma(), b.gamma()),
            (a.delta(), b.delta()),
        ]
        .into_iter()
        .map(|(old, new)| relative_change(old, new))
        .fold(0.0, f64::max)
    }
}

/// `|new − old| / |old|`, with `0/0` read as no change.
fn relative_change(old: f64, new: f64) -> f64 {
    let diff = (new - old).abs();
    if diff == 0.0 {
        0.0
    } else {
        diff / old.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::NigParams;
    use crate::model::NigArModel;

    fn point(alpha: f64, beta: f64, ll: f64) -> TracePoint {
        TracePoint {
            iteration: 0,
            params: NigArModel::new(0.5, NigParams::new(alpha, beta, 1.0, 2.0).unwrap()).unwrap(),
            log_likelihood: ll,
        }
    }

    #[test]
    fn loglik_relative_change() {
        let c = LogLikRelChange.change(&point(2.0, 1.0, -1000.0), &point(2.0, 1.0, -999.0));
        assert!((c - 1e-3).abs() < 1e-12);
        // crossing zero stays finite
        let c = LogLikRelChange.change(&point(2.0, 1.0, 0.0), &point(2.0, 1.0, 1e-3));
        assert!(c.is_finite());
    }

    #[test]
    fn param_change_takes_the_max() {
        let c = ParamRelChange.change(&point(2.0, 1.0, 0.0), &point(2.0, 1.1, 0.0));
        // beta moves 10%, gamma = sqrt(4 - β²) moves less
        assert!((c - 0.1).abs() < 1e-12);
    }

    #[test]
    fn zero_parameter_handling() {
        assert_eq!(relative_change(0.0, 0.0), 0.0);
        assert_eq!(relative_change(0.0, 1e-3), f64::INFINITY);
    }
}
