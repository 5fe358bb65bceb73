//! M-step strategies.
//!
//! Every strategy maximizes the expected complete-data log-likelihood
//!
//! ```text
//! Q = n ln δ + nδγ − δ²/2 Σw − (γ² + β²)/2 Σs + β Σ(ε_t − μ) − ½ Σ w (ε_t − μ)²
//! ```
//!
//! with `ε_t = y_t − ρ y_{t−1}` (constants dropped). The `(δ, γ)` block
//! always has the closed form `δ = √(s̄/(s̄w̄ − 1))`, `γ = δ/s̄`; the
//! strategies differ in how `(ρ, μ, β)` are updated.

use nalgebra::{Matrix3, Vector3};

use crate::distributions::NigParams;
use crate::error::EstimationError;
use crate::model::{NigArModel, TimeSeries};

/// Floor applied to `γ̂` by the one-shot projection retry.
pub const GAMMA_FLOOR: f64 = 1e-8;

/// One M-step update of the model given the posterior weights.
pub trait MStep: Send + Sync {
    /// Registry key, e.g. `"joint"`.
    fn name(&self) -> &str;

    /// `true` when `ρ` is fixed before iterating (conditional least squares)
    /// and carried through unchanged.
    fn fixes_rho(&self) -> bool {
        false
    }

    /// `y` is the raw series; `s`, `w` have one entry per residual
    /// (`y.len() − 1`). `current` supplies `ρ` for strategies that fix it.
    fn update(
        &self,
        y: &[f64],
        current: &NigArModel,
        s: &[f64],
        w: &[f64],
    ) -> Result<NigArModel, EstimationError>;
}

/// Sufficient statistics of one M-step, with `x_t = y_{t−1}`, `z_t = y_t`,
/// `t = 1, …, n`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WeightedSums {
    pub n: f64,
    pub s: f64,
    pub w: f64,
    pub x: f64,
    pub z: f64,
    pub wx: f64,
    pub wz: f64,
    pub wxx: f64,
    pub wxz: f64,
}

impl WeightedSums {
    pub fn collect(y: &[f64], s: &[f64], w: &[f64]) -> Result<Self, EstimationError> {
        let n = y.len().saturating_sub(1);
        if n == 0 {
            return Err(EstimationError::TooShort {
                needed: 2,
                got: y.len(),
            });
        }
        if s.len() != n || w.len() != n {
            return Err(EstimationError::WeightLength {
                s: s.len(),
                w: w.len(),
                expected: n,
            });
        }
        let mut acc = WeightedSums {
            n: n as f64,
            ..Default::default()
        };
        for ((pair, &st), &wt) in y.windows(2).zip(s).zip(w) {
            let (x, z) = (pair[0], pair[1]);
            acc.s += st;
            acc.w += wt;
            acc.x += x;
            acc.z += z;
            acc.wx += wt * x;
            acc.wz += wt * z;
            acc.wxx += wt * x * x;
            acc.wxz += wt * x * z;
        }
        Ok(acc)
    }

    pub fn s_bar(&self) -> f64 {
        self.s / self.n
    }

    pub fn w_bar(&self) -> f64 {
        self.w / self.n
    }
}

/// `(δ̂, γ̂)` from the weight means, with a single projection of `γ̂` onto
/// `[GAMMA_FLOOR, ∞)` when it comes out non-positive or non-finite.
pub fn scale_update(s_bar: f64, w_bar: f64) -> Result<(f64, f64), EstimationError> {
    let excess = s_bar * w_bar - 1.0;
    if !(excess > 0.0) {
        return Err(EstimationError::DegenerateWeights(s_bar * w_bar));
    }
    let delta = (s_bar / excess).sqrt();
    if !(delta.is_finite() && delta > 0.0) {
        return Err(EstimationError::DegenerateWeights(s_bar * w_bar));
    }
    let mut gamma = delta / s_bar;
    if !(gamma.is_finite() && gamma > 0.0) {
        log::debug!("projecting gamma {gamma} onto {GAMMA_FLOOR}");
        gamma = GAMMA_FLOOR;
    }
    Ok((delta, gamma))
}

fn assemble(
    rho: f64,
    mu: f64,
    beta: f64,
    s_bar: f64,
    w_bar: f64,
) -> Result<NigArModel, EstimationError> {
    let (delta, gamma) = scale_update(s_bar, w_bar)?;
    let innov = NigParams::from_gamma(gamma, beta, mu, delta)?;
    Ok(NigArModel::new(rho, innov)?)
}

/// The three linear score equations `∂Q/∂ρ = ∂Q/∂μ = ∂Q/∂β = 0`:
///
/// ```text
/// | Σwx²  Σwx  Σx | |ρ|   |Σwxz|
/// | Σwx   Σw   n  | |μ| = |Σwz |
/// | Σx    n    Σs | |β|   |Σz  |
/// ```
pub fn score_system(sums: &WeightedSums) -> (Matrix3<f64>, Vector3<f64>) {
    let a = Matrix3::new(
        sums.wxx, sums.wx, sums.x, //
        sums.wx, sums.w, sums.n, //
        sums.x, sums.n, sums.s,
    );
    let b = Vector3::new(sums.wxz, sums.wz, sums.z);
    (a, b)
}

/// Joint update of `(ρ, μ, β, δ, γ)`; `(ρ, μ, β)` solve the score system
/// exactly.
pub fn m_step_joint(y: &TimeSeries, s: &[f64], w: &[f64]) -> Result<NigArModel, EstimationError> {
    joint_update(y.values(), s, w)
}

fn joint_update(y: &[f64], s: &[f64], w: &[f64]) -> Result<NigArModel, EstimationError> {
    let sums = WeightedSums::collect(y, s, w)?;
    let s_bar = sums.s_bar();
    let w_bar = sums.w_bar();
    if !(s_bar * w_bar > 1.0) {
        return Err(EstimationError::DegenerateWeights(s_bar * w_bar));
    }
    let (a, b) = score_system(&sums);
    let sol = a.lu().solve(&b).ok_or(EstimationError::SingularSystem)?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(EstimationError::SingularSystem);
    }
    assemble(sol[0], sol[1], sol[2], s_bar, w_bar)
}

/// Update of `(μ, β, δ, γ)` with `ρ̂` held fixed:
///
/// ```text
/// β̂ = (ρ̂Σw y_{t−1} − Σw y_t + ȳΣw − ρ̂ w̄ Σy_{t−1}) / (s̄Σw − n)
/// μ̂ = ȳ − (ρ̂/n)Σy_{t−1} − β̂ s̄
/// ```
///
/// where `ȳ` averages `y_1, …, y_n`.
pub fn m_step_two_stage(
    y: &TimeSeries,
    rho_hat: f64,
    s: &[f64],
    w: &[f64],
) -> Result<NigArModel, EstimationError> {
    two_stage_update(y.values(), rho_hat, s, w)
}

fn two_stage_update(y: &[f64], rho: f64, s: &[f64], w: &[f64]) -> Result<NigArModel, EstimationError> {
    let sums = WeightedSums::collect(y, s, w)?;
    let n = sums.n;
    let s_bar = sums.s_bar();
    let w_bar = sums.w_bar();
    let denom = s_bar * sums.w - n;
    if !(denom > 0.0) {
        return Err(EstimationError::DegenerateWeights(s_bar * w_bar));
    }
    let y_bar = sums.z / n;
    let beta = (rho * sums.wx - sums.wz + y_bar * sums.w - rho * w_bar * sums.x) / denom;
    let mu = y_bar - rho / n * sums.x - beta * s_bar;
    assemble(rho, mu, beta, s_bar, w_bar)
}

/// Term-by-term transcription of the typeset joint estimators for `ρ̂`, `μ̂`
/// and `β̂`, kept for comparison against the score-equation solve. The
/// grouping of several terms does not match the score equations, so this
/// does not in general maximize `Q`.
pub fn m_step_joint_literal(
    y: &TimeSeries,
    s: &[f64],
    w: &[f64],
) -> Result<NigArModel, EstimationError> {
    literal_update(y.values(), s, w)
}

fn literal_update(y: &[f64], s: &[f64], w: &[f64]) -> Result<NigArModel, EstimationError> {
    let t = WeightedSums::collect(y, s, w)?;
    let n = t.n;
    let s_bar = t.s_bar();
    let w_bar = t.w_bar();
    let sw_minus = t.s * t.w - n * n;
    let c1 = n * t.wxz - t.wz * t.x;
    let c2 = n * t.wx - t.w * t.x;
    let c3 = n * t.wxx - t.wx * t.x;
    let num = c1 * sw_minus + c2 * (n * t.z - t.wz * t.s);
    let den = c2 * (n * t.x - t.wx * t.s) + c3 * sw_minus;
    let rho = num / den;
    let mu = (c1 - rho * c3) / c2;
    let beta = (t.wz - rho * t.wx - mu * t.w) / n;
    if ![rho, mu, beta].iter().all(|v| v.is_finite()) {
        return Err(EstimationError::SingularSystem);
    }
    assemble(rho, mu, beta, s_bar, w_bar)
}

pub struct JointMStep;

impl MStep for JointMStep {
    fn name(&self) -> &str {
        "joint"
    }

    fn update(
        &self,
        y: &[f64],
        _current: &NigArModel,
        s: &[f64],
        w: &[f64],
    ) -> Result<NigArModel, EstimationError> {
        joint_update(y, s, w)
    }
}

pub struct TwoStageMStep;

impl MStep for TwoStageMStep {
    fn name(&self) -> &str {
        "two-stage"
    }

    fn fixes_rho(&self) -> bool {
        true
    }

    fn update(
        &self,
        y: &[f64],
        current: &NigArModel,
        s: &[f64],
        w: &[f64],
    ) -> Result<NigArModel, EstimationError> {
        two_stage_update(y, current.rho, s, w)
    }
}

pub struct LiteralJointMStep;

impl MStep for LiteralJointMStep {
    fn name(&self) -> &str {
        "joint-literal"
    }

    fn update(
        &self,
        y: &[f64],
        _current: &NigArModel,
        s: &[f64],
        w: &[f64],
    ) -> Result<NigArModel, EstimationError> {
        literal_update(y, s, w)
    }
}
