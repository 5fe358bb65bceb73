//! Inverse Gaussian mixing law `IG(γ, δ)` with density
//! `δ/√(2π) · e^{δγ} · x^{-3/2} · exp(-(δ²/x + γ²x)/2)` on `x > 0`.

use serde::{Deserialize, Serialize};

use super::rng::RngStream;
use crate::error::ParamError;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IgRepr")]
pub struct IgParams {
    gamma: f64,
    delta: f64,
}

#[derive(Deserialize)]
struct IgRepr {
    gamma: f64,
    delta: f64,
}

impl TryFrom<IgRepr> for IgParams {
    type Error = ParamError;

    fn try_from(r: IgRepr) -> Result<Self, Self::Error> {
        IgParams::new(r.gamma, r.delta)
    }
}

impl IgParams {
    pub fn new(gamma: f64, delta: f64) -> Result<Self, ParamError> {
        if !gamma.is_finite() {
            return Err(ParamError::NonFinite {
                name: "gamma",
                value: gamma,
            });
        }
        if !delta.is_finite() {
            return Err(ParamError::NonFinite {
                name: "delta",
                value: delta,
            });
        }
        if gamma <= 0.0 {
            return Err(ParamError::Gamma(gamma));
        }
        if delta <= 0.0 {
            return Err(ParamError::Delta(delta));
        }
        Ok(Self { gamma, delta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Mean `δ/γ`; also the location `μ₁` of the classical `IG(μ₁, λ₁)` form.
    pub fn mean(&self) -> f64 {
        self.delta / self.gamma
    }

    /// Shape `λ₁ = δ²` of the classical `IG(μ₁, λ₁)` form.
    pub fn shape(&self) -> f64 {
        self.delta * self.delta
    }

    /// Variance `δ/γ³`.
    pub fn variance(&self) -> f64 {
        self.delta / (self.gamma * self.gamma * self.gamma)
    }
}

pub fn ig_logpdf(x: f64, p: &IgParams) -> Result<f64, ParamError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(ParamError::Domain(x));
    }
    let (g, d) = (p.gamma, p.delta);
    // δγ - (δ²/x + γ²x)/2 = -(δ - γx)²/(2x)
    let dev = d - g * x;
    Ok(d.ln() - LN_SQRT_2PI - 1.5 * x.ln() - dev * dev / (2.0 * x))
}

pub fn ig_pdf(x: f64, p: &IgParams) -> Result<f64, ParamError> {
    ig_logpdf(x, p).map(f64::exp)
}

/// One `IG(γ, δ)` draw by the Michael–Schucany–Haas transformation with
/// `μ₁ = δ/γ`, `λ₁ = δ²`:
///
/// 1. `Y = N²` for a standard normal `N`;
/// 2. `X₁ = μ₁ + μ₁²Y/(2λ₁) − (μ₁/(2λ₁))·√(4μ₁λ₁Y + μ₁²Y²)`;
/// 3. `U ~ Uniform[0, 1]`;
/// 4. return `X₁` if `U ≤ μ₁/(μ₁ + X₁)`, else `μ₁²/X₁`.
///
/// Step 2 is evaluated as `μ₁ / (1 + t + √(t² + 2t))` with `t = μ₁Y/(2λ₁)`,
/// which is the same quantity without the cancellation for large `t`.
pub fn ig_sample(p: &IgParams, rng: &mut RngStream) -> f64 {
    let mu1 = p.mean();
    let lambda1 = p.shape();
    let n = rng.standard_normal();
    let y = n * n;
    let t = mu1 * y / (2.0 * lambda1);
    let x1 = mu1 / (1.0 + t + (t * (t + 2.0)).sqrt());
    let u = rng.uniform();
    if u <= mu1 / (mu1 + x1) {
        x1
    } else {
        mu1 * mu1 / x1
    }
}
