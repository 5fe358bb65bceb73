//! The normal inverse Gaussian law `NIG(α, β, μ, δ)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ig::{ig_sample, IgParams};
use super::rng::RngStream;
use crate::error::ParamError;
use crate::special_fn::log_bessel_k;

/// NIG parameters with `δ > 0` and `α > |β|`; `γ = √(α² − β²)` is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NigRepr", into = "NigRepr")]
pub struct NigParams {
    alpha: f64,
    beta: f64,
    mu: f64,
    delta: f64,
}

#[derive(Serialize, Deserialize)]
struct NigRepr {
    alpha: f64,
    beta: f64,
    mu: f64,
    delta: f64,
    #[serde(default, skip_deserializing)]
    gamma: f64,
}

impl TryFrom<NigRepr> for NigParams {
    type Error = ParamError;

    fn try_from(r: NigRepr) -> Result<Self, Self::Error> {
        NigParams::new(r.alpha, r.beta, r.mu, r.delta)
    }
}

impl From<NigParams> for NigRepr {
    fn from(p: NigParams) -> Self {
        NigRepr {
            alpha: p.alpha,
            beta: p.beta,
            mu: p.mu,
            delta: p.delta,
            gamma: p.gamma(),
        }
    }
}

fn finite(name: &'static str, value: f64) -> Result<f64, ParamError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ParamError::NonFinite { name, value })
    }
}

impl NigParams {
    pub fn new(alpha: f64, beta: f64, mu: f64, delta: f64) -> Result<Self, ParamError> {
        finite("alpha", alpha)?;
        finite("beta", beta)?;
        finite("mu", mu)?;
        finite("delta", delta)?;
        if delta <= 0.0 {
            return Err(ParamError::Delta(delta));
        }
        if alpha <= beta.abs() {
            return Err(ParamError::Tail { alpha, beta });
        }
        let params = Self {
            alpha,
            beta,
            mu,
            delta,
        };
        // alpha slightly above |beta| can still round gamma to zero
        if !(params.gamma() > 0.0) {
            return Err(ParamError::Tail { alpha, beta });
        }
        Ok(params)
    }

    /// Builds the parameters from `(γ, β, μ, δ)` with `α = √(γ² + β²)`.
    pub fn from_gamma(gamma: f64, beta: f64, mu: f64, delta: f64) -> Result<Self, ParamError> {
        finite("gamma", gamma)?;
        finite("beta", beta)?;
        if gamma <= 0.0 {
            return Err(ParamError::Gamma(gamma));
        }
        Self::new(gamma.hypot(beta), beta, mu, delta)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma(&self) -> f64 {
        ((self.alpha - self.beta) * (self.alpha + self.beta)).sqrt()
    }

    /// The mixing law `IG(γ, δ)`.
    pub fn mixing(&self) -> IgParams {
        IgParams::new(self.gamma(), self.delta).expect("validated NIG parameters give a valid IG law")
    }
}

/// `φ(x) = 1 + ((x − μ)/δ)²`.
pub fn nig_phi(x: f64, p: &NigParams) -> f64 {
    let z = (x - p.mu) / p.delta;
    1.0 + z * z
}

/// Log-density
/// `ln(α/π) + δγ − βμ − ½ ln φ(x) + ln K₁(δα√φ(x)) + βx`.
pub fn nig_logpdf(x: f64, p: &NigParams) -> f64 {
    if !x.is_finite() {
        return f64::NEG_INFINITY;
    }
    let phi = nig_phi(x, p);
    let arg = p.delta * p.alpha * phi.sqrt();
    let ln_k1 = log_bessel_k(1, arg).unwrap_or(f64::NAN);
    (p.alpha / PI).ln() - 0.5 * phi.ln() + ln_k1 + p.delta * p.gamma() + p.beta * (x - p.mu)
}

pub fn nig_pdf(x: f64, p: &NigParams) -> f64 {
    nig_logpdf(x, p).exp()
}

/// One draw from the variance-mean mixture `μ + βG + √G·Z`, `G ~ IG(γ, δ)`.
pub fn nig_sample(p: &NigParams, rng: &mut RngStream) -> f64 {
    let g = ig_sample(&p.mixing(), rng);
    let z = rng.standard_normal();
    p.mu + p.beta * g + g.sqrt() * z
}

/// `(mean, variance) = ((μγ + δβ)/γ, δα²/γ³)`.
pub fn nig_moments(p: &NigParams) -> (f64, f64) {
    let gamma = p.gamma();
    let mean = (p.mu * gamma + p.delta * p.beta) / gamma;
    let variance = p.delta * p.alpha * p.alpha / (gamma * gamma * gamma);
    (mean, variance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(NigParams::new(1.0, 0.0, 0.0, 1.0).is_ok());
        assert_eq!(
            NigParams::new(1.0, 1.0, 0.0, 1.0),
            Err(ParamError::Tail {
                alpha: 1.0,
                beta: 1.0
            })
        );
        assert!(NigParams::new(1.0, -2.0, 0.0, 1.0).is_err());
        assert_eq!(NigParams::new(1.0, 0.0, 0.0, 0.0), Err(ParamError::Delta(0.0)));
        assert!(NigParams::new(1.0, 0.0, f64::INFINITY, 1.0).is_err());
        assert!(NigParams::from_gamma(0.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn gamma_round_trip() {
        let p = NigParams::from_gamma(2.0, 1.0, 1.0, 2.0).unwrap();
        assert!((p.alpha() - 5.0_f64.sqrt()).abs() < 1e-15);
        assert!((p.gamma() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn phi_examples() {
        let p = NigParams::new(2.0, 0.5, 1.5, 0.5).unwrap();
        assert_eq!(nig_phi(1.5, &p), 1.0);
        assert_eq!(nig_phi(2.0, &p), 2.0);
        assert_eq!(nig_phi(1.5 - 1.5, &p), 10.0);
    }

    #[test]
    fn logpdf_at_origin() {
        let p = NigParams::new(1.0, 0.0, 0.0, 1.0).unwrap();
        // ln((1/π) e K₁(1)) with K₁(1) = 0.6019072301972346
        let expected = (std::f64::consts::E / PI * 0.601_907_230_197_234_6).ln();
        assert!((nig_logpdf(0.0, &p) - expected).abs() < 1e-13);
        assert!((expected + 0.652_381_834_060_152_5).abs() < 1e-12);
    }

    #[test]
    fn symmetric_when_beta_zero() {
        let p = NigParams::new(1.7, 0.0, -0.3, 0.8).unwrap();
        for d in [0.1, 1.0, 7.5, 40.0] {
            assert_eq!(nig_logpdf(-0.3 + d, &p), nig_logpdf(-0.3 - d, &p));
        }
    }

    #[test]
    fn moments_closed_forms() {
        let p = NigParams::new(1.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(nig_moments(&p), (0.0, 1.0));
        let p = NigParams::new(2.24, 1.0, 1.0, 2.0).unwrap();
        let (m, v) = nig_moments(&p);
        assert!((m - 1.997_807_233_482_083).abs() < 1e-12);
        assert!((v - 1.246_166_262_126_567_4).abs() < 1e-12);
        let p = NigParams::new(0.02, 0.0, 0.23, 9.5).unwrap();
        let (m, v) = nig_moments(&p);
        assert!((m - 0.23).abs() < 1e-15);
        assert!((v - 475.0).abs() < 1e-9);
    }

    #[test]
    fn serde_carries_gamma_and_validates() {
        let p = NigParams::new(2.24, 1.0, 1.0, 2.0).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"gamma\""));
        let back: NigParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"alpha":1.0,"beta":2.0,"mu":0.0,"delta":1.0}"#;
        assert!(serde_json::from_str::<NigParams>(bad).is_err());
    }
}
