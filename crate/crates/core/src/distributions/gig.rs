//! Posterior moments of the mixing variable given an observation.
//!
//! Given `ε`, the mixing variable is `GIG(−1, δ√φ(ε), α)` and
//!
//! ```text
//! E[G | ε]    = (δ√φ / α) · K₀(z) / K₁(z)
//! E[G⁻¹ | ε]  = (α / (δ√φ)) · K₂(z) / K₁(z),   z = αδ√φ(ε)
//! ```
//!
//! `K₂/K₁ = K₀/K₁ + 2/z`, and `K₀/K₁` is taken from the exponentially scaled
//! pair so it stays finite for `z` in the millions.

use serde::{Deserialize, Serialize};

use super::nig::{nig_phi, NigParams};
use crate::special_fn::ratio_k0_k1;

/// `s = E[G | ε]` and `w = E[G⁻¹ | ε]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CondMoments {
    pub s: f64,
    pub w: f64,
}

pub fn gig_cond_moments(eps: f64, p: &NigParams) -> CondMoments {
    let root_phi = nig_phi(eps, p).sqrt();
    let scale = p.delta() * root_phi;
    let z = p.alpha() * scale;
    let r = ratio_k0_k1(z);
    CondMoments {
        s: scale / p.alpha() * r,
        w: p.alpha() / scale * (r + 2.0 / z),
    }
}
