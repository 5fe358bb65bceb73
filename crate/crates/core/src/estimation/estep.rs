use crate::distributions::{gig_cond_moments, nig_logpdf, NigParams};

/// Posterior weights `s_t = E[G_t | ε_t]`, `w_t = E[G_t⁻¹ | ε_t]` at `p`.
pub fn e_step(eps: &[f64], p: &NigParams) -> (Vec<f64>, Vec<f64>) {
    eps.iter()
        .map(|&e| {
            let m = gig_cond_moments(e, p);
            (m.s, m.w)
        })
        .unzip()
}

/// Observed-data log-likelihood `Σ_t ln f(ε_t; α, β, μ, δ)`.
pub fn log_likelihood(eps: &[f64], p: &NigParams) -> f64 {
    eps.iter().map(|&e| nig_logpdf(e, p)).sum()
}
