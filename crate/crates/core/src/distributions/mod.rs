//! The innovation law, its inverse Gaussian mixing law, sampling for both,
//! and the posterior moments of the mixing variable that drive the E-step.

mod gig;
mod ig;
mod nig;
mod rng;

pub use gig::{gig_cond_moments, CondMoments};
pub use ig::{ig_logpdf, ig_pdf, ig_sample, IgParams};
pub use nig::{nig_logpdf, nig_moments, nig_pdf, nig_phi, nig_sample, NigParams};
pub use rng::RngStream;
