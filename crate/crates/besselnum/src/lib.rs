//! Arbitrary-precision Bessel functions and Bessel moments.

mod bessel;
mod cache;
mod moment;
mod num;
mod periods;
mod quad;

pub use bessel::{bessel, bits_for, i0_i1, k0_k1, pi_half_pow, BesselKind};
pub use cache::{CacheRecord, CacheStats, CacheVerify, MomentCache, CACHE_ENV};
pub use moment::{compute_moment, q_to_float, MomentKey, MomentKind};
pub use num::NumMatrix;
pub use periods::{
    bologna, ibp_residuals, ibp_sanity, ibp_sanity_with, residual, tolerance, Evaluator,
};

#[derive(Debug, thiserror::Error)]
pub enum BesselError {
    #[error("argument must be positive, got {0}")]
    NonPositive(f64),
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("invalid moment key {0}")]
    InvalidKey(String),
    #[error("divergent configuration {0}")]
    Divergent(String),
    #[error("quadrature for {key} did not converge within {levels} levels")]
    NoConvergence { key: String, levels: u32 },
    #[error("moment cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, BesselError>;
