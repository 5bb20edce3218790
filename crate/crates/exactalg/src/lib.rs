//! Exact arithmetic foundation.
//!
//! Everything here works over arbitrary-size rationals: scalars
//! ([`ExactScalar`]), dense univariate polynomials ([`UniPoly`]), reduced
//! rational functions ([`RatFunc`]), dense matrices with fraction-free
//! determinant and inverse ([`ExactMatrix`]), linear differential operators
//! in right-normal form ([`DiffOp`]) and truncated bivariate series
//! ([`TruncBiSeries`]).  All values are immutable once built and can be
//! shared between threads freely.

mod bernoulli;
mod diffop;
mod error;
mod matrix;
mod poly;
mod ratfunc;
mod scalar;
mod series;

pub use bernoulli::bernoulli;
pub use diffop::DiffOp;
pub use error::ExactError;
pub use matrix::{Entry, ExactMatrix, IntegralDomain};
pub use poly::{UniPoly, Var};
pub use ratfunc::RatFunc;
pub use scalar::{
    binom, binom_ext, double_factorial, factorial, format_q, is_integer, parse_q, pow_q, q, qr,
    recip_fact_ext, sign_pow, ExactScalar,
};
pub use series::{series_apply, TruncBiSeries};

pub type Result<T> = std::result::Result<T, ExactError>;
