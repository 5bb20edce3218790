//! Exact constant and rational-function matrices of the Broadhurst–Roberts
//! quadratic relations.
//!
//! Everything here is built from closed forms (binomial sums, Bernoulli
//! numbers) or from Vanhove's operators, and every identity between the
//! objects is checked by exact arithmetic over `Q` or `Q(u)`.  Indices in the
//! public formulas are 1-based, as in the closed forms; matrices are the
//! 0-based [`ExactMatrix`] underneath.
//!
//! Naming: objects attached to odd Bessel moment problems (`Σ_{2k-1}`, the
//! Betti matrix `𝔅_k`, the de Rham matrix `𝔇_k`) carry an `odd` suffix, their
//! even counterparts (`σ_{2k}`, `𝔟_k`, `𝔡_k`) an `even` suffix; `ring`
//! marks the companion matrices `𝔅̊, 𝔟̊, 𝔇̊, 𝔡̊, 𝔖̊`.

mod aux;
mod betti;
mod constants;
mod derham;
mod family;
mod identities;
mod sigma;
mod util;
mod wronskian;

pub use aux::{aux_matrix, AuxName};
pub use betti::{
    betti_even, betti_even_from_sigma_inv, betti_even_ring, betti_minors, betti_odd,
    betti_odd_from_sigma_inv, betti_odd_ring, frak_s, frak_s_entry, frak_s_ring, frak_s_ring_entry,
    frak_s_ring_zeroth,
};
pub use constants::{named_constant, ConstName, NamedConstant, Surd};
pub use derham::{
    derham_alternatives, derham_even, derham_even_ring, derham_odd, derham_odd_ring,
    AlternativeForms,
};
pub use family::{build_family, matrix_json, Built, FamilyName, MatrixFamily, MatrixJson};
pub use identities::verify_block_identities;
pub use sigma::{
    mat_sigma_even, mat_sigma_even_inv_bernoulli, mat_sigma_odd, mat_sigma_odd_inv_bernoulli,
    sigma_first_row_alt,
};
pub use util::{resolved_sign, QMatrix, UMatrix};
pub use wronskian::{beta_matrix, beta_matrix_at, mat_upsilon, mat_v};

pub use vanhove::{CheckItem, Report};

use exactalg::ExactError;
use vanhove::VanhoveError;

#[derive(Debug, thiserror::Error)]
pub enum BrError {
    #[error("index {what} = {value} out of the supported range")]
    Range { what: &'static str, value: usize },
    #[error("unknown matrix name {0:?}")]
    UnknownName(String),
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("block mismatch: {0}")]
    Mismatch(String),
    #[error("sign of {what} is not constant near u = {at}")]
    Sign { what: String, at: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Vanhove(#[from] VanhoveError),
}

pub type Result<T> = std::result::Result<T, BrError>;
