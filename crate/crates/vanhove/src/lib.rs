//! Vanhove's differential operators and their combinatorial scaffolding.
//!
//! The operators `L̃_m = Σ_j ℓ_{m,j}(u) D^j` are built from Verrill's
//! polynomials in two independent ways (a polynomial in `θ̂` evaluated via
//! [`exactalg::DiffOp::poly_of`], and a literal product of first-order
//! factors), which must agree.  Structural identities, Verrill's recursion and
//! the duality with the Borwein–Salvy operators are exposed as checks that
//! return a [`Report`] instead of panicking.

mod bms;
mod operator;
mod report;
mod verrill;

pub use bms::{borwein_salvy_operator, verify_bms_duality};
pub use operator::{check_vanhove_structure, vanhove_operator, VanhoveOperator};
pub use report::{CheckItem, Report};
pub use verrill::{
    alpha_tuples, bessel_power_number, verify_verrill_recursion, verrill_poly, AlphaTuple,
};

use exactalg::ExactError;

#[derive(Debug, thiserror::Error)]
pub enum VanhoveError {
    #[error("order must be positive")]
    ZeroOrder,
    #[error("the two constructions of L̃_{m} disagree at D^{j}")]
    RouteMismatch { m: usize, j: usize },
    #[error("coefficient ℓ_{{{m},{j}}} is not an integer polynomial: {coeff}")]
    NonIntegral { m: usize, j: usize, coeff: String },
    #[error("truncation order {order} too small: {reason}")]
    TruncationTooSmall { order: usize, reason: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Result<T> = std::result::Result<T, VanhoveError>;
