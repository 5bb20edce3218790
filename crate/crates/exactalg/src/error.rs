use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular (determinant {det})")]
    Singular { det: String },
    #[error("pole at u = {at} survives cancellation")]
    Pole { at: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable mismatch: {0:?} vs {1:?}")]
    VariableMismatch(crate::Var, crate::Var),
    #[error("binomial coefficient with negative upper index C({n},{k})")]
    NegativeBinomial { n: i64, k: i64 },
    #[error("operator coefficient is not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("truncation order {order} too small (loses {loss} terms)")]
    Truncation { order: usize, loss: usize },
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
