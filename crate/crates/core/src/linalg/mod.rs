//! Exact dense linear algebra over `R` and `Frac(R)`.

mod elimination;
mod matrix;

pub use elimination::{
    bareiss_det, clear_denominators, clear_row_denominators, frac_nullspace, frac_solve,
    frac_solve_many, fraction_free_rref, poly_inverse, poly_nullspace, rank, Echelon, Solution,
};
pub use matrix::{FracMatrix, Matrix, PolyMatrix};

use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("interior division in fraction-free elimination was not exact")]
    InexactDivision,
    #[error("system is underdetermined ({free} free variables); use the nullspace instead")]
    Underdetermined { free: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("inverse has entries outside the Laurent ring")]
    NotIntegral,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
