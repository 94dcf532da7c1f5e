//! Exact arithmetic over `Q` and `Q(i)`: scalars, dense matrices, row
//! reduction, subspaces and flags.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{rref, Echelon, Matrix};
pub use scalar::{Field, Scalar, ScalarParseError};
pub use subspace::{Flag, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("degenerate flag: {0}")]
    DegenerateFlag(&'static str),
}
