//! Exact arithmetic over Q and real quadratic fields: scalars, dense
//! matrices, and integer-lattice algorithms.

mod lattice;
mod matrix;
mod scalar;

pub use lattice::{
    hermite_normal_form, smith_diagonal, split_coordinates, zmodule_equal, zmodule_membership,
    IntMatrix, ZModule,
};
pub use matrix::{dot, vectors_rank, ExactMatrix, Rref, SparseEchelon, Vector};
pub use scalar::{is_square_free, Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("malformed scalar literal `{0}`")]
    BadScalar(String),
    #[error("sqrt({0}): radicand must be square-free and greater than 1")]
    BadRadicand(u64),
    #[error("entries from different fields in one matrix")]
    MixedFields,
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
}
