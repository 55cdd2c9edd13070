//! Exact scalars and sparse linear algebra.

mod linalg;
mod rational;
mod scalar;

pub use linalg::{kernel_basis, rank, solve, EchelonBasis, Matrix, SparseVector};
pub use rational::Rational;
pub use scalar::{is_prime, Field, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoundationError {
    #[error("operands live in different fields ({0} and {1})")]
    MixedField(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{0} is not a prime modulus")]
    InvalidModulus(u64),
}
