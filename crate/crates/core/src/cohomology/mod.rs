//! Exact cohomology of `T_E(J*)` and of `L(Q̃°)`, deformation retracts of
//! truncations, and transferred `A∞` products.

mod complex;
mod hdim;
mod retract;
mod transfer;

pub use complex::{Block, GradedComplexSlice, WordComplex};
pub use hdim::{leavitt_hdim, leavitt_hdim_in, tensor_algebra_hdim, yoneda_level_hdim, LeavittHdim};
pub use retract::{HClass, Retract};
pub use transfer::AInfinityProducts;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("T_E(J*) has no elements of negative degree {0}")]
    NegativeDegree(i64),
    #[error("window {window} must be at least 1 and at most the maximal level {max_level}")]
    BadWindow { max_level: usize, window: usize },
    #[error("monomial {0} lies outside the truncation")]
    OutsideTruncation(String),
    #[error("degree {0} is outside the retract")]
    DegreeOutOfRange(i64),
    #[error("{0}")]
    Invalid(String),
}
