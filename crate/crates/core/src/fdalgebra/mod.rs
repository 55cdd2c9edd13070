//! Finite-dimensional quiver algebras `Λ = KQ/I`: completion of the
//! relations, monomial basis, multiplication table, radical quiver and the
//! structure constants of the product on the radical.

mod presentation;
mod radical;
mod rewriting;

pub use presentation::AlgebraPresentation;
pub(crate) use radical::field_name;
pub use radical::{
    check_mu_associativity, compact_word_name, radical_quiver, AssociativityReport, AssociativityViolation,
    RadicalQuiverData,
};
pub use rewriting::{complete, normal_form, RewritingSystem, Rule};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FdError {
    #[error("relation `{0}` contains paths of length < 2")]
    ShortRelation(String),
    #[error("ideal is not admissible within the length bound: {0}")]
    NotAdmissible(String),
    #[error("invalid radical quiver data: {0}")]
    InvalidData(String),
}
