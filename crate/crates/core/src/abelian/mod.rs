//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod matrix;
mod smith;
mod subgroup;

pub use group::{canonicalize_presentation, compose_homs, FGAbelianGroup, GroupHom, Presentation};
pub use matrix::IntegerMatrix;
pub use smith::{rank, smith_normal_form, SmithDecomposition};
pub use subgroup::Subgroup;

pub(crate) use smith::{smith_tracked, Track};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        what: &'static str,
    },
    #[error("homomorphism is not well defined: relation {relation} is not sent to zero")]
    NotWellDefined { relation: usize },
    #[error("incompatible homomorphisms: {0}")]
    Incompatible(String),
    #[error("invalid invariants: {0}")]
    InvalidInvariants(String),
}
