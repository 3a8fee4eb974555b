//! Compactohedral axioms for complex towers, and a gallery of towers that
//! satisfy them.

mod gallery;
mod validate;

pub use gallery::{build_gallery, GalleryFamily, COMB_LIM1_LABEL, MAX_GALLERY_VERTICES};
pub use validate::{
    contained_in_interior, induced_l_marks, validate, Axiom, Interior, ValidationReport, Variant,
    Violation,
};

use thiserror::Error;

use crate::tower::TowerError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompactohedralError {
    #[error("marked {0} subcomplexes are required for this variant")]
    MissingMarks(&'static str),
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("invalid gallery parameters: {0}")]
    Parameter(String),
    #[error("gallery tower failed validation: {0}")]
    Gallery(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
}
