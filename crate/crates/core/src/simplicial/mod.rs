//! Finite simplicial complexes, simplicial maps, exact (co)homology and
//! telescope constructions.

mod chain;
mod complex;
mod map;
mod telescope;

pub use chain::{
    boundary_matrix, cohomology, cohomology_result, homology, induced_cohomology_map,
    induced_homology_map, induced_map, HomologyResult,
};
pub use complex::{validate_complex, ComplexViolation, Simplex, SimplicialComplex, Vertex};
pub use map::SimplicialMap;
pub use telescope::{finite_telescope, mapping_cylinder, pinched_telescope, MappingCylinder, Telescope};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("map is not simplicial: {simplex} goes to {image}, which is not a simplex of the target")]
    NotSimplicial { simplex: Simplex, image: Simplex },
    #[error("vertex {0} has no image")]
    UnmappedVertex(Vertex),
    #[error("incompatible maps: {0}")]
    Incompatible(String),
    #[error("level {level} exceeds the tower truncation (depth {depth})")]
    LevelOutOfRange { level: usize, depth: usize },
    #[error("pinching needs level at least 1")]
    NothingToPinch,
}
