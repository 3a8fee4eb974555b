//! Truncated inverse sequences of groups and complexes.
//!
//! Level 0 is the coarsest level; bond `i` goes from level `i+1` to level `i`.

mod charpoly;
mod complex_tower;
mod group_tower;

pub use charpoly::{characteristic_polynomial, unit_part_degree, MAX_UNIT_SEARCH_DEGREE};
pub use complex_tower::{
    cohomology_system, homology_tower, homology_tower_with, Certificate, ComplexTower,
    HomologyTheory, IntegralHomology,
};
pub use group_tower::{
    colim_direct_system, effective_window, lim1_class, ml_status, periodic_chain, periodic_lim,
    stable_images, stable_lim, tower_lim, ColimOutcome, DirectSystem, GroupCertificate, GroupTower,
    Lim1Class, Lim1Verdict, MLStatus, MLVerdict, NotStable, PeriodicChain,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("a tower needs at least one level")]
    Empty,
    #[error("{levels} levels need {} bonds, found {bonds}", levels - 1)]
    BondCount { levels: usize, bonds: usize },
    #[error("bond {index}: {reason}")]
    BondMismatch { index: usize, reason: String },
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("level {level} plus window {window} exceeds the truncation (depth {depth})")]
    WindowExceedsTruncation {
        level: usize,
        window: usize,
        depth: usize,
    },
    #[error("level {level} is out of range for depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },
    #[error("not an endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("unit-part search on a free block of rank {degree} exceeds the limit {max}")]
    UnitSearchTooLarge { degree: usize, max: usize },
    #[error("marked subcomplexes: {0}")]
    Marking(String),
}
