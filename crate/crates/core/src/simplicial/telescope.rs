//! Mapping cylinders, finite telescopes and pinched telescopes.
//!
//! The cylinder of `f: K → L` has a copy `K'` of `K`, the complex `L`, and a
//! simplex `σ' ∪ τ` whenever `σ ∈ K`, `τ ∈ L` and `f(σ) ∪ τ ∈ L`. The map
//! `r = f ⊔ id` is a simplicial retraction onto `L`, and `id` and `i∘r` are
//! contiguous, so `L ↪ M_f` is a homotopy equivalence and `r` restricted to
//! `K'` is `f`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::complex::{Simplex, SimplicialComplex, Vertex};
use super::map::SimplicialMap;
use super::SimplicialError;
use crate::tower::ComplexTower;

/// A glued complex together with the embeddings of its pieces.
#[derive(Clone, Debug)]
pub struct Telescope {
    pub complex: Arc<SimplicialComplex>,
    /// `level_embeddings[k]` embeds level `k` of the tower.
    pub level_embeddings: Vec<SimplicialMap>,
}

#[derive(Clone, Debug)]
pub struct MappingCylinder {
    pub complex: Arc<SimplicialComplex>,
    pub source_embedding: SimplicialMap,
    pub target_embedding: SimplicialMap,
    /// The simplicial retraction onto the target copy.
    pub retraction: SimplicialMap,
}

/// Fresh, consecutive vertex numbering for a sequence of complexes.
struct Relabel {
    ids: Vec<BTreeMap<Vertex, Vertex>>,
    next: Vertex,
}

impl Relabel {
    fn new(levels: &[&SimplicialComplex]) -> Self {
        let mut next = 0;
        let mut ids = Vec::with_capacity(levels.len());
        for k in levels {
            let m: BTreeMap<Vertex, Vertex> = k
                .vertices()
                .into_iter()
                .map(|v| {
                    let id = next;
                    next += 1;
                    (v, id)
                })
                .collect();
            ids.push(m);
        }
        Self { ids, next }
    }

    fn simplex(&self, level: usize, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| self.ids[level][v]))
    }
}

/// Iterated cylinders of `maps[k]: levels[k+1] → levels[k]`, glued along the
/// shared level copies.
fn glue_cylinders(
    levels: &[&SimplicialComplex],
    maps: &[&SimplicialMap],
) -> (SimplicialComplex, Relabel) {
    debug_assert_eq!(levels.len(), maps.len() + 1);
    let relabel = Relabel::new(levels);
    let mut complex = SimplicialComplex::empty();
    for (k, level) in levels.iter().enumerate() {
        for s in level.maximal_simplices() {
            complex.insert_closed(&relabel.simplex(k, &s));
        }
    }
    for (k, f) in maps.iter().enumerate() {
        let target_max = levels[k].maximal_simplices();
        for sigma in levels[k + 1].iter() {
            let image = f.image(sigma);
            let upper = relabel.simplex(k + 1, sigma);
            for rho in target_max.iter().filter(|rho| image.is_face_of(rho)) {
                complex.insert_closed(&upper.union(&relabel.simplex(k, rho)));
            }
        }
    }
    (complex, relabel)
}

fn embedding(
    level: &Arc<SimplicialComplex>,
    ids: &BTreeMap<Vertex, Vertex>,
    into: &Arc<SimplicialComplex>,
) -> SimplicialMap {
    SimplicialMap::new(level.clone(), into.clone(), ids.clone())
        .expect("level copies are subcomplexes of the glued complex")
}

/// The mapping cylinder of `f`.
pub fn mapping_cylinder(f: &SimplicialMap) -> MappingCylinder {
    let (complex, relabel) = glue_cylinders(&[f.target(), f.source()], &[f]);
    let complex = Arc::new(complex);
    let target_embedding = embedding(f.target_arc(), &relabel.ids[0], &complex);
    let source_embedding = embedding(f.source_arc(), &relabel.ids[1], &complex);
    let mut retraction = BTreeMap::new();
    for (&v, &id) in &relabel.ids[0] {
        retraction.insert(id, v);
    }
    for (&v, &id) in &relabel.ids[1] {
        retraction.insert(id, f.apply_vertex(v));
    }
    let retraction = SimplicialMap::new(complex.clone(), f.target_arc().clone(), retraction)
        .expect("cylinder collapses simplicially onto its target");
    MappingCylinder {
        complex,
        source_embedding,
        target_embedding,
        retraction,
    }
}

/// `MC(p_0) ∪ MC(p_1) ∪ … ∪ MC(p_{n-1})`, glued along the level copies.
pub fn finite_telescope(tower: &ComplexTower, n: usize) -> Result<Telescope, SimplicialError> {
    if n >= tower.depth() {
        return Err(SimplicialError::LevelOutOfRange {
            level: n,
            depth: tower.depth(),
        });
    }
    let levels: Vec<&SimplicialComplex> = (0..=n).map(|k| tower.level(k)).collect();
    let maps: Vec<&SimplicialMap> = (0..n).map(|k| tower.bond(k)).collect();
    let (complex, relabel) = glue_cylinders(&levels, &maps);
    let complex = Arc::new(complex);
    let level_embeddings = (0..=n)
        .map(|k| embedding(tower.level_arc(k), &relabel.ids[k], &complex))
        .collect();
    Ok(Telescope {
        complex,
        level_embeddings,
    })
}

/// The finite telescope through level `n` with a cone attached over its
/// level-`n` copy.
pub fn pinched_telescope(
    tower: &ComplexTower,
    n: usize,
) -> Result<SimplicialComplex, SimplicialError> {
    if n == 0 {
        return Err(SimplicialError::NothingToPinch);
    }
    if n >= tower.depth() {
        return Err(SimplicialError::LevelOutOfRange {
            level: n,
            depth: tower.depth(),
        });
    }
    let levels: Vec<&SimplicialComplex> = (0..=n).map(|k| tower.level(k)).collect();
    let maps: Vec<&SimplicialMap> = (0..n).map(|k| tower.bond(k)).collect();
    let (mut complex, relabel) = glue_cylinders(&levels, &maps);
    let apex = Simplex::vertex(relabel.next);
    for s in tower.level(n).maximal_simplices() {
        complex.insert_closed(&relabel.simplex(n, &s).union(&apex));
    }
    complex.insert_closed(&apex);
    Ok(complex)
}
