use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;

use super::complex::{Simplex, SimplicialComplex, Vertex};
use super::SimplicialError;
use crate::abelian::IntegerMatrix;

/// A vertex map between complexes that carries simplexes to simplexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_map: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    pub fn new(
        source: impl Into<Arc<SimplicialComplex>>,
        target: impl Into<Arc<SimplicialComplex>>,
        vertex_map: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self, SimplicialError> {
        let source = source.into();
        let target = target.into();
        for v in source.vertices() {
            match vertex_map.get(&v) {
                None => return Err(SimplicialError::UnmappedVertex(v)),
                Some(w) if !target.contains(&Simplex::vertex(*w)) => {
                    return Err(SimplicialError::NotSimplicial {
                        simplex: Simplex::vertex(v),
                        image: Simplex::vertex(*w),
                    })
                }
                _ => {}
            }
        }
        let map = Self {
            source,
            target,
            vertex_map,
        };
        for s in map.source.iter() {
            let image = map.image(s);
            if !map.target.contains(&image) {
                return Err(SimplicialError::NotSimplicial {
                    simplex: s.clone(),
                    image,
                });
            }
        }
        Ok(map)
    }

    pub fn identity(k: impl Into<Arc<SimplicialComplex>>) -> Self {
        let k = k.into();
        let vertex_map = k.vertices().into_iter().map(|v| (v, v)).collect();
        Self {
            source: k.clone(),
            target: k,
            vertex_map,
        }
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(
        sub: impl Into<Arc<SimplicialComplex>>,
        whole: impl Into<Arc<SimplicialComplex>>,
    ) -> Result<Self, SimplicialError> {
        let sub = sub.into();
        let vertex_map = sub.vertices().into_iter().map(|v| (v, v)).collect();
        Self::new(sub, whole, vertex_map)
    }

    /// Everything to one vertex of the target.
    pub fn constant(
        source: impl Into<Arc<SimplicialComplex>>,
        target: impl Into<Arc<SimplicialComplex>>,
        to: Vertex,
    ) -> Result<Self, SimplicialError> {
        let source = source.into();
        let vertex_map = source.vertices().into_iter().map(|v| (v, to)).collect();
        Self::new(source, target, vertex_map)
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.vertex_map
    }

    pub fn apply_vertex(&self, v: Vertex) -> Vertex {
        self.vertex_map[&v]
    }

    /// Image simplex (possibly of lower dimension).
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| self.vertex_map[v]))
    }

    /// Simplexes of the source whose image lies in `sub`; closed under faces.
    pub fn preimage(&self, sub: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_simplices_unchecked(
            self.source.iter().filter(|s| sub.contains(&self.image(s))).cloned(),
        )
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap, SimplicialError> {
        if self.target != g.source {
            return Err(SimplicialError::Incompatible(
                "target of the first map differs from the source of the second".into(),
            ));
        }
        let vertex_map = self
            .vertex_map
            .iter()
            .map(|(&v, w)| (v, g.vertex_map[w]))
            .collect();
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: g.target.clone(),
            vertex_map,
        })
    }

    /// The chain map in degree `n`: oriented simplexes go to oriented images,
    /// degenerate images to zero.
    pub fn chain_matrix(&self, n: usize) -> IntegerMatrix {
        let cols = self.source.simplices_of_dim(n);
        let rows = self.target.simplices_of_dim(n);
        let index: HashMap<&Simplex, usize> =
            rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            let image: Vec<Vertex> = s.vertices().iter().map(|v| self.vertex_map[v]).collect();
            let Some(sign) = permutation_sign(&image) else {
                continue;
            };
            let i = index[&Simplex::new(image)];
            m[(i, j)] = BigInt::from(sign);
        }
        m
    }
}

/// Sign of the permutation sorting `v`; `None` when `v` has repeats.
fn permutation_sign(v: &[Vertex]) -> Option<i64> {
    let mut inversions = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return None;
            }
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}
