use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group_tower::{DirectSystem, GroupCertificate, GroupTower};
use super::TowerError;
use crate::abelian::{FGAbelianGroup, GroupHom};
use crate::simplicial::{
    cohomology_result, homology, induced_cohomology_map, induced_homology_map, validate_complex,
    HomologyResult, SimplicialComplex, SimplicialMap, Vertex,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// Levels and bonds repeat from `offset` on; checked on homology in every
    /// dimension.
    Periodic { offset: usize },
    /// The homology tower in `dimension` is a truncated shift family.
    ShiftFamily {
        dimension: usize,
        label: Option<String>,
    },
}

/// `levels[0] ← levels[1] ← …` with `bonds[i]: levels[i+1] → levels[i]`.
#[derive(Clone, Debug)]
pub struct ComplexTower {
    levels: Vec<Arc<SimplicialComplex>>,
    bonds: Vec<SimplicialMap>,
    marked_k: Option<Vec<SimplicialComplex>>,
    marked_l: Option<Vec<SimplicialComplex>>,
    certificate: Option<Certificate>,
}

impl ComplexTower {
    pub fn new(levels: Vec<SimplicialComplex>, bonds: Vec<SimplicialMap>) -> Result<Self, TowerError> {
        if levels.is_empty() {
            return Err(TowerError::Empty);
        }
        if bonds.len() + 1 != levels.len() {
            return Err(TowerError::BondCount {
                levels: levels.len(),
                bonds: bonds.len(),
            });
        }
        for (i, b) in bonds.iter().enumerate() {
            if b.source() != &levels[i + 1] || b.target() != &levels[i] {
                return Err(TowerError::BondMismatch {
                    index: i,
                    reason: format!("bond {i} does not map level {} to level {i}", i + 1),
                });
            }
        }
        Ok(Self {
            levels: levels.into_iter().map(Arc::new).collect(),
            bonds,
            marked_k: None,
            marked_l: None,
            certificate: None,
        })
    }

    /// Builds the bonds from vertex maps, `maps[i]` taking level `i+1` to level `i`.
    pub fn from_vertex_maps(
        levels: Vec<SimplicialComplex>,
        maps: Vec<BTreeMap<Vertex, Vertex>>,
    ) -> Result<Self, TowerError> {
        if levels.is_empty() {
            return Err(TowerError::Empty);
        }
        if maps.len() + 1 != levels.len() {
            return Err(TowerError::BondCount {
                levels: levels.len(),
                bonds: maps.len(),
            });
        }
        let arcs: Vec<Arc<SimplicialComplex>> = levels.into_iter().map(Arc::new).collect();
        let bonds = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                SimplicialMap::new(arcs[i + 1].clone(), arcs[i].clone(), m)
                    .map_err(|e| TowerError::BondMismatch { index: i, reason: e.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            levels: arcs,
            bonds,
            marked_k: None,
            marked_l: None,
            certificate: None,
        })
    }

    /// `depth` copies of `k` with identity bonds, `K_i = k`, certified periodic.
    /// At least two levels are always built so the certificate has a bond.
    pub fn constant(k: &SimplicialComplex, depth: usize) -> Self {
        let depth = depth.max(2);
        let k = Arc::new(k.clone());
        let id = SimplicialMap::identity(k.clone());
        Self {
            levels: vec![k.clone(); depth],
            bonds: vec![id; depth - 1],
            marked_k: Some(vec![(*k).clone(); depth]),
            marked_l: None,
            certificate: Some(Certificate::Periodic { offset: 0 }),
        }
    }

    fn check_marks(&self, marks: &[SimplicialComplex], what: &'static str) -> Result<(), TowerError> {
        if marks.len() != self.depth() {
            return Err(TowerError::Marking(format!(
                "{} {what} subcomplexes for {} levels",
                marks.len(),
                self.depth()
            )));
        }
        for (i, m) in marks.iter().enumerate() {
            if let Err(v) = validate_complex(m) {
                return Err(TowerError::Marking(format!(
                    "{what} at level {i} is not closed: {} lacks {}",
                    v.simplex, v.missing_face
                )));
            }
            if !m.is_subcomplex_of(&self.levels[i]) {
                return Err(TowerError::Marking(format!(
                    "{what} at level {i} is not a subcomplex of the level"
                )));
            }
        }
        Ok(())
    }

    pub fn with_marked_k(mut self, marks: Vec<SimplicialComplex>) -> Result<Self, TowerError> {
        self.check_marks(&marks, "K")?;
        self.marked_k = Some(marks);
        Ok(self)
    }

    pub fn with_marked_l(mut self, marks: Vec<SimplicialComplex>) -> Result<Self, TowerError> {
        self.check_marks(&marks, "L")?;
        self.marked_l = Some(marks);
        Ok(self)
    }

    /// Attaches a certificate after checking it.
    pub fn with_certificate(mut self, certificate: Certificate) -> Result<Self, TowerError> {
        match &certificate {
            Certificate::Periodic { offset } => self.verify_periodic(*offset)?,
            Certificate::ShiftFamily { dimension, label } => {
                let cert = GroupCertificate::ShiftFamily { label: label.clone() };
                let theory = IntegralHomology { reduced: *dimension == 0 };
                let (levels, bonds) = self.group_data(&theory, *dimension);
                GroupTower::new(levels, bonds, Some(cert))?;
            }
        }
        self.certificate = Some(certificate);
        Ok(self)
    }

    fn verify_periodic(&self, offset: usize) -> Result<(), TowerError> {
        if offset >= self.bonds.len() {
            return Err(TowerError::CertificateRejected(format!(
                "periodic offset {offset} leaves no bond to repeat"
            )));
        }
        let literal = (offset + 1..self.depth()).all(|i| self.levels[i] == self.levels[offset])
            && (offset + 1..self.bonds.len())
                .all(|i| self.bonds[i].vertex_map() == self.bonds[offset].vertex_map());
        if literal {
            return Ok(());
        }
        let top = self.levels[offset..]
            .iter()
            .map(|k| k.dim())
            .max()
            .unwrap_or(0)
            .max(0) as usize;
        for n in 0..=top {
            for reduced in [false, true] {
                if reduced && n > 0 {
                    continue;
                }
                let (levels, bonds) = self.group_data(&IntegralHomology { reduced }, n);
                GroupTower::new(levels, bonds, Some(GroupCertificate::Periodic { offset }))
                    .map_err(|e| {
                        TowerError::CertificateRejected(format!("dimension {n}: {e}"))
                    })?;
            }
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> &SimplicialComplex {
        &self.levels[i]
    }

    pub fn level_arc(&self, i: usize) -> &Arc<SimplicialComplex> {
        &self.levels[i]
    }

    pub fn bond(&self, i: usize) -> &SimplicialMap {
        &self.bonds[i]
    }

    pub fn bonds(&self) -> &[SimplicialMap] {
        &self.bonds
    }

    pub fn marked_k(&self) -> Option<&[SimplicialComplex]> {
        self.marked_k.as_deref()
    }

    pub fn marked_l(&self) -> Option<&[SimplicialComplex]> {
        self.marked_l.as_deref()
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    /// The first `depth` levels.
    pub fn truncate(&self, depth: usize) -> Result<Self, TowerError> {
        if depth == 0 || depth > self.depth() {
            return Err(TowerError::LevelOutOfRange {
                level: depth,
                depth: self.depth(),
            });
        }
        let certificate = match &self.certificate {
            Some(Certificate::Periodic { offset }) if *offset + 1 >= depth => None,
            other => other.clone(),
        };
        Ok(Self {
            levels: self.levels[..depth].to_vec(),
            bonds: self.bonds[..depth - 1].to_vec(),
            marked_k: self.marked_k.as_ref().map(|m| m[..depth].to_vec()),
            marked_l: self.marked_l.as_ref().map(|m| m[..depth].to_vec()),
            certificate,
        })
    }

    fn group_data<T: HomologyTheory>(&self, theory: &T, n: usize) -> (Vec<FGAbelianGroup>, Vec<GroupHom>) {
        let results: Vec<T::Level> = self.levels.iter().map(|k| theory.compute(k, n)).collect();
        let bonds = self
            .bonds
            .iter()
            .enumerate()
            .map(|(i, f)| theory.induced(f, n, &results[i + 1], &results[i]))
            .collect();
        let levels = results.iter().map(|r| theory.group(r).clone()).collect();
        (levels, bonds)
    }
}

/// A covariant levelwise homology theory on finite complexes.
pub trait HomologyTheory {
    type Level;
    fn compute(&self, k: &SimplicialComplex, n: usize) -> Self::Level;
    fn group<'a>(&self, level: &'a Self::Level) -> &'a FGAbelianGroup;
    fn induced(&self, f: &SimplicialMap, n: usize, source: &Self::Level, target: &Self::Level) -> GroupHom;
}

/// Integral simplicial homology, reduced in degree 0 when asked.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegralHomology {
    pub reduced: bool,
}

impl HomologyTheory for IntegralHomology {
    type Level = HomologyResult;

    fn compute(&self, k: &SimplicialComplex, n: usize) -> HomologyResult {
        homology(k, n, self.reduced)
    }

    fn group<'a>(&self, level: &'a HomologyResult) -> &'a FGAbelianGroup {
        level.group()
    }

    fn induced(&self, f: &SimplicialMap, n: usize, source: &HomologyResult, target: &HomologyResult) -> GroupHom {
        induced_homology_map(f, n, source, target)
    }
}

/// Levelwise homology under `theory`. Certificates carry over when the group
/// tower satisfies them; otherwise they are dropped.
pub fn homology_tower_with<T: HomologyTheory>(theory: &T, t: &ComplexTower, n: usize) -> GroupTower {
    let (levels, bonds) = t.group_data(theory, n);
    let cert = match &t.certificate {
        Some(Certificate::Periodic { offset }) => Some(GroupCertificate::Periodic { offset: *offset }),
        Some(Certificate::ShiftFamily { dimension, label }) if *dimension == n => {
            Some(GroupCertificate::ShiftFamily { label: label.clone() })
        }
        _ => None,
    };
    let tower = GroupTower::new(levels, bonds, None).expect("induced maps join consecutive levels");
    match cert {
        Some(c) => tower.clone().with_certificate(c).unwrap_or(tower),
        None => tower,
    }
}

/// `H_n` of every level with the induced bonds (reduced in degree 0 when asked).
pub fn homology_tower(t: &ComplexTower, n: usize, reduced: bool) -> GroupTower {
    homology_tower_with(&IntegralHomology { reduced }, t, n)
}

/// `H^n(levels[0]) → H^n(levels[1]) → …` along the pulled-back bonds.
pub fn cohomology_system(t: &ComplexTower, n: usize) -> DirectSystem {
    let results: Vec<HomologyResult> = t.levels.iter().map(|k| cohomology_result(k, n)).collect();
    let bonds: Vec<GroupHom> = t
        .bonds
        .iter()
        .enumerate()
        .map(|(i, f)| induced_cohomology_map(f, n, &results[i + 1], &results[i]))
        .collect();
    let levels: Vec<FGAbelianGroup> = results.iter().map(|r| r.group().clone()).collect();
    let offset = match t.certificate {
        Some(Certificate::Periodic { offset }) => Some(offset),
        _ => None,
    };
    DirectSystem::new(levels.clone(), bonds.clone(), offset)
        .or_else(|_| DirectSystem::new(levels, bonds, None))
        .expect("pulled-back bonds join consecutive levels")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::IntegerMatrix;

    fn polygon(n: u32) -> SimplicialComplex {
        SimplicialComplex::from_maximal((0..n).map(|i| [i, (i + 1) % n]))
    }

    fn dyadic(depth: usize) -> ComplexTower {
        let levels: Vec<SimplicialComplex> = (0..depth).map(|i| polygon(3 << i)).collect();
        let maps = (1..depth)
            .map(|i| {
                let n = 3u32 << (i - 1);
                (0..2 * n).map(|j| (j, j % n)).collect()
            })
            .collect();
        ComplexTower::from_vertex_maps(levels, maps).unwrap()
    }

    #[test]
    fn constant_circle_tower() {
        let t = ComplexTower::constant(&polygon(3), 3);
        let h = homology_tower(&t, 1, false);
        assert_eq!(h.depth(), 3);
        for i in 0..2 {
            assert_eq!(h.level(i), &FGAbelianGroup::free(1));
            assert_eq!(h.bond(i).canonical_matrix(), IntegerMatrix::identity(1));
        }
        assert!(h.is_periodic());
    }

    #[test]
    fn dyadic_circle_tower_is_periodic_doubling() {
        let t = dyadic(4)
            .with_certificate(Certificate::Periodic { offset: 0 })
            .unwrap();
        let h = homology_tower(&t, 1, false);
        assert!(h.is_periodic());
        for i in 0..3 {
            assert_eq!(h.bond(i).canonical_matrix(), IntegerMatrix::from_rows(1, &[[2]]));
        }
    }

    #[test]
    fn bogus_periodic_certificate_is_rejected() {
        // triangle ← hexagon (double cover) ← hexagon (identity)
        let levels = vec![polygon(3), polygon(6), polygon(6)];
        let maps = vec![(0..6).map(|j| (j, j % 3)).collect(), (0..6).map(|j| (j, j)).collect()];
        let t = ComplexTower::from_vertex_maps(levels, maps).unwrap();
        assert!(t.clone().with_certificate(Certificate::Periodic { offset: 0 }).is_err());
        assert!(t.with_certificate(Certificate::Periodic { offset: 1 }).is_ok());
    }

    #[test]
    fn truncation_commutes_with_homology() {
        let t = dyadic(4);
        let full = homology_tower(&t, 1, false);
        let short = homology_tower(&t.truncate(3).unwrap(), 1, false);
        assert_eq!(short.depth(), 3);
        for i in 0..3 {
            assert_eq!(full.level(i), short.level(i));
        }
        for i in 0..2 {
            assert!(full.bond(i).same_map(short.bond(i)));
        }
    }

    #[test]
    fn marks_must_be_subcomplexes() {
        let t = ComplexTower::constant(&polygon(3), 2);
        let outside = SimplicialComplex::simplex([7]);
        assert!(t.clone().with_marked_k(vec![outside.clone(), outside]).is_err());
        let edge = SimplicialComplex::simplex([0, 1]);
        assert!(t.with_marked_k(vec![edge.clone(), edge]).is_ok());
    }

    #[test]
    fn cohomology_system_of_dyadic_tower() {
        let t = dyadic(3)
            .with_certificate(Certificate::Periodic { offset: 0 })
            .unwrap();
        let s = cohomology_system(&t, 1);
        assert_eq!(s.periodic_offset(), Some(0));
        for b in s.bonds() {
            assert_eq!(b.canonical_matrix(), IntegerMatrix::from_rows(1, &[[2]]));
        }
    }
}
