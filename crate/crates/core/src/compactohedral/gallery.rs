//! Certified towers for standard examples.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::validate::{validate, Variant};
use super::CompactohedralError;
use crate::simplicial::{Simplex, SimplicialComplex, Vertex};
use crate::tower::{Certificate, ComplexTower};

/// Display label for lim¹ of the comb's `H_1` tower.
pub const COMB_LIM1_LABEL: &str = "Prod(Z)/Sum(Z)";

/// Largest number of vertices a gallery level may have.
pub const MAX_GALLERY_VERTICES: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GalleryFamily {
    /// Comb and flea: teeth, a top bar, and a bottom segment that shrinks
    /// towards the flea one tooth per level.
    Comb { teeth: usize },
    /// Circles with `p`-fold wrapping bonds.
    Solenoid { p: u32 },
    /// Circles with degree-one subdivision bonds.
    Warsaw,
    /// Vertical segments with two shrinking boxes at their ends, each box
    /// modelled as a cone over the tooth portions inside it.
    Example411 { teeth: usize },
}

impl GalleryFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GalleryFamily::Comb { .. } => "comb",
            GalleryFamily::Solenoid { .. } => "solenoid",
            GalleryFamily::Warsaw => "warsaw",
            GalleryFamily::Example411 { .. } => "example_4_11",
        }
    }
}

fn param(msg: impl Into<String>) -> CompactohedralError {
    CompactohedralError::Parameter(msg.into())
}

pub fn build_gallery(family: &GalleryFamily, depth: usize) -> Result<ComplexTower, CompactohedralError> {
    if depth == 0 {
        return Err(param("depth must be at least 1"));
    }
    let tower = match family {
        GalleryFamily::Comb { teeth } => comb(*teeth, depth)?,
        GalleryFamily::Solenoid { p } => {
            if *p == 0 {
                return Err(param("p must be positive"));
            }
            circles(depth, *p as usize, |j, n| j % n)?
        }
        GalleryFamily::Warsaw => circles(depth, 2, |j, _| j / 2)?,
        GalleryFamily::Example411 { teeth } => boxes(*teeth, depth)?,
    };
    let report = validate(&tower, Variant::Compactohedral)?;
    if !report.passed() {
        return Err(CompactohedralError::Gallery(report.to_string()));
    }
    Ok(tower)
}

fn cycle(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_maximal((0..n).map(|i| [i as Vertex, ((i + 1) % n) as Vertex]))
}

/// Levels `C_{3·f^i}` with bonds given on vertex indices by `bond(j, n)`,
/// where `n` is the size of the lower level.
fn circles(
    depth: usize,
    factor: usize,
    bond: impl Fn(usize, usize) -> usize,
) -> Result<ComplexTower, CompactohedralError> {
    let sizes: Vec<usize> = (0..depth)
        .map(|i| {
            u32::try_from(i)
                .ok()
                .and_then(|i| factor.checked_pow(i))
                .and_then(|f| f.checked_mul(3))
                .filter(|&n| n <= MAX_GALLERY_VERTICES)
                .ok_or_else(|| param("circle levels exceed the vertex limit"))
        })
        .collect::<Result<_, _>>()?;
    let levels: Vec<SimplicialComplex> = sizes.iter().map(|&n| cycle(n)).collect();
    let maps = (0..depth - 1)
        .map(|i| {
            (0..sizes[i + 1])
                .map(|j| (j as Vertex, bond(j, sizes[i]) as Vertex))
                .collect()
        })
        .collect();
    let marks = levels.clone();
    let mut tower = ComplexTower::from_vertex_maps(levels, maps)?.with_marked_k(marks)?;
    if depth > 1 {
        tower = tower.with_certificate(Certificate::Periodic { offset: 0 })?;
    }
    Ok(tower)
}

fn comb(teeth: usize, depth: usize) -> Result<ComplexTower, CompactohedralError> {
    if teeth < depth + 1 {
        return Err(param(format!("comb needs at least depth + 1 = {} teeth", depth + 1)));
    }
    let h = depth + 1;
    if teeth * (h + 1) + 1 > MAX_GALLERY_VERTICES {
        return Err(param("comb exceeds the vertex limit"));
    }
    let origin: Vertex = 0;
    // tooth n (1-based) at height k
    let v = |n: usize, k: usize| (1 + (n - 1) * (h + 1) + k) as Vertex;
    let mut frame: Vec<Simplex> = Vec::new();
    for n in 1..=teeth {
        frame.extend((0..h).map(|k| Simplex::new([v(n, k), v(n, k + 1)])));
        if n < teeth {
            frame.push(Simplex::new([v(n, h), v(n + 1, h)]));
        }
    }
    frame.push(Simplex::vertex(origin));
    let bottom = |i: usize| -> Vec<Simplex> {
        let mut path = vec![Simplex::new([origin, v(teeth, 0)])];
        path.extend((i + 1..teeth).map(|m| Simplex::new([v(m, 0), v(m + 1, 0)])));
        path
    };
    let mut levels = Vec::new();
    let mut marks = Vec::new();
    for i in 0..depth {
        let path = bottom(i);
        levels.push(SimplicialComplex::from_maximal(frame.iter().cloned().chain(path.iter().cloned())));
        let mut k = path;
        for n in i + 1..=teeth {
            k.extend((0..depth - i).map(|j| Simplex::new([v(n, j), v(n, j + 1)])));
        }
        marks.push(SimplicialComplex::from_maximal(k));
    }
    let identity: BTreeMap<Vertex, Vertex> = levels[0].vertices().into_iter().map(|x| (x, x)).collect();
    let tower = ComplexTower::from_vertex_maps(levels, vec![identity; depth - 1])?
        .with_marked_k(marks)?
        .with_certificate(Certificate::ShiftFamily {
            dimension: 1,
            label: Some(COMB_LIM1_LABEL.to_string()),
        })?;
    Ok(tower)
}

fn boxes(teeth: usize, depth: usize) -> Result<ComplexTower, CompactohedralError> {
    if teeth < depth + 1 {
        return Err(param(format!("example 4.11 needs at least depth + 1 = {} teeth", depth + 1)));
    }
    let h = depth + 1;
    let top = 2 * h;
    if teeth * (top + 1) + 2 > MAX_GALLERY_VERTICES {
        return Err(param("example exceeds the vertex limit"));
    }
    let (low_apex, high_apex): (Vertex, Vertex) = (0, 1);
    let v = |m: usize, k: usize| (2 + (m - 1) * (top + 1) + k) as Vertex;
    let segments: Vec<Simplex> = (1..=teeth)
        .flat_map(|m| (0..top).map(move |k| Simplex::new([v(m, k), v(m, k + 1)])))
        .collect();
    let mut levels = Vec::new();
    let mut marks = Vec::new();
    for i in 0..depth {
        let r = depth - i;
        let mut cones = Vec::new();
        for m in i + 1..=teeth {
            cones.extend((0..r).map(|k| Simplex::new([low_apex, v(m, k), v(m, k + 1)])));
            cones.extend((top - r..top).map(|k| Simplex::new([high_apex, v(m, k), v(m, k + 1)])));
        }
        levels.push(SimplicialComplex::from_maximal(segments.iter().cloned().chain(cones.iter().cloned())));
        marks.push(SimplicialComplex::from_maximal(cones));
    }
    let identity: BTreeMap<Vertex, Vertex> = levels[0].vertices().into_iter().map(|x| (x, x)).collect();
    Ok(ComplexTower::from_vertex_maps(levels, vec![identity; depth - 1])?.with_marked_k(marks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{FGAbelianGroup, IntegerMatrix};
    use crate::compactohedral::induced_l_marks;
    use crate::simplicial::{homology, induced_map};

    #[test]
    fn comb_h1_ranks_drop_by_one() {
        let t = build_gallery(&GalleryFamily::Comb { teeth: 6 }, 3).unwrap();
        for i in 0..3 {
            assert_eq!(homology(t.level(i), 1, false).group(), &FGAbelianGroup::free(5 - i));
            assert!(homology(t.level(i), 0, true).group().is_trivial());
        }
    }

    #[test]
    fn comb_needs_enough_teeth() {
        assert!(build_gallery(&GalleryFamily::Comb { teeth: 3 }, 3).is_err());
        assert!(build_gallery(&GalleryFamily::Comb { teeth: 4 }, 0).is_err());
    }

    #[test]
    fn solenoid_bonds_have_degree_p() {
        let t = build_gallery(&GalleryFamily::Solenoid { p: 2 }, 4).unwrap();
        for i in 0..3 {
            assert_eq!(homology(t.level(i), 1, false).group(), &FGAbelianGroup::free(1));
            let m = induced_map(t.bond(i), 1, false).canonical_matrix();
            assert_eq!(m, IntegerMatrix::from_rows(1, &[[2]]));
        }
        let t3 = build_gallery(&GalleryFamily::Solenoid { p: 3 }, 3).unwrap();
        assert_eq!(induced_map(t3.bond(1), 1, false).canonical_matrix(), IntegerMatrix::from_rows(1, &[[3]]));
    }

    #[test]
    fn warsaw_bonds_have_degree_one() {
        let t = build_gallery(&GalleryFamily::Warsaw, 3).unwrap();
        for i in 0..2 {
            assert_eq!(induced_map(t.bond(i), 1, false).canonical_matrix(), IntegerMatrix::identity(1));
        }
    }

    #[test]
    fn example_boxes_pass_and_have_expected_homology() {
        let t = build_gallery(&GalleryFamily::Example411 { teeth: 4 }, 3).unwrap();
        for i in 0..3 {
            // teeth i+1..=4 form a ladder through the two cones; the others are loose
            assert_eq!(homology(t.level(i), 1, false).group(), &FGAbelianGroup::free(3 - i));
            assert_eq!(homology(t.level(i), 0, false).group(), &FGAbelianGroup::free(1 + i));
        }
    }

    #[test]
    fn gallery_passes_weak_and_pre_variants() {
        for fam in [
            GalleryFamily::Comb { teeth: 5 },
            GalleryFamily::Solenoid { p: 2 },
            GalleryFamily::Warsaw,
            GalleryFamily::Example411 { teeth: 5 },
        ] {
            let t = build_gallery(&fam, 3).unwrap();
            let ls = induced_l_marks(&t).unwrap();
            let t = t.with_marked_l(ls).unwrap();
            for v in [
                Variant::WeaklyCompactohedral,
                Variant::PreCompactohedral,
                Variant::WeaklyPreCompactohedral,
            ] {
                let r = validate(&t, v).unwrap();
                assert!(r.passed(), "{} {v:?}: {r}", fam.name());
            }
        }
    }
}
