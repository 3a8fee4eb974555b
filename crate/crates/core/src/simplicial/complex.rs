use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// Vertices are nonnegative integers; their numeric order fixes orientations.
pub type Vertex = u32;

/// A nonempty set of vertices, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSimplex", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

#[derive(Deserialize)]
#[serde(transparent)]
struct RawSimplex(Vec<Vertex>);

impl TryFrom<RawSimplex> for Simplex {
    type Error = &'static str;

    fn try_from(raw: RawSimplex) -> Result<Self, Self::Error> {
        if raw.0.is_empty() {
            return Err("a simplex needs at least one vertex");
        }
        Ok(Simplex::new(raw.0))
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl Simplex {
    /// Sorts and deduplicates. Panics on an empty vertex list.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        assert!(!v.is_empty(), "a simplex needs at least one vertex");
        Simplex(v)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// Codimension-one faces with their boundary signs: removing the vertex at
    /// position `i` contributes `(-1)^i`.
    pub fn boundary(&self) -> impl Iterator<Item = (Simplex, i64)> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (Simplex(v), if i % 2 == 0 { 1 } else { -1 })
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..=self.0.len()).flat_map(move |k| {
            self.0
                .iter()
                .copied()
                .combinations(k)
                .map(Simplex)
        })
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::new(self.0.iter().chain(&other.0).copied())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// A finite abstract simplicial complex.
///
/// Constructors other than [`SimplicialComplex::from_simplices_unchecked`]
/// close the given simplexes under faces.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

/// First face-closure failure found by [`validate_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexViolation {
    pub simplex: Simplex,
    pub missing_face: Simplex,
}

impl fmt::Display for ComplexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "simplex {} is missing its face {}",
            self.simplex, self.missing_face
        )
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The face closure of the given simplexes.
    pub fn from_maximal<I, S>(simplices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Simplex>,
    {
        let mut set = BTreeSet::new();
        for s in simplices {
            let s: Simplex = s.into();
            if set.contains(&s) {
                continue;
            }
            set.extend(s.faces());
        }
        Self { simplices: set }
    }

    /// Takes the simplexes as given, without closing under faces. Use
    /// [`validate_complex`] to check the result.
    pub fn from_simplices_unchecked(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        Self {
            simplices: simplices.into_iter().collect(),
        }
    }

    /// The full simplex on the given vertices.
    pub fn simplex(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        Self::from_maximal([Simplex::new(vertices)])
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices
            .iter()
            .map(|s| s.dim() as isize)
            .max()
            .unwrap_or(-1)
    }

    /// The `n`-simplexes in lexicographic order.
    pub fn simplices_of_dim(&self, n: usize) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| s.dim() == n)
            .cloned()
            .collect()
    }

    pub fn count_of_dim(&self, n: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim() == n).count()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dim();
        if d < 0 {
            return Vec::new();
        }
        (0..=d as usize).map(|n| self.count_of_dim(n)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Simplexes not properly contained in another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.dim() > s.dim() && s.is_face_of(t))
            })
            .cloned()
            .collect()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// The full subcomplex spanned by the given vertices.
    pub fn full_subcomplex(&self, vertices: &BTreeSet<Vertex>) -> SimplicialComplex {
        Self {
            simplices: self
                .simplices
                .iter()
                .filter(|s| s.vertices().iter().all(|v| vertices.contains(v)))
                .cloned()
                .collect(),
        }
    }

    /// Simplexes containing `s` (including `s`).
    pub fn star_of(&self, s: &Simplex) -> impl Iterator<Item = &Simplex> + '_ {
        let s = s.clone();
        self.simplices.iter().filter(move |t| s.is_face_of(t))
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self {
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        }
    }

    /// Cone with the given apex, which must not be a vertex already.
    pub fn cone(&self, apex: Vertex) -> SimplicialComplex {
        let mut simplices = self.simplices.clone();
        simplices.insert(Simplex::vertex(apex));
        for s in &self.simplices {
            simplices.insert(s.union(&Simplex::vertex(apex)));
        }
        Self { simplices }
    }

    pub(crate) fn insert_closed(&mut self, s: &Simplex) {
        if !self.simplices.contains(s) {
            self.simplices.extend(s.faces());
        }
    }
}

impl From<Vec<Vertex>> for Simplex {
    fn from(v: Vec<Vertex>) -> Self {
        Simplex::new(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for Simplex {
    fn from(v: [Vertex; N]) -> Self {
        Simplex::new(v)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex({})",
            self.maximal_simplices().iter().join(" ")
        )
    }
}

/// Checks closure under faces; returns the first offending simplex.
pub fn validate_complex(k: &SimplicialComplex) -> Result<(), ComplexViolation> {
    for s in k.iter() {
        for (face, _) in s.boundary() {
            if !k.contains(&face) {
                return Err(ComplexViolation {
                    simplex: s.clone(),
                    missing_face: face,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_triangle_is_valid() {
        let k = SimplicialComplex::simplex([0, 1, 2]);
        assert_eq!(k.len(), 7);
        assert!(validate_complex(&k).is_ok());
    }

    #[test]
    fn edge_without_vertices_names_the_edge() {
        let k = SimplicialComplex::from_simplices_unchecked([Simplex::new([0, 1])]);
        let v = validate_complex(&k).unwrap_err();
        assert_eq!(v.simplex, Simplex::new([0, 1]));
    }

    #[test]
    fn empty_complex_is_valid() {
        assert!(validate_complex(&SimplicialComplex::empty()).is_ok());
        assert_eq!(SimplicialComplex::empty().dim(), -1);
    }

    #[test]
    fn boundary_signs_alternate() {
        let faces: Vec<_> = Simplex::new([3, 5, 9]).boundary().collect();
        assert_eq!(
            faces,
            vec![
                (Simplex::new([5, 9]), 1),
                (Simplex::new([3, 9]), -1),
                (Simplex::new([3, 5]), 1)
            ]
        );
    }

    #[test]
    fn full_subcomplex_and_cone() {
        let k = SimplicialComplex::from_maximal([[0, 1], [1, 2], [2, 0]]);
        let sub = k.full_subcomplex(&[0, 1].into_iter().collect());
        assert_eq!(sub.maximal_simplices(), vec![Simplex::new([0, 1])]);
        let c = k.cone(7);
        assert_eq!(c.euler_characteristic(), 1);
    }
}
