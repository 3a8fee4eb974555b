use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::smith::{smith_tracked, Track};
use super::{AbelianError, IntegerMatrix};

/// Generators and relations: the group `Z^generators / rowspace(relations)`.
///
/// Each row of `relations` is one relation, written against the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub generators: usize,
    pub relations: IntegerMatrix,
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k`
/// with `t_1 | t_2 | … | t_k`, all `t_i ≥ 2`, together with the presentation
/// it was computed from.
///
/// Elements are handled in *presentation coordinates* (integer vectors of
/// length `generators`). The canonical coordinates list the torsion
/// components first, then the free ones.
#[derive(Clone)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
    presentation: Presentation,
    to_canonical: IntegerMatrix,
    from_canonical: IntegerMatrix,
}

impl FGAbelianGroup {
    /// The group with the given invariants, presented canonically.
    pub fn from_invariants(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbelianError> {
        if torsion.iter().any(|t| t < &BigInt::from(2)) {
            return Err(AbelianError::InvalidInvariants(
                "torsion coefficients must be at least 2".into(),
            ));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(AbelianError::InvalidInvariants(
                "torsion coefficients must form a divisibility chain".into(),
            ));
        }
        let k = torsion.len() + free_rank;
        let relations = IntegerMatrix::diagonal(torsion.len(), k, &torsion);
        Ok(Self {
            free_rank,
            torsion,
            presentation: Presentation {
                generators: k,
                relations,
            },
            to_canonical: IntegerMatrix::identity(k),
            from_canonical: IntegerMatrix::identity(k),
        })
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        Self::from_invariants(rank, Vec::new()).expect("free group invariants are valid")
    }

    /// `Z/n` (trivial for `n = ±1`, `Z` for `n = 0`).
    pub fn cyclic(n: i64) -> Self {
        canonicalize_presentation(1, &IntegerMatrix::from_rows(1, &[[n]]))
            .expect("one generator, one column")
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> usize {
        self.presentation.generators
    }

    /// Number of canonical generators (torsion plus free).
    pub fn canonical_rank(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    /// `k × generators` matrix taking presentation coordinates to canonical ones
    /// (before reduction modulo torsion).
    pub fn to_canonical(&self) -> &IntegerMatrix {
        &self.to_canonical
    }

    /// `generators × k` matrix whose columns represent the canonical generators.
    pub fn from_canonical(&self) -> &IntegerMatrix {
        &self.from_canonical
    }

    /// Reduces canonical coordinates in place: torsion components modulo their order.
    pub fn reduce_canonical(&self, coords: &mut [BigInt]) {
        for (c, t) in coords.iter_mut().zip(&self.torsion) {
            *c = c.mod_floor(t);
        }
    }

    /// Canonical coordinates of an element given in presentation coordinates.
    pub fn canonical_coords(&self, element: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.to_canonical.apply(element);
        self.reduce_canonical(&mut c);
        c
    }

    pub fn is_zero_element(&self, element: &[BigInt]) -> bool {
        self.canonical_coords(element).iter().all(Zero::is_zero)
    }

    /// The same group with its canonical presentation.
    pub fn canonical(&self) -> FGAbelianGroup {
        Self::from_invariants(self.free_rank, self.torsion.clone())
            .expect("invariants of an existing group are valid")
    }

    /// Replaces canonical generator `k` by its negative.
    pub(crate) fn negate_canonical_generator(&mut self, k: usize) {
        self.to_canonical.negate_row(k);
        self.from_canonical.negate_col(k);
    }

    /// Relation lattice of the canonical presentation, one column per torsion
    /// coefficient.
    pub(crate) fn canonical_relation_columns(&self) -> IntegerMatrix {
        IntegerMatrix::diagonal(self.canonical_rank(), self.torsion.len(), &self.torsion)
    }
}

/// Canonical form of `Z^generators / rowspace(relations)`.
pub fn canonicalize_presentation(
    generators: usize,
    relations: &IntegerMatrix,
) -> Result<FGAbelianGroup, AbelianError> {
    if relations.cols() != generators {
        return Err(AbelianError::DimensionMismatch {
            expected: generators,
            found: relations.cols(),
            what: "relation matrix columns",
        });
    }
    let snf = smith_tracked(
        relations,
        Track {
            left: false,
            right: true,
        },
    );
    let rank = snf.rank();
    let mut torsion_idx = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..rank {
        let d = &snf.d[(i, i)];
        if !d.is_one() {
            torsion_idx.push(i);
            torsion.push(d.abs());
        }
    }
    let free_idx: Vec<usize> = (rank..generators).collect();
    let idx: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
    // x ↦ x·V carries the relation lattice onto rowspace(D).
    let to_canonical = snf.v.select_cols(&idx).transpose();
    let from_canonical = snf.v_inv.select_rows(&idx).transpose();
    Ok(FGAbelianGroup {
        free_rank: free_idx.len(),
        torsion,
        presentation: Presentation {
            generators,
            relations: relations.clone(),
        },
        to_canonical,
        from_canonical,
    })
}

impl PartialEq for FGAbelianGroup {
    /// Isomorphism type equality; presentations are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

impl Eq for FGAbelianGroup {}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGAbelianGroup({self})")
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homomorphism given by its action on presentation generators: column `j`
/// of `matrix` is the image of source generator `j` in target generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntegerMatrix,
}

impl GroupHom {
    /// Checks shape and that every source relation lands in the target's
    /// relation lattice.
    pub fn new(
        source: FGAbelianGroup,
        target: FGAbelianGroup,
        matrix: IntegerMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(AbelianError::DimensionMismatch {
                expected: target.generators() * source.generators(),
                found: matrix.rows() * matrix.cols(),
                what: "homomorphism matrix entries",
            });
        }
        let rels = &source.presentation.relations;
        for r in 0..rels.rows() {
            let image = matrix.apply(rels.row(r));
            if !target.is_zero_element(&image) {
                return Err(AbelianError::NotWellDefined { relation: r });
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    /// Builds a hom from its matrix in canonical coordinates.
    pub fn from_canonical_matrix(
        source: FGAbelianGroup,
        target: FGAbelianGroup,
        canonical: &IntegerMatrix,
    ) -> Result<Self, AbelianError> {
        if canonical.rows() != target.canonical_rank() || canonical.cols() != source.canonical_rank()
        {
            return Err(AbelianError::DimensionMismatch {
                expected: target.canonical_rank() * source.canonical_rank(),
                found: canonical.rows() * canonical.cols(),
                what: "canonical homomorphism matrix entries",
            });
        }
        let matrix = target
            .from_canonical()
            .mul(canonical)
            .mul(source.to_canonical());
        Self::new(source, target, matrix)
    }

    pub fn identity(group: &FGAbelianGroup) -> Self {
        Self {
            source: group.clone(),
            target: group.clone(),
            matrix: IntegerMatrix::identity(group.generators()),
        }
    }

    pub fn zero(source: &FGAbelianGroup, target: &FGAbelianGroup) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix: IntegerMatrix::zeros(target.generators(), source.generators()),
        }
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    /// Matrix against canonical generators, torsion rows reduced.
    pub fn canonical_matrix(&self) -> IntegerMatrix {
        let mut m = self
            .target
            .to_canonical()
            .mul(&self.matrix)
            .mul(self.source.from_canonical());
        for (i, t) in self.target.torsion().iter().enumerate() {
            for x in m.row_mut(i) {
                *x = x.mod_floor(t);
            }
        }
        m
    }

    /// Image of an element given in source presentation coordinates, in target
    /// presentation coordinates.
    pub fn apply(&self, element: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply(element)
    }

    /// Equality as homomorphisms: same groups (by presentation) and equal action.
    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.source.presentation == other.source.presentation
            && self.target.presentation == other.target.presentation
            && self.canonical_matrix() == other.canonical_matrix()
    }

    /// Same map in canonical coordinates, ignoring presentations.
    pub fn with_canonical_groups(&self) -> GroupHom {
        GroupHom {
            source: self.source.canonical(),
            target: self.target.canonical(),
            matrix: self.canonical_matrix(),
        }
    }
}

/// `g ∘ f`. Requires `f.target` and `g.source` to be the same presented group.
pub fn compose_homs(g: &GroupHom, f: &GroupHom) -> Result<GroupHom, AbelianError> {
    if f.target != g.source || f.target.presentation != g.source.presentation {
        return Err(AbelianError::Incompatible(format!(
            "cannot compose: {} is not the source {}",
            f.target, g.source
        )));
    }
    GroupHom::new(
        f.source.clone(),
        g.target.clone(),
        g.matrix.mul(&f.matrix),
    )
}
