//! Boundary matrices, (co)homology and induced homomorphisms.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::complex::{Simplex, SimplicialComplex};
use super::map::SimplicialMap;
use crate::abelian::{
    canonicalize_presentation, smith_tracked, FGAbelianGroup, GroupHom, IntegerMatrix, Track,
};

/// `∂_n`: rows indexed by `(n-1)`-simplexes, columns by `n`-simplexes, both in
/// lexicographic order. `∂_0` has no rows.
pub fn boundary_matrix(k: &SimplicialComplex, n: usize) -> IntegerMatrix {
    let cols = k.simplices_of_dim(n);
    if n == 0 {
        return IntegerMatrix::zeros(0, cols.len());
    }
    let rows = k.simplices_of_dim(n - 1);
    let index: HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (face, sign) in s.boundary() {
            let i = index[&face];
            m[(i, j)] = BigInt::from(sign);
        }
    }
    m
}

/// The augmentation `C_0 → Z` as a one-row matrix.
fn augmentation(k: &SimplicialComplex) -> IntegerMatrix {
    let n = k.count_of_dim(0);
    IntegerMatrix::from_vec(1, n, vec![BigInt::from(1); n])
}

/// A (co)homology group together with the data needed to compute induced maps.
#[derive(Clone, Debug)]
pub struct HomologyResult {
    group: FGAbelianGroup,
    /// Chain-level basis of the degree in question.
    basis: Vec<Simplex>,
    /// Kernel basis, one column per presentation generator.
    cycles: IntegerMatrix,
    /// Left inverse of `cycles` on the kernel: chain ↦ cycle coordinates.
    cycle_coords: IntegerMatrix,
}

impl HomologyResult {
    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    /// The simplexes indexing chain coordinates.
    pub fn basis(&self) -> &[Simplex] {
        &self.basis
    }

    /// One integral (co)cycle per canonical generator, in chain coordinates.
    pub fn cycle_representatives(&self) -> Vec<Vec<BigInt>> {
        let reps = self.cycles.mul(self.group.from_canonical());
        (0..reps.cols()).map(|j| reps.column_vec(j)).collect()
    }

    /// Canonical coordinates of the class of a (co)cycle.
    pub fn class_of(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let coords = self.cycle_coords.apply(cycle);
        self.group.canonical_coords(&coords)
    }

    /// Kernel of `outgoing` modulo image of `incoming`.
    fn subquotient(
        outgoing: &IntegerMatrix,
        incoming: &IntegerMatrix,
        basis: Vec<Simplex>,
    ) -> Self {
        let snf = smith_tracked(
            outgoing,
            Track {
                left: false,
                right: true,
            },
        );
        let r = snf.rank();
        let n = outgoing.cols();
        let kernel_idx: Vec<usize> = (r..n).collect();
        let cycles = snf.v.select_cols(&kernel_idx);
        let cycle_coords = snf.v_inv.select_rows(&kernel_idx);
        let relations = cycle_coords.mul(incoming).transpose();
        let mut group = canonicalize_presentation(kernel_idx.len(), &relations)
            .expect("relations are written against the kernel basis");
        // Sign convention: each representative's first nonzero entry is positive.
        let reps = cycles.mul(group.from_canonical());
        for j in 0..reps.cols() {
            let first = (0..reps.rows()).map(|i| &reps[(i, j)]).find(|x| !x.is_zero());
            if first.is_some_and(|x| x.is_negative()) {
                group.negate_canonical_generator(j);
            }
        }
        Self {
            group,
            basis,
            cycles,
            cycle_coords,
        }
    }
}

/// `H_n(K)`, or reduced homology when `reduced` is set (only affects `n = 0`).
pub fn homology(k: &SimplicialComplex, n: usize, reduced: bool) -> HomologyResult {
    let outgoing = if n == 0 && reduced {
        augmentation(k)
    } else {
        boundary_matrix(k, n)
    };
    let incoming = boundary_matrix(k, n + 1);
    HomologyResult::subquotient(&outgoing, &incoming, k.simplices_of_dim(n))
}

/// `H^n(K)` with its cocycle data; `δ^n` is the transpose of `∂_{n+1}`.
pub fn cohomology_result(k: &SimplicialComplex, n: usize) -> HomologyResult {
    let outgoing = boundary_matrix(k, n + 1).transpose();
    let incoming = boundary_matrix(k, n).transpose();
    HomologyResult::subquotient(&outgoing, &incoming, k.simplices_of_dim(n))
}

pub fn cohomology(k: &SimplicialComplex, n: usize) -> FGAbelianGroup {
    cohomology_result(k, n).group
}

/// `f_*: H_n(source) → H_n(target)` given both homology results.
pub fn induced_homology_map(
    f: &SimplicialMap,
    n: usize,
    source: &HomologyResult,
    target: &HomologyResult,
) -> GroupHom {
    let chain = f.chain_matrix(n);
    let matrix = target
        .cycle_coords
        .mul(&chain.mul(&source.cycles));
    GroupHom::new(source.group.clone(), target.group.clone(), matrix)
        .expect("chain maps carry boundaries to boundaries")
}

/// `f^*: H^n(target) → H^n(source)` given both cohomology results.
pub fn induced_cohomology_map(
    f: &SimplicialMap,
    n: usize,
    source: &HomologyResult,
    target: &HomologyResult,
) -> GroupHom {
    let cochain = f.chain_matrix(n).transpose();
    let matrix = source
        .cycle_coords
        .mul(&cochain.mul(&target.cycles));
    GroupHom::new(target.group.clone(), source.group.clone(), matrix)
        .expect("cochain maps carry coboundaries to coboundaries")
}

/// `f_*` on `H_n` (reduced homology in degree 0 when `reduced` is set).
pub fn induced_map(f: &SimplicialMap, n: usize, reduced: bool) -> GroupHom {
    let hs = homology(f.source(), n, reduced);
    let ht = homology(f.target(), n, reduced);
    induced_homology_map(f, n, &hs, &ht)
}
