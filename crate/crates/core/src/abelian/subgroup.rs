//! Subgroups of finitely generated abelian groups, in canonical coordinates.
//!
//! Equality and containment are decided by solving integer linear systems
//! against `[generators | relation lattice]`.

use num_bigint::BigInt;

use super::group::{canonicalize_presentation, FGAbelianGroup, GroupHom};
use super::smith::smith_normal_form;
use super::IntegerMatrix;

/// The subgroup of `ambient` generated by the columns of `generators`
/// (canonical coordinates of `ambient`).
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FGAbelianGroup,
    generators: IntegerMatrix,
}

impl Subgroup {
    pub fn new(ambient: FGAbelianGroup, generators: IntegerMatrix) -> Self {
        assert_eq!(
            generators.rows(),
            ambient.canonical_rank(),
            "generators must be written in canonical coordinates"
        );
        Self {
            ambient,
            generators,
        }
    }

    pub fn whole(ambient: &FGAbelianGroup) -> Self {
        let k = ambient.canonical_rank();
        Self::new(ambient.clone(), IntegerMatrix::identity(k))
    }

    pub fn zero(ambient: &FGAbelianGroup) -> Self {
        let k = ambient.canonical_rank();
        Self::new(ambient.clone(), IntegerMatrix::zeros(k, 0))
    }

    pub fn ambient(&self) -> &FGAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &IntegerMatrix {
        &self.generators
    }

    fn with_relations(&self) -> IntegerMatrix {
        self.generators
            .hstack(&self.ambient.canonical_relation_columns())
    }

    /// Coefficients expressing `element` in the subgroup generators, if it lies
    /// in the subgroup.
    pub fn express(&self, element: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.generators.cols();
        let snf = smith_normal_form(&self.with_relations());
        snf.solve(element).map(|mut x| {
            x.truncate(m);
            x
        })
    }

    pub fn contains_element(&self, element: &[BigInt]) -> bool {
        self.express(element).is_some()
    }

    pub fn contains(&self, other: &Subgroup) -> bool {
        debug_assert_eq!(self.ambient, other.ambient);
        let snf = smith_normal_form(&self.with_relations());
        (0..other.generators.cols()).all(|j| snf.solve(&other.generators.column_vec(j)).is_some())
    }

    /// Mutual containment.
    pub fn equals(&self, other: &Subgroup) -> bool {
        self.contains(other) && other.contains(self)
    }

    /// Image under `f`, which must have this subgroup's ambient as source.
    pub fn image(&self, f: &GroupHom) -> Subgroup {
        let mut gens = f.canonical_matrix().mul(&self.generators);
        for j in 0..gens.cols() {
            let mut col = gens.column_vec(j);
            f.target().reduce_canonical(&mut col);
            for (i, x) in col.into_iter().enumerate() {
                gens[(i, j)] = x;
            }
        }
        Subgroup::new(f.target().canonical(), gens)
    }

    /// The subgroup as an abstract group, presented on its generators.
    pub fn as_group(&self) -> FGAbelianGroup {
        let m = self.generators.cols();
        let snf = smith_normal_form(&self.with_relations());
        let kernel = snf.kernel_basis();
        let rows: Vec<usize> = (0..m).collect();
        let relations = kernel.select_rows(&rows).transpose();
        canonicalize_presentation(m, &relations).expect("relation width equals generator count")
    }
}

impl GroupHom {
    pub fn image_subgroup(&self) -> Subgroup {
        Subgroup::whole(&self.source().canonical()).image(self)
    }

    pub fn is_surjective(&self) -> bool {
        self.image_subgroup()
            .equals(&Subgroup::whole(&self.target().canonical()))
    }

    /// Injective iff the image is isomorphic to the source (f.g. abelian groups
    /// are Hopfian).
    pub fn is_injective(&self) -> bool {
        &self.image_subgroup().as_group() == self.source()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source() == self.target() && self.is_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_integers() {
        let z = FGAbelianGroup::free(1);
        let two = Subgroup::new(z.clone(), IntegerMatrix::from_rows(1, &[[2]]));
        let four = Subgroup::new(z.clone(), IntegerMatrix::from_rows(1, &[[4]]));
        assert!(two.contains(&four));
        assert!(!four.contains(&two));
        assert_eq!(two.as_group(), FGAbelianGroup::free(1));
        let six_and_four = Subgroup::new(z, IntegerMatrix::from_rows(2, &[[6, 4]]));
        assert!(six_and_four.equals(&two));
    }

    #[test]
    fn subgroup_of_torsion() {
        let g = FGAbelianGroup::cyclic(6);
        let h = Subgroup::new(g.clone(), IntegerMatrix::from_rows(1, &[[2]]));
        assert_eq!(h.as_group(), FGAbelianGroup::cyclic(3));
        let h8 = Subgroup::new(g, IntegerMatrix::from_rows(1, &[[8]]));
        assert!(h.equals(&h8));
    }

    #[test]
    fn hom_predicates() {
        let z = FGAbelianGroup::free(1);
        let double = GroupHom::new(z.clone(), z.clone(), IntegerMatrix::from_rows(1, &[[2]])).unwrap();
        assert!(double.is_injective());
        assert!(!double.is_surjective());
        let z6 = FGAbelianGroup::cyclic(6);
        let five = GroupHom::new(z6.clone(), z6.clone(), IntegerMatrix::from_rows(1, &[[5]])).unwrap();
        assert!(five.is_isomorphism());
        let three = GroupHom::new(z6.clone(), z6, IntegerMatrix::from_rows(1, &[[3]])).unwrap();
        assert!(!three.is_injective());
    }
}
