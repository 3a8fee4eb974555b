mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use steenrod::abelian::{smith_normal_form, FGAbelianGroup, GroupHom, IntegerMatrix};
use steenrod::cli::document::{
    ComplexPayload, CoverPayload, DocumentEnvelope, GroupTowerPayload, Payload, PointSamplePayload,
};
use steenrod::nerve::{Ball, BallCover, PointSample};
use steenrod::simplicial::{homology, Simplex, SimplicialComplex};
use steenrod::tower::GroupTower;

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..9, 1..=4), 1..8)
        .prop_map(|sets| SimplicialComplex::from_maximal(sets.into_iter().map(Simplex::new)))
}

fn matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-20i64..=20, r * c)
            .prop_map(move |v| IntegerMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn round_trips(p: Payload) -> bool {
    let d = DocumentEnvelope::new(p);
    DocumentEnvelope::from_json(&d.to_json()).as_ref() == Ok(&d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_documents_round_trip(k in complex()) {
        let p = ComplexPayload::from_complex(&k);
        prop_assert_eq!(p.to_complex(), k);
        prop_assert!(round_trips(Payload::Complex(p)));
    }

    #[test]
    fn sample_and_cover_documents_round_trip(
        pts in prop::collection::vec(prop::collection::vec(rational(), 2), 1..10),
        radii in prop::collection::vec(rational(), 1..5),
    ) {
        let n = pts.len();
        let s = PointSample::new(pts, [0]).unwrap();
        prop_assert!(round_trips(Payload::PointSample(PointSamplePayload::from_sample(&s))));
        let c = BallCover::new(radii.into_iter().enumerate().map(|(i, r)| Ball { center: i % n, radius: r }).collect());
        prop_assert!(round_trips(Payload::Cover(CoverPayload::from_cover(&c))));
    }

    #[test]
    fn periodic_group_tower_documents_round_trip(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
        let g = FGAbelianGroup::free(2);
        let m = IntegerMatrix::from_rows(2, &[[a, b], [c, d]]);
        let t = GroupTower::periodic(&GroupHom::new(g.clone(), g, m).unwrap()).unwrap();
        let p = GroupTowerPayload::from_tower(&t);
        prop_assert_eq!(GroupTowerPayload::from_tower(&p.to_tower().unwrap()), p.clone());
        prop_assert!(round_trips(Payload::GroupTower(p)));
    }

    #[test]
    fn smith_form_reconstructs(m in matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(m.cols()));
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(k in complex()) {
        let top = usize::try_from(k.dim()).unwrap_or(0);
        let alt: i64 = (0..=top)
            .map(|n| {
                let b = homology(&k, n, false).group().free_rank() as i64;
                if n % 2 == 0 { b } else { -b }
            })
            .sum();
        prop_assert_eq!(alt, k.euler_characteristic());
    }
}
