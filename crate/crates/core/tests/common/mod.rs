//! Fixtures and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use steenrod::abelian::IntegerMatrix;
use steenrod::nerve::{Ball, BallCover, PointSample};
use steenrod::simplicial::{Simplex, SimplicialComplex, SimplicialMap, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hollow_triangle() -> SimplicialComplex {
    SimplicialComplex::from_maximal([[0, 1], [1, 2], [0, 2]])
}

/// The seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    SimplicialComplex::from_maximal((0..7u32).flat_map(|i| {
        [
            [i, (i + 1) % 7, (i + 3) % 7],
            [i, (i + 2) % 7, (i + 3) % 7],
        ]
    }))
}

/// The six-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ])
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntegerMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntegerMatrix::from_vec(rows, cols, data)
}

/// A complex on at most `max_vertices` vertices with maximal simplexes of
/// dimension at most 3.
pub fn random_complex(rng: &mut ChaCha8Rng, max_vertices: u32) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let verts: Vec<Vertex> = (0..n).collect();
    let count = rng.gen_range(1..=8);
    let mut maximal: Vec<Simplex> = verts.iter().map(|&v| Simplex::vertex(v)).collect();
    for _ in 0..count {
        let size = rng.gen_range(1..=4.min(n as usize));
        let chosen: Vec<Vertex> = verts.choose_multiple(rng, size).copied().collect();
        maximal.push(Simplex::new(chosen));
    }
    SimplicialComplex::from_maximal(maximal)
}

/// A random simplicial map out of `k` into a complex built to contain the
/// image, padded with a few random simplexes.
pub fn random_map_from(rng: &mut ChaCha8Rng, k: &SimplicialComplex, max_vertices: u32) -> SimplicialMap {
    let n = rng.gen_range(1..=max_vertices);
    let vm: BTreeMap<Vertex, Vertex> = k.vertices().into_iter().map(|v| (v, rng.gen_range(0..n))).collect();
    let mut target: Vec<Simplex> = k.maximal_simplices().iter().map(|s| Simplex::new(s.vertices().iter().map(|v| vm[v]))).collect();
    target.extend((0..n).map(Simplex::vertex));
    let extra = random_complex(rng, n);
    target.extend(extra.maximal_simplices());
    SimplicialMap::new(k.clone(), SimplicialComplex::from_maximal(target), vm).expect("built to be simplicial")
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Up to `max_points` distinct lattice points in `[0, 20]^2`, all marked.
pub fn random_planar_sample(rng: &mut ChaCha8Rng, max_points: usize) -> PointSample {
    let n = rng.gen_range(2..=max_points);
    let mut seen = BTreeSet::new();
    while seen.len() < n {
        seen.insert((rng.gen_range(0..=20i64), rng.gen_range(0..=20i64)));
    }
    let pts = seen.into_iter().map(|(x, y)| vec![q(x, 1), q(y, 1)]).collect();
    PointSample::new(pts, 0..n).unwrap()
}

/// Balls of random radius about random points, extended by unit balls about
/// any point left uncovered.
pub fn random_cover(rng: &mut ChaCha8Rng, s: &PointSample) -> BallCover {
    let count = rng.gen_range(1..=s.len());
    let mut elements: Vec<Ball> = (0..count)
        .map(|_| Ball {
            center: rng.gen_range(0..s.len()),
            radius: q(rng.gen_range(1..=24), 2),
        })
        .collect();
    for x in 0..s.len() {
        let c = BallCover::new(elements.clone());
        if c.elements_at(s, x).is_empty() {
            elements.push(Ball { center: x, radius: q(1, 1) });
        }
    }
    BallCover::new(elements)
}
