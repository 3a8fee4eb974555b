//! Ball covers of finite point samples, their nerves and refinement maps.
//!
//! Distances use the max metric so that every comparison is exact over the
//! rationals. Intersections are witnessed by sample points.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::simplicial::{Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::tower::{ComplexTower, TowerError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("point {point} has {found} coordinates, expected {expected}")]
    Dimension {
        point: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {0} is not covered")]
    Uncovered(usize),
    #[error("the sample is empty")]
    EmptySample,
    #[error("the compactum mark is empty")]
    EmptyMark,
    #[error("index {0} is not a sample point")]
    BadIndex(usize),
    #[error("radius of element {0} is not positive")]
    BadRadius(usize),
    #[error("radius schedule must be positive and strictly decreasing")]
    BadSchedule,
    #[error("fine element {element} lies in no coarse element over the sample")]
    NotRefinement { element: usize },
    #[error(transparent)]
    Tower(#[from] TowerError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSample {
    points: Vec<Vec<BigRational>>,
    compactum_mark: BTreeSet<usize>,
}

impl PointSample {
    pub fn new(points: Vec<Vec<BigRational>>, compactum_mark: impl IntoIterator<Item = usize>) -> Result<Self, NerveError> {
        let dim = points.first().map_or(0, Vec::len);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(NerveError::Dimension {
                    point: i,
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let compactum_mark: BTreeSet<usize> = compactum_mark.into_iter().collect();
        if let Some(&i) = compactum_mark.iter().find(|&&i| i >= points.len()) {
            return Err(NerveError::BadIndex(i));
        }
        Ok(Self {
            points,
            compactum_mark,
        })
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn compactum_mark(&self) -> &BTreeSet<usize> {
        &self.compactum_mark
    }

    /// Max-metric distance between sample points.
    pub fn distance(&self, a: usize, b: usize) -> BigRational {
        self.points[a]
            .iter()
            .zip(&self.points[b])
            .map(|(x, y)| (x - y).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub center: usize,
    pub radius: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BallCover {
    pub elements: Vec<Ball>,
}

impl BallCover {
    pub fn new(elements: Vec<Ball>) -> Self {
        Self { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn check(&self, s: &PointSample) -> Result<(), NerveError> {
        for (i, b) in self.elements.iter().enumerate() {
            if b.center >= s.len() {
                return Err(NerveError::BadIndex(b.center));
            }
            if !b.radius.is_positive() {
                return Err(NerveError::BadRadius(i));
            }
        }
        Ok(())
    }

    /// `r - d(x, c)` for element `e`; nonnegative iff `x` lies in it.
    fn slack(&self, s: &PointSample, e: usize, x: usize) -> BigRational {
        let b = &self.elements[e];
        &b.radius - s.distance(x, b.center)
    }

    pub fn contains(&self, s: &PointSample, e: usize, x: usize) -> bool {
        !self.slack(s, e, x).is_negative()
    }

    /// Sample points lying in element `e`.
    pub fn trace(&self, s: &PointSample, e: usize) -> BTreeSet<usize> {
        (0..s.len()).filter(|&x| self.contains(s, e, x)).collect()
    }

    /// Elements containing sample point `x`.
    pub fn elements_at(&self, s: &PointSample, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.contains(s, e, x)).collect()
    }

    pub fn covers(&self, s: &PointSample) -> Result<(), NerveError> {
        match (0..s.len()).find(|&x| self.elements_at(s, x).is_empty()) {
            Some(x) => Err(NerveError::Uncovered(x)),
            None => Ok(()),
        }
    }
}

/// The largest `λ` such that each sample point `x` has an element `(c, r)`
/// with `d(x, c) + λ ≤ r`.
pub fn lebesgue_number(s: &PointSample, c: &BallCover) -> Result<BigRational, NerveError> {
    c.check(s)?;
    if s.is_empty() {
        return Err(NerveError::EmptySample);
    }
    let mut best: Option<BigRational> = None;
    for x in 0..s.len() {
        let slack = (0..c.len())
            .map(|e| c.slack(s, e, x))
            .max()
            .filter(|v| !v.is_negative())
            .ok_or(NerveError::Uncovered(x))?;
        if best.as_ref().is_none_or(|b| slack < *b) {
            best = Some(slack);
        }
    }
    Ok(best.expect("sample is nonempty"))
}

/// One vertex per element; a simplex for every set of elements sharing a
/// sample point.
pub fn nerve(c: &BallCover, s: &PointSample) -> SimplicialComplex {
    let mut maximal: Vec<Simplex> = (0..c.len()).map(|e| Simplex::vertex(e as Vertex)).collect();
    for x in 0..s.len() {
        let at = c.elements_at(s, x);
        if !at.is_empty() {
            maximal.push(Simplex::new(at.into_iter().map(|e| e as Vertex)));
        }
    }
    SimplicialComplex::from_maximal(maximal)
}

/// Sends each fine element to the first coarse element whose trace contains
/// its trace.
pub fn refinement_map(fine: &BallCover, coarse: &BallCover, s: &PointSample) -> Result<SimplicialMap, NerveError> {
    fine.check(s)?;
    coarse.check(s)?;
    let coarse_traces: Vec<BTreeSet<usize>> = (0..coarse.len()).map(|e| coarse.trace(s, e)).collect();
    let mut map = BTreeMap::new();
    for e in 0..fine.len() {
        let t = fine.trace(s, e);
        let target = coarse_traces
            .iter()
            .position(|ct| t.is_subset(ct))
            .ok_or(NerveError::NotRefinement { element: e })?;
        map.insert(e as Vertex, target as Vertex);
    }
    Ok(SimplicialMap::new(nerve(fine, s), nerve(coarse, s), map)
        .expect("refinements of sample traces are simplicial on witnessed nerves"))
}

/// Level `i` covers the sample by balls of radius `schedule[i]` about the
/// marked points followed by the fixed cover; bonds are refinement maps.
pub fn cech_tower(s: &PointSample, schedule: &[BigRational], fixed: &BallCover) -> Result<ComplexTower, NerveError> {
    if s.compactum_mark().is_empty() {
        return Err(NerveError::EmptyMark);
    }
    if schedule.is_empty()
        || schedule.iter().any(|r| !r.is_positive())
        || schedule.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(NerveError::BadSchedule);
    }
    fixed.check(s)?;
    let covers: Vec<BallCover> = schedule
        .iter()
        .map(|r| {
            let mut elements: Vec<Ball> = s
                .compactum_mark()
                .iter()
                .map(|&c| Ball {
                    center: c,
                    radius: r.clone(),
                })
                .collect();
            elements.extend(fixed.elements.iter().cloned());
            BallCover::new(elements)
        })
        .collect();
    for c in &covers {
        c.covers(s)?;
    }
    let levels: Vec<SimplicialComplex> = covers.iter().map(|c| nerve(c, s)).collect();
    let maps = covers
        .windows(2)
        .map(|w| refinement_map(&w[1], &w[0], s).map(|f| f.vertex_map().clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ComplexTower::from_vertex_maps(levels, maps)?)
}
