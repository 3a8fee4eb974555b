//! Towers of finitely generated abelian groups: Mittag-Leffler analysis,
//! limits, lim¹ classification and colimits of direct systems.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::charpoly::{characteristic_polynomial, unit_part_degree, MAX_UNIT_SEARCH_DEGREE};
use super::TowerError;
use crate::abelian::{
    canonicalize_presentation, rank, FGAbelianGroup, GroupHom, IntegerMatrix, Subgroup,
};

/// What a tower is known to do beyond its stored levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupCertificate {
    /// Levels and bonds from `offset` on all agree (in canonical coordinates),
    /// and the tower repeats them forever.
    Periodic { offset: usize },
    /// Free levels with injective bonds whose cokernels are `Z`: the truncation
    /// of the shift inclusions `… ⊂ ⊕_{i≥2} Z ⊂ ⊕_{i≥1} Z`.
    ShiftFamily { label: Option<String> },
}

/// `levels[0] ← levels[1] ← …`, with `bonds[i]: levels[i+1] → levels[i]`.
#[derive(Clone, Debug)]
pub struct GroupTower {
    levels: Vec<FGAbelianGroup>,
    bonds: Vec<GroupHom>,
    certificate: Option<GroupCertificate>,
    canon_levels: Vec<FGAbelianGroup>,
    canon_bonds: Vec<IntegerMatrix>,
}

fn reduce_columns(m: &mut IntegerMatrix, g: &FGAbelianGroup) {
    for j in 0..m.cols() {
        let mut col = m.column_vec(j);
        g.reduce_canonical(&mut col);
        for (i, x) in col.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
}

/// Image of `s` under the endomorphism-or-not given by a canonical matrix.
fn push(s: &Subgroup, matrix: &IntegerMatrix, target: &FGAbelianGroup) -> Subgroup {
    let mut gens = matrix.mul(s.generators());
    reduce_columns(&mut gens, target);
    Subgroup::new(target.clone(), gens)
}

impl GroupTower {
    pub fn new(
        levels: Vec<FGAbelianGroup>,
        bonds: Vec<GroupHom>,
        certificate: Option<GroupCertificate>,
    ) -> Result<Self, TowerError> {
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
            let src = &levels[i + 1];
            let tgt = &levels[i];
            if b.source() != src || b.source().presentation() != src.presentation() {
                return Err(TowerError::BondMismatch {
                    index: i,
                    reason: format!("source {} is not level {}", b.source(), i + 1),
                });
            }
            if b.target() != tgt || b.target().presentation() != tgt.presentation() {
                return Err(TowerError::BondMismatch {
                    index: i,
                    reason: format!("target {} is not level {}", b.target(), i),
                });
            }
        }
        let canon_levels = levels.iter().map(FGAbelianGroup::canonical).collect();
        let canon_bonds = bonds.iter().map(GroupHom::canonical_matrix).collect();
        let tower = Self {
            levels,
            bonds,
            certificate: None,
            canon_levels,
            canon_bonds,
        };
        match certificate {
            None => Ok(tower),
            Some(c) => tower.with_certificate(c),
        }
    }

    /// The constant tower on `g` with identity bonds, certified periodic.
    pub fn constant(g: &FGAbelianGroup) -> Self {
        Self::new(
            vec![g.clone(), g.clone()],
            vec![GroupHom::identity(g)],
            Some(GroupCertificate::Periodic { offset: 0 }),
        )
        .expect("identity bonds are periodic")
    }

    /// `(G, A)` repeated forever.
    pub fn periodic(a: &GroupHom) -> Result<Self, TowerError> {
        check_endomorphism(a)?;
        let g = a.source().clone();
        Self::new(
            vec![g.clone(), g],
            vec![a.clone()],
            Some(GroupCertificate::Periodic { offset: 0 }),
        )
    }

    pub fn with_certificate(mut self, certificate: GroupCertificate) -> Result<Self, TowerError> {
        match &certificate {
            GroupCertificate::Periodic { offset } => self.verify_periodic(*offset)?,
            GroupCertificate::ShiftFamily { .. } => self.verify_shift()?,
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
        for i in offset + 1..self.levels.len() {
            if self.levels[i] != self.levels[offset] {
                return Err(TowerError::CertificateRejected(format!(
                    "level {i} is {} but level {offset} is {}",
                    self.levels[i], self.levels[offset]
                )));
            }
        }
        for i in offset + 1..self.bonds.len() {
            if self.canon_bonds[i] != self.canon_bonds[offset] {
                return Err(TowerError::CertificateRejected(format!(
                    "bond {i} differs from bond {offset}"
                )));
            }
        }
        Ok(())
    }

    fn verify_shift(&self) -> Result<(), TowerError> {
        if let Some(i) = self.levels.iter().position(|g| !g.torsion().is_empty()) {
            return Err(TowerError::CertificateRejected(format!(
                "level {i} has torsion"
            )));
        }
        for (i, m) in self.canon_bonds.iter().enumerate() {
            if rank(m) != m.cols() {
                return Err(TowerError::CertificateRejected(format!(
                    "bond {i} is not injective"
                )));
            }
            let coker = canonicalize_presentation(m.rows(), &m.transpose())
                .expect("shape matches by construction");
            if coker != FGAbelianGroup::free(1) {
                return Err(TowerError::CertificateRejected(format!(
                    "bond {i} has cokernel {coker}, not Z"
                )));
            }
        }
        Ok(())
    }

    /// Number of stored levels.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[FGAbelianGroup] {
        &self.levels
    }

    pub fn bonds(&self) -> &[GroupHom] {
        &self.bonds
    }

    pub fn level(&self, i: usize) -> &FGAbelianGroup {
        &self.levels[i]
    }

    pub fn bond(&self, i: usize) -> &GroupHom {
        &self.bonds[i]
    }

    pub fn certificate(&self) -> Option<&GroupCertificate> {
        self.certificate.as_ref()
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.certificate, Some(GroupCertificate::Periodic { .. }))
    }

    pub fn periodic_offset(&self) -> Option<usize> {
        match self.certificate {
            Some(GroupCertificate::Periodic { offset }) => Some(offset),
            _ => None,
        }
    }

    /// Canonical level `i`, continuing periodically past the truncation.
    fn canon_level(&self, i: usize) -> &FGAbelianGroup {
        if i < self.depth() {
            &self.canon_levels[i]
        } else {
            debug_assert!(self.is_periodic());
            &self.canon_levels[self.depth() - 1]
        }
    }

    fn canon_bond(&self, i: usize) -> &IntegerMatrix {
        if i < self.bonds.len() {
            &self.canon_bonds[i]
        } else {
            debug_assert!(self.is_periodic());
            &self.canon_bonds[self.bonds.len() - 1]
        }
    }

    /// Images in level `level` of the composites of `0..=window` bonds.
    pub fn image_chain(&self, level: usize, window: usize) -> Result<Vec<Subgroup>, TowerError> {
        if !self.is_periodic() && level + window >= self.depth() {
            return Err(TowerError::WindowExceedsTruncation {
                level,
                window,
                depth: self.depth(),
            });
        }
        let mut chain = Vec::with_capacity(window + 1);
        for j in 0..=window {
            let top = self.canon_level(level + j);
            let mut s = Subgroup::whole(top);
            for t in (level..level + j).rev() {
                s = push(&s, self.canon_bond(t), self.canon_level(t));
            }
            chain.push(s);
        }
        Ok(chain)
    }
}

fn check_endomorphism(a: &GroupHom) -> Result<(), TowerError> {
    if a.source() != a.target() || a.source().presentation() != a.target().presentation() {
        return Err(TowerError::NotEndomorphism(format!(
            "{} → {}",
            a.source(),
            a.target()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "index", rename_all = "snake_case")]
pub enum MLVerdict {
    /// Images at steps `k` and `k+1` coincide.
    Stabilized(usize),
    /// Certified to decrease strictly forever.
    StrictlyDecreasing,
    UndeterminedWithinWindow,
}

#[derive(Clone, Debug)]
pub struct MLStatus {
    pub verdict: MLVerdict,
    pub image_chain: Vec<FGAbelianGroup>,
    pub subgroups: Vec<Subgroup>,
}

/// Outcome of iterating `W ↦ A(W)` from `W = G` forever.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodicChain {
    StabilizesAt(usize),
    StrictForever,
}

/// Decides the fate of the chain `A^k(G)` exactly. Once the free rank of the
/// images stops dropping, `A` acts invertibly on their rational span, so a
/// proper inclusion of free parts has index `|det| > 1` and repeats forever;
/// otherwise only the finite torsion part can still shrink.
pub fn periodic_chain(g: &FGAbelianGroup, a: &IntegerMatrix) -> PeriodicChain {
    let g = g.canonical();
    let t = g.torsion().len();
    let free_rows: Vec<usize> = (t..g.canonical_rank()).collect();
    let free = FGAbelianGroup::free(free_rows.len());
    let free_part = |s: &Subgroup| Subgroup::new(free.clone(), s.generators().select_rows(&free_rows));
    let mut w = Subgroup::whole(&g);
    for k in 0.. {
        let next = push(&w, a, &g);
        if next.equals(&w) {
            return PeriodicChain::StabilizesAt(k);
        }
        let (fw, fnext) = (free_part(&w), free_part(&next));
        if rank(fw.generators()) == rank(fnext.generators()) && !fw.equals(&fnext) {
            return PeriodicChain::StrictForever;
        }
        w = next;
    }
    unreachable!()
}

/// Mittag-Leffler analysis at `level` using composites of up to `window` bonds.
pub fn ml_status(t: &GroupTower, level: usize, window: usize) -> Result<MLStatus, TowerError> {
    let chain = t.image_chain(level, window)?;
    let groups: Vec<FGAbelianGroup> = chain.iter().map(Subgroup::as_group).collect();
    let stabilized = chain.windows(2).position(|w| w[0].equals(&w[1]));
    let verdict = match (stabilized, &t.certificate) {
        (Some(k), _) => MLVerdict::Stabilized(k),
        (None, Some(GroupCertificate::Periodic { offset })) if level >= *offset => {
            match periodic_chain(t.canon_level(*offset), t.canon_bond(*offset)) {
                PeriodicChain::StrictForever => MLVerdict::StrictlyDecreasing,
                PeriodicChain::StabilizesAt(_) => MLVerdict::UndeterminedWithinWindow,
            }
        }
        (None, Some(GroupCertificate::ShiftFamily { .. })) if window > 0 => {
            MLVerdict::StrictlyDecreasing
        }
        _ => MLVerdict::UndeterminedWithinWindow,
    };
    Ok(MLStatus {
        verdict,
        image_chain: groups,
        subgroups: chain,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lim1Verdict {
    Zero,
    Uncountable,
    Undetermined,
}

impl fmt::Display for Lim1Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lim1Verdict::Zero => "Zero",
            Lim1Verdict::Uncountable => "Uncountable",
            Lim1Verdict::Undetermined => "Undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lim1Class {
    pub class: Lim1Verdict,
    pub reason: String,
}

impl Lim1Class {
    fn new(class: Lim1Verdict, reason: impl Into<String>) -> Self {
        Self {
            class,
            reason: reason.into(),
        }
    }
}

/// `clamp(window, 1, max(depth - 2, 1))`.
pub fn effective_window(depth: usize, window: usize) -> usize {
    window.clamp(1, depth.saturating_sub(2).max(1))
}

/// Classifies lim¹ as zero, uncountable or undetermined.
pub fn lim1_class(t: &GroupTower, window: usize) -> Lim1Class {
    match &t.certificate {
        Some(GroupCertificate::Periodic { offset }) => {
            match periodic_chain(t.canon_level(*offset), t.canon_bond(*offset)) {
                PeriodicChain::StabilizesAt(k) => Lim1Class::new(
                    Lim1Verdict::Zero,
                    format!("periodic certificate (offset {offset}): images stabilize after {k} steps"),
                ),
                PeriodicChain::StrictForever => Lim1Class::new(
                    Lim1Verdict::Uncountable,
                    format!("periodic certificate (offset {offset}): images decrease strictly forever"),
                ),
            }
        }
        Some(GroupCertificate::ShiftFamily { .. }) if t.depth() > 1 => Lim1Class::new(
            Lim1Verdict::Uncountable,
            "shift-family certificate: injective bonds with cokernel Z",
        ),
        _ => {
            if t.depth() < 2 {
                return Lim1Class::new(Lim1Verdict::Undetermined, "no bonds to analyse");
            }
            let w = window.clamp(1, t.depth() - 1);
            for level in 0..t.depth() - w {
                let status = ml_status(t, level, w).expect("level + window inside truncation");
                if !matches!(status.verdict, MLVerdict::Stabilized(_)) {
                    return Lim1Class::new(
                        Lim1Verdict::Undetermined,
                        format!("no certificate and images at level {level} do not stabilize within {w} steps"),
                    );
                }
            }
            Lim1Class::new(
                Lim1Verdict::Zero,
                format!("images stabilize within {w} steps at every level"),
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotStable {
    pub reason: String,
}

impl fmt::Display for NotStable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not stable: {}", self.reason)
    }
}

impl std::error::Error for NotStable {}

fn not_stable(reason: impl Into<String>) -> NotStable {
    NotStable {
        reason: reason.into(),
    }
}

/// The stable images of the truncation, one per checked level.
pub fn stable_images(t: &GroupTower, window: usize) -> Result<Vec<Subgroup>, NotStable> {
    if t.depth() == 1 {
        return Ok(vec![Subgroup::whole(t.canon_level(0))]);
    }
    let w = effective_window(t.depth(), window);
    let mut stable = Vec::new();
    for level in 0..t.depth() - w {
        let mut status = ml_status(t, level, w).expect("level + window inside truncation");
        match status.verdict {
            MLVerdict::Stabilized(k) => stable.push(status.subgroups.swap_remove(k)),
            _ => {
                return Err(not_stable(format!(
                    "images at level {level} do not stabilize within {w} steps: {}",
                    status.image_chain.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ⊇ ")
                )))
            }
        }
    }
    Ok(stable)
}

/// lim of the truncation when every checked level stabilizes and the bond
/// between the two deepest stable images is an isomorphism.
pub fn stable_lim(t: &GroupTower, window: usize) -> Result<FGAbelianGroup, NotStable> {
    let stable = stable_images(t, window)?;
    let last = stable.len() - 1;
    if last > 0 {
        let upper = &stable[last];
        let lower = &stable[last - 1];
        let image = push(upper, t.canon_bond(last - 1), t.canon_level(last - 1));
        if !image.equals(lower) || upper.as_group() != lower.as_group() {
            return Err(not_stable(format!(
                "bond {} does not restrict to an isomorphism of stable images",
                last - 1
            )));
        }
    }
    Ok(stable[last].as_group().canonical())
}

/// lim using the certificate when there is one.
pub fn tower_lim(t: &GroupTower, window: usize) -> Result<FGAbelianGroup, NotStable> {
    match &t.certificate {
        Some(GroupCertificate::Periodic { offset }) => {
            let g = t.canon_level(*offset);
            let a = GroupHom::from_canonical_matrix(g.clone(), g.clone(), t.canon_bond(*offset))
                .expect("canonical bond is a homomorphism");
            periodic_lim(g, &a).map_err(|e| not_stable(e.to_string()))
        }
        Some(GroupCertificate::ShiftFamily { .. }) => Ok(FGAbelianGroup::trivial()),
        None => stable_lim(t, window),
    }
}

/// The inverse limit of `… → G → G` with every bond `A`.
///
/// The images `A^k(G)` shrink until `A` is injective on them; call that
/// image `W`. Then `lim ≅ ⋂ A^k(W)`, whose torsion is all of `torsion(W)` and
/// whose free rank is the degree of the unit part of the characteristic
/// polynomial of `A` on `W/torsion`.
pub fn periodic_lim(g: &FGAbelianGroup, a: &GroupHom) -> Result<FGAbelianGroup, TowerError> {
    check_endomorphism(a)?;
    if a.source() != g {
        return Err(TowerError::NotEndomorphism(format!("{} is not a map of {g}", a.source())));
    }
    let gc = a.source().canonical();
    let m = a.canonical_matrix();
    let mut w = Subgroup::whole(&gc);
    let mut wg = w.as_group();
    loop {
        let next = push(&w, &m, &gc);
        let ng = next.as_group();
        if ng == wg {
            break;
        }
        w = next;
        wg = ng;
    }
    let gens = w.generators();
    let mut restricted = IntegerMatrix::zeros(gens.cols(), gens.cols());
    for j in 0..gens.cols() {
        let mut image = m.apply(&gens.column_vec(j));
        gc.reduce_canonical(&mut image);
        let coeffs = w.express(&image).expect("A(W) ⊆ W");
        for (i, x) in coeffs.into_iter().enumerate() {
            restricted[(i, j)] = x;
        }
    }
    let on_w = GroupHom::new(wg.clone(), wg.clone(), restricted)
        .expect("restriction of a homomorphism is well defined");
    let c = on_w.canonical_matrix();
    let t = wg.torsion().len();
    let idx: Vec<usize> = (t..wg.canonical_rank()).collect();
    let block = c.select_rows(&idx).select_cols(&idx);
    let chi = characteristic_polynomial(&block);
    let free_rank = unit_part_degree(&chi).ok_or(TowerError::UnitSearchTooLarge {
        degree: idx.len(),
        max: MAX_UNIT_SEARCH_DEGREE,
    })?;
    Ok(FGAbelianGroup::from_invariants(free_rank, wg.torsion().to_vec())
        .expect("torsion of a canonical group is a valid chain"))
}

/// `levels[0] → levels[1] → …`, with `bonds[i]: levels[i] → levels[i+1]`.
#[derive(Clone, Debug)]
pub struct DirectSystem {
    levels: Vec<FGAbelianGroup>,
    bonds: Vec<GroupHom>,
    periodic_offset: Option<usize>,
}

impl DirectSystem {
    pub fn new(
        levels: Vec<FGAbelianGroup>,
        bonds: Vec<GroupHom>,
        periodic_offset: Option<usize>,
    ) -> Result<Self, TowerError> {
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
            if b.source() != &levels[i] || b.target() != &levels[i + 1] {
                return Err(TowerError::BondMismatch {
                    index: i,
                    reason: format!("{} → {} does not join levels {i} and {}", b.source(), b.target(), i + 1),
                });
            }
        }
        if let Some(offset) = periodic_offset {
            if offset >= bonds.len() {
                return Err(TowerError::CertificateRejected(format!(
                    "periodic offset {offset} leaves no bond to repeat"
                )));
            }
            let m = bonds[offset].canonical_matrix();
            for i in offset + 1..bonds.len() {
                if levels[i + 1] != levels[offset] || bonds[i].canonical_matrix() != m {
                    return Err(TowerError::CertificateRejected(format!(
                        "bond {i} differs from bond {offset}"
                    )));
                }
            }
        }
        Ok(Self {
            levels,
            bonds,
            periodic_offset,
        })
    }

    pub fn levels(&self) -> &[FGAbelianGroup] {
        &self.levels
    }

    pub fn bonds(&self) -> &[GroupHom] {
        &self.bonds
    }

    pub fn periodic_offset(&self) -> Option<usize> {
        self.periodic_offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColimOutcome {
    /// Every bond from `index` on is an isomorphism.
    Stable { group: FGAbelianGroup, index: usize },
    NotFinitelyStable { chain: Vec<FGAbelianGroup> },
}

/// Colimit of a direct system that is eventually constant up to isomorphism.
pub fn colim_direct_system(s: &DirectSystem, window: usize) -> ColimOutcome {
    if s.bonds.is_empty() {
        return ColimOutcome::Stable {
            group: s.levels[0].canonical(),
            index: 0,
        };
    }
    let iso: Vec<bool> = s.bonds.iter().map(GroupHom::is_isomorphism).collect();
    let tail_start = |end: usize| {
        let mut start = end;
        while start > 0 && iso[start - 1] {
            start -= 1;
        }
        start
    };
    let stable = match s.periodic_offset {
        Some(offset) => iso[offset].then(|| tail_start(offset + 1)),
        None => {
            let w = window.clamp(1, s.bonds.len());
            iso[s.bonds.len() - w..].iter().all(|&b| b).then(|| tail_start(s.bonds.len()))
        }
    };
    match stable {
        Some(index) => ColimOutcome::Stable {
            group: s.levels[index].canonical(),
            index,
        },
        None => ColimOutcome::NotFinitelyStable {
            chain: s.levels.iter().map(FGAbelianGroup::canonical).collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn hom(g: &FGAbelianGroup, h: &FGAbelianGroup, rows: &[&[i64]]) -> GroupHom {
        let cols = rows.first().map_or(g.generators(), |r| r.len());
        GroupHom::new(g.clone(), h.clone(), IntegerMatrix::from_rows(cols, rows)).unwrap()
    }

    fn times(n: i64) -> GroupHom {
        let z = FGAbelianGroup::free(1);
        hom(&z, &z, &[&[n]])
    }

    #[test]
    fn identity_tower_stabilizes_immediately() {
        let t = GroupTower::constant(&FGAbelianGroup::free(2));
        let s = ml_status(&t, 0, 3).unwrap();
        assert_eq!(s.verdict, MLVerdict::Stabilized(0));
        assert_eq!(lim1_class(&t, 3).class, Lim1Verdict::Zero);
        assert_eq!(stable_lim(&t, 3).unwrap(), FGAbelianGroup::free(2));
        assert_eq!(tower_lim(&t, 3).unwrap(), FGAbelianGroup::free(2));
    }

    #[test]
    fn doubling_tower_is_strict() {
        let t = GroupTower::periodic(&times(2)).unwrap();
        let s = ml_status(&t, 0, 4).unwrap();
        assert_eq!(s.verdict, MLVerdict::StrictlyDecreasing);
        // 2^k Z has index 2^k in Z, so consecutive images differ
        for k in 0..4 {
            let expected = IntegerMatrix::from_rows(1, &[[1i64 << k]]);
            let want = Subgroup::new(FGAbelianGroup::free(1), expected);
            assert!(s.subgroups[k].equals(&want));
        }
        assert_eq!(lim1_class(&t, 4).class, Lim1Verdict::Uncountable);
        assert!(stable_lim(&t, 4).is_err());
        assert!(tower_lim(&t, 4).unwrap().is_trivial());
    }

    #[test]
    fn uncertified_strict_prefix_is_undetermined() {
        let z = FGAbelianGroup::free(1);
        let t = GroupTower::new(vec![z.clone(); 4], vec![times(2); 3], None).unwrap();
        assert_eq!(ml_status(&t, 0, 3).unwrap().verdict, MLVerdict::UndeterminedWithinWindow);
        assert_eq!(lim1_class(&t, 3).class, Lim1Verdict::Undetermined);
    }

    #[test]
    fn window_beyond_truncation_is_an_error() {
        let z = FGAbelianGroup::free(1);
        let t = GroupTower::new(vec![z.clone(); 3], vec![times(1); 2], None).unwrap();
        assert!(matches!(
            ml_status(&t, 1, 2),
            Err(TowerError::WindowExceedsTruncation { .. })
        ));
    }

    #[test]
    fn repeat_at_step_two() {
        // nilpotent shift on Z^2: images Z^2 ⊋ Z ⊋ 0 = 0
        let g = FGAbelianGroup::free(2);
        let shift = hom(&g, &g, &[&[0, 1], &[0, 0]]);
        let t = GroupTower::new(vec![g.clone(); 5], vec![shift; 4], None).unwrap();
        let s = ml_status(&t, 0, 4).unwrap();
        assert_eq!(s.verdict, MLVerdict::Stabilized(2));
        assert_eq!(s.image_chain[1], FGAbelianGroup::free(1));
        assert!(s.image_chain[2].is_trivial());
    }

    #[test]
    fn surjective_bonds_give_zero() {
        let z2 = FGAbelianGroup::free(2);
        let z = FGAbelianGroup::free(1);
        let proj = hom(&z2, &z, &[&[1, 0]]);
        let t = GroupTower::new(
            vec![z.clone(), z2.clone(), z2.clone(), z2.clone()],
            vec![proj, GroupHom::identity(&z2), GroupHom::identity(&z2)],
            None,
        )
        .unwrap();
        assert_eq!(lim1_class(&t, 2).class, Lim1Verdict::Zero);
    }

    #[test]
    fn diag_one_two_is_not_stable_but_periodic_lim_is_z() {
        let z2 = FGAbelianGroup::free(2);
        let a = hom(&z2, &z2, &[&[1, 0], &[0, 2]]);
        let t = GroupTower::periodic(&a).unwrap();
        assert!(stable_lim(&t, 5).is_err());
        assert_eq!(periodic_lim(&z2, &a).unwrap(), FGAbelianGroup::free(1));
    }

    #[test]
    fn projection_then_identity_stabilizes_to_z() {
        // Z ← Z^2 ← Z ← Z ← Z, bonds projection, inclusion, identities
        let z2 = FGAbelianGroup::free(2);
        let z = FGAbelianGroup::free(1);
        let proj = hom(&z2, &z, &[&[1, 0]]);
        let incl = hom(&z, &z2, &[&[1], &[0]]);
        let id = GroupHom::identity(&z);
        let t = GroupTower::new(
            vec![z.clone(), z2, z.clone(), z.clone(), z.clone()],
            vec![proj, incl, id.clone(), id],
            None,
        )
        .unwrap();
        assert_eq!(stable_lim(&t, 2).unwrap(), FGAbelianGroup::free(1));
    }

    #[test]
    fn periodic_lim_examples() {
        let z = FGAbelianGroup::free(1);
        assert_eq!(periodic_lim(&z, &times(1)).unwrap(), z);
        assert!(periodic_lim(&z, &times(2)).unwrap().is_trivial());
        assert!(periodic_lim(&z, &times(0)).unwrap().is_trivial());
        // x ↦ (2y, x) squares to ×2 but has invariant factors (1, 2)
        let z2 = FGAbelianGroup::free(2);
        let swap2 = hom(&z2, &z2, &[&[0, 2], &[1, 0]]);
        assert!(periodic_lim(&z2, &swap2).unwrap().is_trivial());
        // torsion survives an automorphism
        let g = FGAbelianGroup::from_invariants(1, vec![BigInt::from(6)]).unwrap();
        let a = GroupHom::from_canonical_matrix(
            g.clone(),
            g.clone(),
            &IntegerMatrix::from_rows(2, &[[5, 0], [0, 3]]),
        )
        .unwrap();
        assert_eq!(periodic_lim(&g, &a).unwrap(), FGAbelianGroup::cyclic(6));
        // ×2 on Z/6 kills the 2-part
        let b = GroupHom::from_canonical_matrix(
            FGAbelianGroup::cyclic(6),
            FGAbelianGroup::cyclic(6),
            &IntegerMatrix::from_rows(1, &[[2]]),
        )
        .unwrap();
        assert_eq!(
            periodic_lim(&FGAbelianGroup::cyclic(6), &b).unwrap(),
            FGAbelianGroup::cyclic(3)
        );
    }

    #[test]
    fn periodic_lim_rejects_non_endomorphisms() {
        let z2 = FGAbelianGroup::free(2);
        let z = FGAbelianGroup::free(1);
        let proj = hom(&z2, &z, &[&[1, 0]]);
        assert!(matches!(periodic_lim(&z2, &proj), Err(TowerError::NotEndomorphism(_))));
    }

    #[test]
    fn finite_periodic_towers_have_zero_lim1() {
        let z4 = FGAbelianGroup::cyclic(4);
        let a = GroupHom::from_canonical_matrix(z4.clone(), z4, &IntegerMatrix::from_rows(1, &[[2]]))
            .unwrap();
        let t = GroupTower::periodic(&a).unwrap();
        assert_eq!(lim1_class(&t, 2).class, Lim1Verdict::Zero);
    }

    #[test]
    fn shift_certificate_checks_bonds() {
        let z3 = FGAbelianGroup::free(3);
        let z2 = FGAbelianGroup::free(2);
        let z1 = FGAbelianGroup::free(1);
        let b0 = hom(&z2, &z3, &[&[0, 0], &[1, 0], &[0, 1]]);
        let b1 = hom(&z1, &z2, &[&[0], &[1]]);
        let cert = Some(GroupCertificate::ShiftFamily { label: None });
        let t = GroupTower::new(vec![z3.clone(), z2.clone(), z1.clone()], vec![b0, b1], cert.clone())
            .unwrap();
        assert_eq!(ml_status(&t, 0, 2).unwrap().verdict, MLVerdict::StrictlyDecreasing);
        assert_eq!(lim1_class(&t, 2).class, Lim1Verdict::Uncountable);
        let bad = hom(&z2, &z3, &[&[0, 0], &[2, 0], &[0, 1]]);
        let b1 = hom(&z1, &z2, &[&[0], &[1]]);
        assert!(GroupTower::new(vec![z3, z2, z1], vec![bad, b1], cert).is_err());
    }

    #[test]
    fn colimits() {
        let z = FGAbelianGroup::free(1);
        let id = GroupHom::identity(&z);
        let constant = DirectSystem::new(vec![z.clone(); 3], vec![id.clone(), id], None).unwrap();
        assert_eq!(
            colim_direct_system(&constant, 2),
            ColimOutcome::Stable { group: z.clone(), index: 0 }
        );
        let doubling = DirectSystem::new(vec![z.clone(); 3], vec![times(2); 2], Some(0)).unwrap();
        assert!(matches!(
            colim_direct_system(&doubling, 2),
            ColimOutcome::NotFinitelyStable { .. }
        ));
        // Z → Z/6 → Z/6 → Z/6 with the last two bonds identities
        let z6 = FGAbelianGroup::cyclic(6);
        let q = hom(&z, &z6, &[&[1]]);
        let id6 = GroupHom::identity(&z6);
        let s = DirectSystem::new(
            vec![z, z6.clone(), z6.clone(), z6.clone()],
            vec![q, id6.clone(), id6],
            None,
        )
        .unwrap();
        assert_eq!(
            colim_direct_system(&s, 2),
            ColimOutcome::Stable { group: z6, index: 1 }
        );
    }
}
