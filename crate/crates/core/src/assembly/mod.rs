//! Short exact sequences `0 → lim¹ → H → lim → 0` assembled from towers.

use std::fmt;

use thiserror::Error;

use crate::abelian::{FGAbelianGroup, GroupHom, IntegerMatrix};
use crate::compactohedral::{contained_in_interior, validate, CompactohedralError, Interior, Variant};
use crate::simplicial::{cohomology_result, induced_cohomology_map, Simplex, SimplicialComplex, SimplicialMap};
use crate::tower::{
    cohomology_system, colim_direct_system, homology_tower_with, lim1_class, stable_images,
    tower_lim, ColimOutcome, ComplexTower, GroupCertificate, GroupTower, HomologyTheory,
    IntegralHomology, Lim1Class, Lim1Verdict, NotStable, TowerError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("tower is not a resolution: validation as {variant} failed\n{report}")]
    NotResolution { variant: &'static str, report: String },
    #[error(transparent)]
    Validation(#[from] CompactohedralError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error("filtration: {0}")]
    Filtration(String),
    #[error("filtration step {level} is not in the interior of the next step: witness {witness}")]
    Interiority { level: usize, witness: Simplex },
    #[error("levelwise maps do not commute with the bonds at level {0}")]
    NotNatural(usize),
}

/// How the tower is known to be a resolution of its limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionCheck {
    Validate(Variant),
    Trusted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SesKind {
    Homology,
    Cohomology,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RightEnd {
    Group(FGAbelianGroup),
    NotStable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Middle {
    Group(FGAbelianGroup),
    /// lim¹ is not known to vanish, so the extension is unknown.
    UnresolvedExtension,
    /// lim¹ is uncountable and injects into the middle group.
    UncountableViaLeft,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SESReport {
    pub kind: SesKind,
    pub dimension: usize,
    pub reduced: bool,
    pub left: Lim1Class,
    pub left_label: Option<String>,
    pub right: RightEnd,
    pub middle: Middle,
    pub provenance: Vec<String>,
}

impl SESReport {
    fn assemble(
        kind: SesKind,
        dimension: usize,
        reduced: bool,
        left: Lim1Class,
        left_label: Option<String>,
        right: Result<FGAbelianGroup, NotStable>,
        provenance: Vec<String>,
    ) -> Self {
        let right = match right {
            Ok(g) => RightEnd::Group(g),
            Err(e) => RightEnd::NotStable(e.reason),
        };
        let middle = match (&left.class, &right) {
            (Lim1Verdict::Zero, RightEnd::Group(g)) => Middle::Group(g.clone()),
            (Lim1Verdict::Uncountable, _) => Middle::UncountableViaLeft,
            _ => Middle::UnresolvedExtension,
        };
        Self {
            kind,
            dimension,
            reduced,
            left,
            left_label,
            right,
            middle,
            provenance,
        }
    }

    /// `H_n(X)`, `H~_0(X)` or `H^n(X)`.
    pub fn middle_name(&self) -> String {
        match (self.kind, self.reduced) {
            (SesKind::Homology, true) => format!("H~_{}(X)", self.dimension),
            (SesKind::Homology, false) => format!("H_{}(X)", self.dimension),
            (SesKind::Cohomology, _) => format!("H^{}(X)", self.dimension),
        }
    }

    pub fn middle_group(&self) -> Option<&FGAbelianGroup> {
        match &self.middle {
            Middle::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn right_group(&self) -> Option<&FGAbelianGroup> {
        match &self.right {
            RightEnd::Group(g) => Some(g),
            RightEnd::NotStable(_) => None,
        }
    }
}

impl fmt::Display for SESReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.left_label.as_deref().filter(|_| self.left.class == Lim1Verdict::Uncountable) {
            Some(label) => writeln!(f, "lim1: {} (label: {label})", self.left.class)?,
            None => writeln!(f, "lim1: {}", self.left.class)?,
        }
        writeln!(f, "lim1 reason: {}", self.left.reason)?;
        match &self.right {
            RightEnd::Group(g) => writeln!(f, "lim: {g}")?,
            RightEnd::NotStable(why) => writeln!(f, "lim: not stable ({why})")?,
        }
        let name = self.middle_name();
        match &self.middle {
            Middle::Group(g) => writeln!(f, "{name} = {g}")?,
            Middle::UnresolvedExtension => writeln!(f, "{name}: unresolved extension of lim by lim1")?,
            Middle::UncountableViaLeft => writeln!(f, "{name}: uncountable via lim1")?,
        }
        for p in &self.provenance {
            writeln!(f, "provenance: {p}")?;
        }
        Ok(())
    }
}

fn check_resolution(t: &ComplexTower, check: ResolutionCheck) -> Result<String, AssemblyError> {
    match check {
        ResolutionCheck::Trusted => Ok("tower trusted as a resolution".into()),
        ResolutionCheck::Validate(variant) => {
            let report = validate(t, variant)?;
            if report.passed() {
                Ok(format!("validated as {}", variant.name()))
            } else {
                Err(AssemblyError::NotResolution {
                    variant: variant.name(),
                    report: report.to_string(),
                })
            }
        }
    }
}

fn describe(name: &str, t: &GroupTower) -> String {
    match t.certificate() {
        Some(GroupCertificate::Periodic { offset }) => {
            format!("{name} tower: periodic certificate from level {offset}")
        }
        Some(GroupCertificate::ShiftFamily { .. }) => format!("{name} tower: shift-family certificate"),
        None => format!("{name} tower: no certificate, truncation of depth {}", t.depth()),
    }
}

fn shift_label(t: &GroupTower) -> Option<String> {
    match t.certificate() {
        Some(GroupCertificate::ShiftFamily { label }) => label.clone(),
        _ => None,
    }
}

/// The homology sequence with levelwise theories `lower` (degree `n`) and
/// `upper` (degree `n + 1`).
pub fn steenrod_report_with<H: HomologyTheory>(
    t: &ComplexTower,
    n: usize,
    window: usize,
    check: ResolutionCheck,
    lower: &H,
    upper: &H,
    reduced: bool,
) -> Result<SESReport, AssemblyError> {
    let mut provenance = vec![check_resolution(t, check)?];
    let upper_tower = homology_tower_with(upper, t, n + 1);
    let lower_tower = homology_tower_with(lower, t, n);
    provenance.push(describe(&format!("H_{}", n + 1), &upper_tower));
    provenance.push(describe(&format!("H_{n}"), &lower_tower));
    let left = lim1_class(&upper_tower, window);
    let label = shift_label(&upper_tower);
    let right = tower_lim(&lower_tower, window);
    Ok(SESReport::assemble(SesKind::Homology, n, reduced, left, label, right, provenance))
}

/// `0 → lim¹ H_{n+1} → H_n(X) → lim H_n → 0` with integral homology, reduced
/// in degree 0.
pub fn steenrod_report(
    t: &ComplexTower,
    n: usize,
    window: usize,
    check: ResolutionCheck,
) -> Result<SESReport, AssemblyError> {
    let reduced = n == 0;
    steenrod_report_with(
        t,
        n,
        window,
        check,
        &IntegralHomology { reduced },
        &IntegralHomology { reduced: false },
        reduced,
    )
}

/// `H^n(X) ≅ colim H^n(R_i)`.
pub fn cech_cohomology_report(
    t: &ComplexTower,
    n: usize,
    window: usize,
    check: ResolutionCheck,
) -> Result<ColimOutcome, AssemblyError> {
    check_resolution(t, check)?;
    Ok(colim_direct_system(&cohomology_system(t, n), window))
}

/// `H^q` of each step with restriction bonds, continued by the last step
/// forever.
fn restriction_tower(filtration: &[SimplicialComplex], q: usize) -> GroupTower {
    let results: Vec<_> = filtration.iter().map(|k| cohomology_result(k, q)).collect();
    let mut bonds: Vec<GroupHom> = filtration
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let incl = SimplicialMap::inclusion(w[0].clone(), w[1].clone())
                .expect("filtration steps are nested");
            induced_cohomology_map(&incl, q, &results[i], &results[i + 1])
        })
        .collect();
    let mut levels: Vec<FGAbelianGroup> = results.iter().map(|r| r.group().clone()).collect();
    let last = levels.last().expect("nonempty filtration").clone();
    bonds.push(GroupHom::identity(&last));
    levels.push(last);
    let offset = filtration.len() - 1;
    GroupTower::new(levels, bonds, Some(GroupCertificate::Periodic { offset }))
        .expect("identity continuation is periodic")
}

/// `0 → lim¹ H^{n-1}(K_i) → H^n(X) → lim H^n(K_i) → 0` for `K_1 ⊆ K_2 ⊆ …`.
pub fn petkova_report(
    filtration: &[SimplicialComplex],
    n: usize,
    window: usize,
) -> Result<SESReport, AssemblyError> {
    let ambient = filtration
        .last()
        .ok_or_else(|| AssemblyError::Filtration("empty filtration".into()))?;
    for (i, w) in filtration.windows(2).enumerate() {
        if !w[0].is_subcomplex_of(&w[1]) {
            return Err(AssemblyError::Filtration(format!(
                "step {i} is not a subcomplex of step {}",
                i + 1
            )));
        }
        if let Interior::Escapes(witness) = contained_in_interior(&w[0], &w[1], ambient)? {
            return Err(AssemblyError::Interiority { level: i, witness });
        }
    }
    let mut provenance = vec![format!(
        "filtration of {} steps, continued constantly by the last step",
        filtration.len()
    )];
    let left = if n == 0 {
        provenance.push("H^-1 vanishes".into());
        Lim1Class {
            class: Lim1Verdict::Zero,
            reason: "H^-1 = 0".into(),
        }
    } else {
        let t = restriction_tower(filtration, n - 1);
        provenance.push(describe(&format!("H^{}", n - 1), &t));
        lim1_class(&t, window)
    };
    let right_tower = restriction_tower(filtration, n);
    provenance.push(describe(&format!("H^{n}"), &right_tower));
    let right = tower_lim(&right_tower, window);
    Ok(SESReport::assemble(SesKind::Cohomology, n, false, left, None, right, provenance))
}

/// The map `lim A → lim B` induced by levelwise maps `maps[i]: A_i → B_i`,
/// computed on the deepest stable images. Squares must commute strictly.
pub fn lim_map(
    a: &GroupTower,
    b: &GroupTower,
    maps: &[GroupHom],
    window: usize,
) -> Result<GroupHom, AssemblyError> {
    let depth = a.depth().min(b.depth()).min(maps.len());
    for i in 0..depth.saturating_sub(1) {
        let left = maps[i].canonical_matrix().mul(&a.bond(i).canonical_matrix());
        let right = b.bond(i).canonical_matrix().mul(&maps[i + 1].canonical_matrix());
        let target = maps[i].target().canonical();
        let diff_zero = (0..left.cols()).all(|j| {
            let d: Vec<_> = left
                .column_vec(j)
                .into_iter()
                .zip(right.column_vec(j))
                .map(|(x, y)| x - y)
                .collect();
            target.is_zero_element(&target.from_canonical().apply(&d))
        });
        if !diff_zero {
            return Err(AssemblyError::NotNatural(i));
        }
    }
    let sa = stable_images(a, window).map_err(|e| AssemblyError::Filtration(e.to_string()))?;
    let sb = stable_images(b, window).map_err(|e| AssemblyError::Filtration(e.to_string()))?;
    let level = sa.len().min(sb.len()) - 1;
    let (s, t) = (&sa[level], &sb[level]);
    let phi = maps[level].canonical_matrix();
    let gens = s.generators();
    let mut m = IntegerMatrix::zeros(t.generators().cols(), gens.cols());
    for j in 0..gens.cols() {
        let mut image = phi.apply(&gens.column_vec(j));
        t.ambient().reduce_canonical(&mut image);
        let coeffs = t
            .express(&image)
            .ok_or(AssemblyError::NotNatural(level))?;
        for (i, x) in coeffs.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    GroupHom::new(s.as_group(), t.as_group(), m).map_err(|_| AssemblyError::NotNatural(level))
}
