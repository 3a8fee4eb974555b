//! Combinatorial checks of the compactohedral axioms.
//!
//! Interiors are star conditions: `A ⊆ Int B` in `K` when every simplex of `K`
//! meeting `A` lies in `B`. Homeomorphisms of open complements are simplicial
//! isomorphisms of the full subcomplexes spanned by the vertices outside the
//! marked sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CompactohedralError;
use crate::simplicial::{validate_complex, Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::tower::ComplexTower;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Compactohedral,
    WeaklyCompactohedral,
    PreCompactohedral,
    WeaklyPreCompactohedral,
}

impl Variant {
    pub fn axioms(self) -> &'static [Axiom] {
        use Axiom::*;
        match self {
            Variant::Compactohedral => &[C0, C1, C2, C3],
            Variant::WeaklyCompactohedral => &[C0, C1, C3],
            Variant::WeaklyPreCompactohedral => &[C0, C1, C2Prime, C3Prime],
            Variant::PreCompactohedral => &[C0, C1, C2Second, C3Second],
        }
    }

    fn needs_l(self) -> bool {
        matches!(
            self,
            Variant::PreCompactohedral | Variant::WeaklyPreCompactohedral
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Compactohedral => "compactohedral",
            Variant::WeaklyCompactohedral => "weakly_compactohedral",
            Variant::PreCompactohedral => "pre_compactohedral",
            Variant::WeaklyPreCompactohedral => "weakly_pre_compactohedral",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "compactohedral" => Ok(Variant::Compactohedral),
            "weakly_compactohedral" | "weakly" => Ok(Variant::WeaklyCompactohedral),
            "pre_compactohedral" | "pre" => Ok(Variant::PreCompactohedral),
            "weakly_pre_compactohedral" | "weakly_pre" => Ok(Variant::WeaklyPreCompactohedral),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    C0,
    C1,
    C2,
    C3,
    #[serde(rename = "C2'")]
    C2Prime,
    #[serde(rename = "C3'")]
    C3Prime,
    #[serde(rename = "C2''")]
    C2Second,
    #[serde(rename = "C3''")]
    C3Second,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::C0 => "C0",
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::C2Prime => "C2'",
            Axiom::C3Prime => "C3'",
            Axiom::C2Second => "C2''",
            Axiom::C3Second => "C3''",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Level containing the witness.
    pub level: usize,
    pub witness: Simplex,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub variant: Variant,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// The distinct axioms that failed, in checking order.
    pub fn failed_axioms(&self) -> Vec<Axiom> {
        let mut out: Vec<Axiom> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.axiom) {
                out.push(v.axiom);
            }
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axioms = self.variant.axioms();
        let list = if self.variant == Variant::Compactohedral {
            "C0..C3".to_string()
        } else {
            axioms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
        };
        if self.passed() {
            return write!(f, "PASS ({list})");
        }
        writeln!(f, "FAIL ({list})")?;
        for v in &self.violations {
            writeln!(f, "  {} at level {}: witness {} ({})", v.axiom, v.level, v.witness, v.detail)?;
        }
        Ok(())
    }
}

/// Whether `A ⊆ Int B` inside `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interior {
    Inside,
    /// A simplex of `K` meeting `A` but not in `B`.
    Escapes(Simplex),
}

impl Interior {
    pub fn holds(&self) -> bool {
        matches!(self, Interior::Inside)
    }
}

fn check_sub(
    name: &'static str,
    sub: &SimplicialComplex,
    k: &SimplicialComplex,
) -> Result<(), CompactohedralError> {
    if let Err(v) = validate_complex(sub) {
        return Err(CompactohedralError::NotSubcomplex(format!(
            "{name} is not closed: {} lacks {}",
            v.simplex, v.missing_face
        )));
    }
    if let Some(s) = sub.iter().find(|s| !k.contains(s)) {
        return Err(CompactohedralError::NotSubcomplex(format!(
            "{name} contains {s}, which is not in the ambient complex"
        )));
    }
    Ok(())
}

/// Every simplex of `k` with a face in `a` lies in `b`. Since `a` is closed,
/// it suffices to look at simplexes with a vertex in `a`.
pub fn contained_in_interior(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    k: &SimplicialComplex,
) -> Result<Interior, CompactohedralError> {
    check_sub("A", a, k)?;
    check_sub("B", b, k)?;
    Ok(escape(a, b, k).map_or(Interior::Inside, Interior::Escapes))
}

fn escape(a: &SimplicialComplex, b: &SimplicialComplex, k: &SimplicialComplex) -> Option<Simplex> {
    let verts: BTreeSet<Vertex> = a.vertices().into_iter().collect();
    k.iter()
        .find(|s| !b.contains(s) && s.vertices().iter().any(|v| verts.contains(v)))
        .cloned()
}

/// Checks that `f` restricts to a simplicial isomorphism from `upper` onto
/// `lower`, where `upper` is meant to be `f⁻¹(lower)`.
fn isomorphism_witness(
    f: &SimplicialMap,
    upper: &SimplicialComplex,
    lower: &SimplicialComplex,
    upper_level: usize,
) -> Option<(usize, Simplex, String)> {
    let mut seen: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for v in upper.vertices() {
        let w = f.apply_vertex(v);
        if let Some(&u) = seen.get(&w) {
            return Some((
                upper_level,
                Simplex::vertex(v),
                format!("vertices {u} and {v} both go to {w}"),
            ));
        }
        seen.insert(w, v);
    }
    for s in upper.iter() {
        let image = f.image(s);
        if image.dim() != s.dim() || !lower.contains(&image) {
            return Some((upper_level, s.clone(), format!("image {image} is not a simplex of the complement")));
        }
    }
    let hit: BTreeSet<Simplex> = upper.iter().map(|s| f.image(s)).collect();
    lower.iter().find(|t| !hit.contains(t)).map(|t| {
        (
            upper_level - 1,
            t.clone(),
            "not the image of any simplex".to_string(),
        )
    })
}

/// Full subcomplexes on the vertices whose images avoid `mark` (upper) and on
/// the vertices outside `mark` (lower).
fn open_complements(
    f: &SimplicialMap,
    mark: &SimplicialComplex,
) -> (SimplicialComplex, SimplicialComplex) {
    let marked: BTreeSet<Vertex> = mark.vertices().into_iter().collect();
    let lower: BTreeSet<Vertex> = f
        .target()
        .vertices()
        .into_iter()
        .filter(|v| !marked.contains(v))
        .collect();
    let upper: BTreeSet<Vertex> = f
        .source()
        .vertices()
        .into_iter()
        .filter(|v| !marked.contains(&f.apply_vertex(*v)))
        .collect();
    (
        f.source().full_subcomplex(&upper),
        f.target().full_subcomplex(&lower),
    )
}

/// Closure of the simplexes of `k` outside `l`.
fn closed_complement(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    SimplicialComplex::from_maximal(k.iter().filter(|s| !l.contains(s)).cloned().collect::<Vec<_>>())
}

fn image_outside(
    f: &SimplicialMap,
    from: &SimplicialComplex,
    into: &SimplicialComplex,
) -> Option<Simplex> {
    from.iter().find(|s| !into.contains(&f.image(s))).cloned()
}

/// Validates `t` against the axioms of `variant`.
pub fn validate(t: &ComplexTower, variant: Variant) -> Result<ValidationReport, CompactohedralError> {
    let ks = t.marked_k().ok_or(CompactohedralError::MissingMarks("K"))?;
    let ls = if variant.needs_l() {
        Some(t.marked_l().ok_or(CompactohedralError::MissingMarks("L"))?)
    } else {
        None
    };
    let axioms = variant.axioms();
    let mut violations = Vec::new();
    let mut push = |axiom, level, witness, detail: String| {
        violations.push(Violation {
            axiom,
            level,
            witness,
            detail,
        })
    };

    for i in 0..t.depth() {
        if let Err(v) = validate_complex(t.level(i)) {
            push(Axiom::C0, i, v.simplex, format!("missing face {}", v.missing_face));
        }
    }

    for i in 0..t.depth().saturating_sub(1) {
        let f = t.bond(i);
        let (lower, upper) = (i, i + 1);
        let c1 = image_outside(f, &ks[upper], &ks[lower]);
        if let Some(s) = &c1 {
            push(Axiom::C1, upper, s.clone(), format!("image {} is not in K_{lower}", f.image(s)));
        }
        for &axiom in axioms {
            match axiom {
                Axiom::C2 if c1.is_none() => {
                    let pre = f.preimage(&ks[lower]);
                    if let Some(s) = escape(&ks[upper], &pre, t.level(upper)) {
                        push(Axiom::C2, upper, s, format!("meets K_{upper} but leaves the preimage of K_{lower}"));
                    }
                }
                Axiom::C3 => {
                    let (up, low) = open_complements(f, &ks[lower]);
                    if let Some((level, s, detail)) = isomorphism_witness(f, &up, &low, upper) {
                        push(Axiom::C3, level, s, detail);
                    }
                }
                Axiom::C2Prime | Axiom::C2Second => {
                    let ls = ls.expect("checked above");
                    if let Some(s) = image_outside(f, &ls[upper], &ks[lower]) {
                        push(axiom, upper, s.clone(), format!("L_{upper} simplex lands outside K_{lower}"));
                    }
                }
                Axiom::C3Prime => {
                    let ls = ls.expect("checked above");
                    let (up, low) = open_complements(f, &ls[lower]);
                    if let Some((level, s, detail)) = isomorphism_witness(f, &up, &low, upper) {
                        push(axiom, level, s, detail);
                    }
                }
                Axiom::C3Second => {
                    let ls = ls.expect("checked above");
                    let low = closed_complement(t.level(lower), &ls[lower]);
                    let up = f.preimage(&low);
                    if let Some((level, s, detail)) = isomorphism_witness(f, &up, &low, upper) {
                        push(axiom, level, s, detail);
                    }
                }
                _ => {}
            }
        }
    }

    // conditions on single levels
    if let Some(ls) = ls {
        for i in 0..t.depth() {
            if axioms.contains(&Axiom::C2Prime) {
                if let Some(s) = ks[i].iter().find(|s| !ls[i].contains(s)) {
                    push(Axiom::C2Prime, i, s.clone(), format!("K_{i} is not inside L_{i}"));
                }
            }
            if axioms.contains(&Axiom::C2Second) {
                if let Some(s) = escape(&ks[i], &ls[i], t.level(i)) {
                    push(Axiom::C2Second, i, s, format!("K_{i} is not in the interior of L_{i}"));
                }
            }
        }
    }

    violations.sort_by_key(|v| (axioms.iter().position(|a| *a == v.axiom), v.level));
    Ok(ValidationReport {
        variant,
        violations,
    })
}

/// `L_0 = R_0` and `L_{i+1} = p_i⁻¹(K_i)`: the closed subpolyhedra that turn a
/// (weakly) compactohedral tower into a (weakly) pre-compactohedral one.
pub fn induced_l_marks(t: &ComplexTower) -> Result<Vec<SimplicialComplex>, CompactohedralError> {
    let ks = t.marked_k().ok_or(CompactohedralError::MissingMarks("K"))?;
    let mut ls = vec![t.level(0).clone()];
    ls.extend(t.bonds().iter().zip(ks).map(|(p, k)| p.preimage(k)));
    Ok(ls)
}
