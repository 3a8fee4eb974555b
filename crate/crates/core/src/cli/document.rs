//! JSON documents: an envelope with a version and a kind around a payload.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{FGAbelianGroup, GroupHom, IntegerMatrix};
use crate::nerve::{Ball, BallCover, PointSample};
use crate::simplicial::{Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::tower::{Certificate, ComplexTower, GroupCertificate, GroupTower, TowerError};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Complex,
    Map,
    GroupTower,
    ComplexTower,
    Filtration,
    PointSample,
    Cover,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Complex => "complex",
            Kind::Map => "map",
            Kind::GroupTower => "group_tower",
            Kind::ComplexTower => "complex_tower",
            Kind::Filtration => "filtration",
            Kind::PointSample => "point_sample",
            Kind::Cover => "cover",
        }
    }
}

/// An arbitrary-precision integer, written as a JSON number when it fits in
/// 64 bits and as a decimal string otherwise. Both forms are accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        BigInt::from_str(v.trim())
            .map(Int)
            .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// A rational number, written as `"p/q"` or an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a string \"p/q\" with q nonzero")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        let bad = || E::invalid_value(de::Unexpected::Str(v), &self);
        let (n, d) = match v.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (v.trim(), "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexPayload {
    /// Faces are closed on load.
    pub maximal_simplices: Vec<Simplex>,
}

impl ComplexPayload {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        Self {
            maximal_simplices: k.maximal_simplices(),
        }
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_maximal(self.maximal_simplices.iter().cloned())
    }
}

fn pairs(m: &BTreeMap<Vertex, Vertex>) -> Vec<(Vertex, Vertex)> {
    m.iter().map(|(&a, &b)| (a, b)).collect()
}

fn vertex_map(pairs: &[(Vertex, Vertex)]) -> Result<BTreeMap<Vertex, Vertex>, String> {
    let mut m = BTreeMap::new();
    for &(a, b) in pairs {
        if m.insert(a, b).is_some_and(|old| old != b) {
            return Err(format!("vertex {a} is sent to two different vertices"));
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapPayload {
    pub source: ComplexPayload,
    pub target: ComplexPayload,
    /// `[v, f(v)]` pairs.
    pub vertex_map: Vec<(Vertex, Vertex)>,
}

impl MapPayload {
    pub fn from_map(f: &SimplicialMap) -> Self {
        Self {
            source: ComplexPayload::from_complex(f.source()),
            target: ComplexPayload::from_complex(f.target()),
            vertex_map: pairs(f.vertex_map()),
        }
    }

    pub fn to_map(&self) -> Result<SimplicialMap, String> {
        SimplicialMap::new(self.source.to_complex(), self.target.to_complex(), vertex_map(&self.vertex_map)?)
            .map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupPayload {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<Int>,
}

impl GroupPayload {
    pub fn from_group(g: &FGAbelianGroup) -> Self {
        Self {
            free_rank: g.free_rank(),
            torsion: g.torsion().iter().cloned().map(Int).collect(),
        }
    }

    pub fn to_group(&self) -> Result<FGAbelianGroup, String> {
        FGAbelianGroup::from_invariants(self.free_rank, self.torsion.iter().map(|t| t.0.clone()).collect())
            .map_err(|e| e.to_string())
    }
}

/// Bonds are matrices in canonical coordinates of the source and target
/// levels, one row per target coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTowerPayload {
    pub levels: Vec<GroupPayload>,
    pub bonds: Vec<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<GroupCertificate>,
}

fn matrix_rows(m: &IntegerMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| m.row(i).iter().cloned().map(Int).collect()).collect()
}

fn matrix(rows: &[Vec<Int>], shape: (usize, usize)) -> Result<IntegerMatrix, String> {
    let (r, c) = shape;
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(format!("expected a {r}x{c} matrix"));
    }
    Ok(IntegerMatrix::from_vec(
        r,
        c,
        rows.iter().flatten().map(|x| x.0.clone()).collect(),
    ))
}

impl GroupTowerPayload {
    pub fn from_tower(t: &GroupTower) -> Self {
        Self {
            levels: t.levels().iter().map(GroupPayload::from_group).collect(),
            bonds: t.bonds().iter().map(|b| matrix_rows(&b.canonical_matrix())).collect(),
            certificate: t.certificate().cloned(),
        }
    }

    pub fn to_tower(&self) -> Result<GroupTower, LoadError> {
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, g)| g.to_group().map_err(|e| LoadError::at(format!("payload.levels[{i}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        if self.bonds.len() + 1 != levels.len() {
            return Err(LoadError::at(
                "payload.bonds",
                format!("{} levels need {} bonds", levels.len(), levels.len().saturating_sub(1)),
            ));
        }
        let bonds = self
            .bonds
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                let (src, tgt) = (&levels[i + 1], &levels[i]);
                matrix(rows, (tgt.canonical_rank(), src.canonical_rank()))
                    .and_then(|m| GroupHom::from_canonical_matrix(src.clone(), tgt.clone(), &m).map_err(|e| e.to_string()))
                    .map_err(|e| LoadError::at(format!("payload.bonds[{i}]"), e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GroupTower::new(levels, bonds, self.certificate.clone()).map_err(LoadError::tower)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexTowerPayload {
    pub levels: Vec<ComplexPayload>,
    /// `bonds[i]` sends level `i+1` to level `i`, as `[v, f(v)]` pairs.
    pub bonds: Vec<Vec<(Vertex, Vertex)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_k: Option<Vec<ComplexPayload>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_l: Option<Vec<ComplexPayload>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl ComplexTowerPayload {
    pub fn from_tower(t: &ComplexTower) -> Self {
        let marks = |m: Option<&[SimplicialComplex]>| m.map(|m| m.iter().map(ComplexPayload::from_complex).collect());
        Self {
            levels: (0..t.depth()).map(|i| ComplexPayload::from_complex(t.level(i))).collect(),
            bonds: t.bonds().iter().map(|b| pairs(b.vertex_map())).collect(),
            marked_k: marks(t.marked_k()),
            marked_l: marks(t.marked_l()),
            certificate: t.certificate().cloned(),
        }
    }

    pub fn to_tower(&self) -> Result<ComplexTower, LoadError> {
        let levels = self.levels.iter().map(ComplexPayload::to_complex).collect();
        let maps = self
            .bonds
            .iter()
            .enumerate()
            .map(|(i, p)| vertex_map(p).map_err(|e| LoadError::at(format!("payload.bonds[{i}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut t = ComplexTower::from_vertex_maps(levels, maps).map_err(LoadError::tower)?;
        if let Some(k) = &self.marked_k {
            t = t
                .with_marked_k(k.iter().map(ComplexPayload::to_complex).collect())
                .map_err(|e| LoadError::at("payload.marked_k", e.to_string()))?;
        }
        if let Some(l) = &self.marked_l {
            t = t
                .with_marked_l(l.iter().map(ComplexPayload::to_complex).collect())
                .map_err(|e| LoadError::at("payload.marked_l", e.to_string()))?;
        }
        if let Some(c) = &self.certificate {
            t = t.with_certificate(c.clone()).map_err(LoadError::tower)?;
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationPayload {
    /// Nested complexes, smallest first.
    pub steps: Vec<ComplexPayload>,
}

impl FiltrationPayload {
    pub fn to_filtration(&self) -> Vec<SimplicialComplex> {
        self.steps.iter().map(ComplexPayload::to_complex).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSamplePayload {
    pub points: Vec<Vec<Rational>>,
    /// Indices of the points sampling the compactum.
    #[serde(default)]
    pub compactum_mark: Vec<usize>,
}

impl PointSamplePayload {
    pub fn from_sample(s: &PointSample) -> Self {
        Self {
            points: s.points().iter().map(|p| p.iter().cloned().map(Rational).collect()).collect(),
            compactum_mark: s.compactum_mark().iter().copied().collect(),
        }
    }

    pub fn to_sample(&self) -> Result<PointSample, LoadError> {
        let points = self.points.iter().map(|p| p.iter().map(|x| x.0.clone()).collect()).collect();
        PointSample::new(points, self.compactum_mark.iter().copied()).map_err(|e| LoadError::at("payload", e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallPayload {
    pub center: usize,
    pub radius: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverPayload {
    pub elements: Vec<BallPayload>,
}

impl CoverPayload {
    pub fn from_cover(c: &BallCover) -> Self {
        Self {
            elements: c
                .elements
                .iter()
                .map(|b| BallPayload {
                    center: b.center,
                    radius: Rational(b.radius.clone()),
                })
                .collect(),
        }
    }

    pub fn to_cover(&self) -> BallCover {
        BallCover::new(
            self.elements
                .iter()
                .map(|b| Ball {
                    center: b.center,
                    radius: b.radius.0.clone(),
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Complex(ComplexPayload),
    Map(MapPayload),
    GroupTower(GroupTowerPayload),
    ComplexTower(ComplexTowerPayload),
    Filtration(FiltrationPayload),
    PointSample(PointSamplePayload),
    Cover(CoverPayload),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Complex(_) => Kind::Complex,
            Payload::Map(_) => Kind::Map,
            Payload::GroupTower(_) => Kind::GroupTower,
            Payload::ComplexTower(_) => Kind::ComplexTower,
            Payload::Filtration(_) => Kind::Filtration,
            Payload::PointSample(_) => Kind::PointSample,
            Payload::Cover(_) => Kind::Cover,
        }
    }
}

/// A parsed document. `format_version` is always [`FORMAT_VERSION`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentEnvelope {
    pub payload: Payload,
}

#[derive(Serialize)]
struct EnvelopeOut<'a, P> {
    format_version: &'a str,
    kind: Kind,
    payload: &'a P,
}

#[derive(Deserialize)]
struct EnvelopeHead {
    format_version: Option<serde_json::Value>,
    kind: Option<serde_json::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvelopeIn<P> {
    #[allow(dead_code)]
    format_version: String,
    #[allow(dead_code)]
    kind: Kind,
    payload: P,
}

/// Why a document could not be loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub path: String,
    pub message: String,
    /// A certificate failed verification; this is a mathematical failure
    /// rather than a malformed document.
    pub rejected_certificate: bool,
}

impl LoadError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            line: None,
            column: None,
            path: path.into(),
            message: message.into(),
            rejected_certificate: false,
        }
    }

    fn tower(e: TowerError) -> Self {
        let rejected = matches!(e, TowerError::CertificateRejected(_));
        let path = match &e {
            TowerError::BondMismatch { index, .. } => format!("payload.bonds[{index}]"),
            TowerError::CertificateRejected(_) => "payload.certificate".into(),
            _ => "payload".into(),
        };
        Self {
            rejected_certificate: rejected,
            ..Self::at(path, e.to_string())
        }
    }
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "line {l} column {c}: ")?;
        }
        if !self.path.is_empty() && self.path != "." {
            write!(f, "{}: ", self.path)?;
        }
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for LoadError {}

fn typed<P: DeserializeOwned>(text: &str) -> Result<P, LoadError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let env: EnvelopeIn<P> = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        LoadError {
            line: Some(inner.line()),
            column: Some(inner.column()),
            ..LoadError::at(path, inner.to_string())
        }
    })?;
    de.end().map_err(|e| LoadError {
        line: Some(e.line()),
        column: Some(e.column()),
        ..LoadError::at("", e.to_string())
    })?;
    Ok(env.payload)
}

impl DocumentEnvelope {
    pub fn new(payload: Payload) -> Self {
        Self { payload }
    }

    pub fn kind(&self) -> Kind {
        self.payload.kind()
    }

    pub fn to_json(&self) -> String {
        fn out<P: Serialize>(kind: Kind, p: &P) -> String {
            let env = EnvelopeOut {
                format_version: FORMAT_VERSION,
                kind,
                payload: p,
            };
            serde_json::to_string_pretty(&env).expect("documents serialize")
        }
        let kind = self.kind();
        let mut s = match &self.payload {
            Payload::Complex(p) => out(kind, p),
            Payload::Map(p) => out(kind, p),
            Payload::GroupTower(p) => out(kind, p),
            Payload::ComplexTower(p) => out(kind, p),
            Payload::Filtration(p) => out(kind, p),
            Payload::PointSample(p) => out(kind, p),
            Payload::Cover(p) => out(kind, p),
        };
        s.push('\n');
        s
    }

    /// Checks the version and kind before reading the payload.
    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        let head: EnvelopeHead = serde_json::from_str(text).map_err(|e| LoadError {
            line: Some(e.line()),
            column: Some(e.column()),
            ..LoadError::at("", e.to_string())
        })?;
        match head.format_version {
            None => return Err(LoadError::at("format_version", "missing field `format_version`")),
            Some(serde_json::Value::String(v)) if v == FORMAT_VERSION => {}
            Some(v) => {
                return Err(LoadError::at(
                    "format_version",
                    format!("unknown format version {v}, expected \"{FORMAT_VERSION}\""),
                ))
            }
        }
        let kind: Kind = match head.kind {
            None => return Err(LoadError::at("kind", "missing field `kind`")),
            Some(k) => serde_json::from_value(k.clone())
                .map_err(|_| LoadError::at("kind", format!("unknown document kind {k}")))?,
        };
        let payload = match kind {
            Kind::Complex => Payload::Complex(typed(text)?),
            Kind::Map => Payload::Map(typed(text)?),
            Kind::GroupTower => Payload::GroupTower(typed(text)?),
            Kind::ComplexTower => Payload::ComplexTower(typed(text)?),
            Kind::Filtration => Payload::Filtration(typed(text)?),
            Kind::PointSample => Payload::PointSample(typed(text)?),
            Kind::Cover => Payload::Cover(typed(text)?),
        };
        Ok(Self { payload })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_accept_numbers_and_strings() {
        let v: Vec<Int> = serde_json::from_str(r#"[3, "-7", "123456789012345678901234567890"]"#).unwrap();
        assert_eq!(v[1].0, BigInt::from(-7));
        let back = serde_json::to_string(&v).unwrap();
        assert_eq!(back, r#"[3,-7,"123456789012345678901234567890"]"#);
    }

    #[test]
    fn rationals_parse_and_normalize() {
        let v: Vec<Rational> = serde_json::from_str(r#"["2/4", 3, "-1/3"]"#).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","3","-1/3"]"#);
        assert!(serde_json::from_str::<Rational>(r#""1/0""#).is_err());
    }

    #[test]
    fn unknown_version_is_rejected_before_payload() {
        let text = r#"{"format_version": "2", "kind": "complex", "payload": {"nonsense": true}}"#;
        let e = DocumentEnvelope::from_json(text).unwrap_err();
        assert_eq!(e.path, "format_version");
    }

    #[test]
    fn missing_field_is_named_with_line() {
        let text = "{\n  \"format_version\": \"1\",\n  \"kind\": \"complex_tower\",\n  \"payload\": {\n    \"levels\": []\n  }\n}\n";
        let e = DocumentEnvelope::from_json(text).unwrap_err();
        assert!(e.message.contains("missing field `bonds`"), "{e}");
        assert!(e.line.is_some());
    }

    #[test]
    fn empty_simplex_is_rejected() {
        let text = r#"{"format_version": "1", "kind": "complex", "payload": {"maximal_simplices": [[0, 1], []]}}"#;
        let e = DocumentEnvelope::from_json(text).unwrap_err();
        assert!(e.path.contains("maximal_simplices[1]"), "{e}");
    }
}
