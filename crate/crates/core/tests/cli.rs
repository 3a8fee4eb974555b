mod common;

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use steenrod::cli::document::{
    ComplexPayload, ComplexTowerPayload, CoverPayload, DocumentEnvelope, FiltrationPayload, GroupTowerPayload,
    MapPayload, Payload, PointSamplePayload,
};
use steenrod::cli::run;
use steenrod::compactohedral::{build_gallery, GalleryFamily};
use steenrod::nerve::{Ball, BallCover, PointSample};
use steenrod::simplicial::{SimplicialComplex, SimplicialMap};
use steenrod::tower::GroupTower;
use steenrod::abelian::{FGAbelianGroup, GroupHom, IntegerMatrix};

use common::*;

static COUNTER: AtomicUsize = AtomicUsize::new(0);

fn scratch(text: &str) -> String {
    let n = COUNTER.fetch_add(1, Ordering::SeqCst);
    let dir: PathBuf = std::env::temp_dir().join(format!("steenrod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("doc{n}.json"));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn doc(p: Payload) -> String {
    scratch(&DocumentEnvelope::new(p).to_json())
}

fn complex_doc(k: &SimplicialComplex) -> String {
    doc(Payload::Complex(ComplexPayload::from_complex(k)))
}

fn steenrod(args: &[&str]) -> steenrod::cli::Outcome {
    run(std::iter::once("steenrod").chain(args.iter().copied()))
}

fn cycle(n: u32) -> SimplicialComplex {
    SimplicialComplex::from_maximal((0..n).map(|i| [i, (i + 1) % n]))
}

#[test]
fn torus_homology() {
    let f = complex_doc(&torus7());
    let o = steenrod(&["homology", &f, "--dim", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "H_1 = Z^2\n");
    let all = steenrod(&["homology", &f]);
    assert_eq!(all.stdout, "H_0 = Z\nH_1 = Z^2\nH_2 = Z\n");
    let s = steenrod(&["homology", &f, "--dim", "1", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&s.stdout).unwrap();
    assert_eq!(v["groups"][0]["group"]["free_rank"], 2);
}

#[test]
fn projective_plane_homology_and_cohomology() {
    let f = complex_doc(&rp2());
    assert_eq!(steenrod(&["homology", &f]).stdout, "H_0 = Z\nH_1 = Z/2\nH_2 = 0\n");
    assert_eq!(steenrod(&["homology", &f, "--dim", "0", "--reduced"]).stdout, "H~_0 = 0\n");
    assert_eq!(steenrod(&["cohomology", &f]).stdout, "H^0 = Z\nH^1 = 0\nH^2 = Z/2\n");
}

#[test]
fn induced_wrap_map() {
    let f = SimplicialMap::new(cycle(6), cycle(3), (0..6).map(|i| (i, i % 3)).collect()).unwrap();
    let path = doc(Payload::Map(MapPayload::from_map(&f)));
    let o = steenrod(&["induced", &path, "--dim", "1"]);
    assert_eq!(o.stdout, "H_1(f): Z -> Z\nmatrix: [[2]]\n");
    let c = steenrod(&["induced", &path, "--dim", "1", "--cohomology"]);
    assert_eq!(c.stdout, "H^1(f): Z -> Z\nmatrix: [[2]]\n");
}

#[test]
fn example_tower_validates() {
    let g = steenrod(&["gallery", "example_4_11", "--depth", "3"]);
    assert_eq!(g.code, 0, "{}", g.stderr);
    let path = scratch(&g.stdout);
    let o = steenrod(&["validate", &path, "--variant", "compactohedral"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "PASS (C0..C3)\n");
    let w = steenrod(&["validate", &path, "--variant", "pre", "--induce-l"]);
    assert_eq!(w.code, 0, "{}", w.stdout);
    let missing = steenrod(&["validate", &path, "--variant", "pre"]);
    assert_eq!(missing.code, 2);
}

#[test]
fn failing_validation_exits_two_and_names_axiom() {
    let k0 = SimplicialComplex::simplex([0]);
    let k1 = SimplicialComplex::simplex([0, 1]);
    let path3 = SimplicialComplex::from_maximal([[0, 1], [1, 2]]);
    let t = steenrod::tower::ComplexTower::from_vertex_maps(
        vec![path3.clone(), path3],
        vec![(0..3).map(|v| (v, v)).collect()],
    )
    .unwrap()
    .with_marked_k(vec![k0, k1])
    .unwrap();
    let path = doc(Payload::ComplexTower(ComplexTowerPayload::from_tower(&t)));
    let o = steenrod(&["validate", &path]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.starts_with("FAIL") && o.stdout.contains("C1 at level 1"), "{}", o.stdout);
    let s = steenrod(&["validate", &path, "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&s.stdout).unwrap();
    assert_eq!(v["failed_axioms"], serde_json::json!(["C1"]));
}

#[test]
fn pinched_dyadic_telescope() {
    let g = steenrod(&["gallery", "solenoid", "--p", "2", "--depth", "3"]);
    let path = scratch(&g.stdout);
    let o = steenrod(&["pinch", &path, "--depth", "2", "--dim", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.ends_with("H_1 = Z/4\n"), "{}", o.stdout);
    let t = steenrod(&["telescope", &path, "--dim", "1"]);
    assert!(t.stdout.ends_with("H_1 = Z\n"), "{}", t.stdout);
    let bad = steenrod(&["pinch", &path, "--depth", "0"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn tower_reports() {
    let comb = scratch(&steenrod(&["gallery", "comb", "--teeth", "6", "--depth", "3"]).stdout);
    let s = steenrod(&["tower-report", &comb, "--report", "steenrod", "--dim", "1"]);
    assert!(s.stdout.contains("H_1(X) = 0"), "{}", s.stdout);
    let c = steenrod(&["tower-report", &comb, "--report", "cech", "--dim", "1"]);
    assert!(c.stdout.starts_with("H^1(X): not finitely stable"), "{}", c.stdout);
    // colimit of x2 on Z is Z[1/2], which no finite level captures
    let sol = scratch(&steenrod(&["gallery", "solenoid", "--p", "2", "--depth", "4"]).stdout);
    let c = steenrod(&["tower-report", &sol, "--report", "cech", "--dim", "1", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&c.stdout).unwrap();
    assert_eq!(v["status"], "not_finitely_stable");
    let warsaw = scratch(&steenrod(&["gallery", "warsaw", "--depth", "4"]).stdout);
    let c = steenrod(&["tower-report", &warsaw, "--report", "cech", "--dim", "1"]);
    assert_eq!(c.stdout, "H^1(X) = Z (stable from index 0)\n");
    let filt = doc(Payload::Filtration(FiltrationPayload {
        steps: vec![ComplexPayload::from_complex(&cycle(3))],
    }));
    let p = steenrod(&["tower-report", &filt, "--report", "petkova", "--dim", "1"]);
    assert!(p.stdout.contains("H^1(X) = Z"), "{}", p.stdout);
}

#[test]
fn unmarked_tower_cannot_be_validated() {
    let t = steenrod::tower::ComplexTower::new(vec![cycle(3)], vec![]).unwrap();
    let path = doc(Payload::ComplexTower(ComplexTowerPayload::from_tower(&t)));
    let o = steenrod(&["tower-report", &path]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("steenrod report"), "{}", o.stderr);
    let trusted = steenrod(&["tower-report", &path, "--trusted", "--dim", "1"]);
    assert_eq!(trusted.code, 0, "{}", trusted.stderr);
}

fn ring_sample() -> PointSample {
    let pts = [
        (10, 0), (9, 5), (5, 9), (0, 10), (-5, 9), (-9, 5),
        (-10, 0), (-9, -5), (-5, -9), (0, -10), (5, -9), (9, -5),
    ];
    PointSample::new(pts.iter().map(|&(x, y)| vec![q(x, 1), q(y, 1)]).collect(), 0..12).unwrap()
}

#[test]
fn nerve_and_lebesgue() {
    let s = doc(Payload::PointSample(PointSamplePayload::from_sample(&ring_sample())));
    let arcs = BallCover::new([0, 4, 8].iter().map(|&c| Ball { center: c, radius: q(10, 1) }).collect());
    let c = doc(Payload::Cover(CoverPayload::from_cover(&arcs)));
    let n = steenrod(&["nerve", &s, &c, "--dim", "1"]);
    assert_eq!(n.stdout, "nerve: f-vector (3, 3)\nH_1 = Z\n");
    let l = steenrod(&["lebesgue", &s, &c]);
    assert_eq!(l.code, 0, "{}", l.stderr);
    assert!(l.stdout.starts_with("lebesgue number = "));
    let t = steenrod(&["nerve", &s, &c, "--schedule", "3,2,1"]);
    assert_eq!(t.code, 0, "{}", t.stderr);
    assert_eq!(t.stdout.lines().count(), 3);
    let bad = steenrod(&["nerve", &s, &c, "--schedule", "1,2"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn uncovered_point_is_a_math_error() {
    let s = doc(Payload::PointSample(PointSamplePayload::from_sample(&ring_sample())));
    let c = doc(Payload::Cover(CoverPayload::from_cover(&BallCover::new(vec![Ball {
        center: 0,
        radius: q(1, 2),
    }]))));
    let o = steenrod(&["lebesgue", &s, &c]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("lebesgue"), "{}", o.stderr);
}

#[test]
fn input_errors_name_file_and_line() {
    let truncated = scratch("{\n  \"format_version\": \"1\",\n  \"kind\": \"complex\",\n  \"payload\": {\"maximal_simplices\": [[0, 1]\n");
    let o = steenrod(&["homology", &truncated]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains(&truncated) && o.stderr.contains("line"), "{}", o.stderr);

    let no_payload = scratch("{\"format_version\": \"1\", \"kind\": \"complex\"}");
    let o = steenrod(&["homology", &no_payload]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("missing field `payload`"), "{}", o.stderr);

    let no_levels = scratch("{\"format_version\": \"1\", \"kind\": \"complex_tower\", \"payload\": {\"bonds\": []}}");
    let o = steenrod(&["validate", &no_levels]);
    assert!(o.stderr.contains("missing field `levels`"), "{}", o.stderr);

    let future = scratch("{\"format_version\": \"9\", \"kind\": \"complex\", \"payload\": {}}");
    let o = steenrod(&["homology", &future]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("format version"), "{}", o.stderr);

    let wrong = complex_doc(&cycle(3));
    let o = steenrod(&["validate", &wrong]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("expected a complex_tower document"), "{}", o.stderr);

    let not_simplicial = scratch(
        r#"{"format_version": "1", "kind": "map", "payload": {
            "source": {"maximal_simplices": [[0, 1]]},
            "target": {"maximal_simplices": [[0], [1]]},
            "vertex_map": [[0, 0], [1, 1]]}}"#,
    );
    assert_eq!(steenrod(&["induced", &not_simplicial]).code, 1);
}

#[test]
fn reports_are_deterministic() {
    let args = ["gallery", "example_4_11", "--depth", "3", "--report", "steenrod", "--dim", "1"];
    let a = steenrod(&args);
    let b = steenrod(&args);
    assert_eq!(a, b);
    let g1 = steenrod(&["gallery", "comb", "--teeth", "5", "--depth", "3"]);
    let g2 = steenrod(&["gallery", "comb", "--teeth", "5", "--depth", "3"]);
    assert_eq!(g1.stdout, g2.stdout);
}

fn round_trip(p: Payload) {
    let d = DocumentEnvelope::new(p);
    let text = d.to_json();
    assert_eq!(DocumentEnvelope::from_json(&text).unwrap(), d);
}

#[test]
fn every_kind_round_trips() {
    round_trip(Payload::Complex(ComplexPayload::from_complex(&rp2())));
    let f = SimplicialMap::new(cycle(6), cycle(3), (0..6).map(|i| (i, i % 3)).collect()).unwrap();
    round_trip(Payload::Map(MapPayload::from_map(&f)));
    let z6 = FGAbelianGroup::cyclic(6);
    let gt = GroupTower::periodic(&GroupHom::new(z6.clone(), z6, IntegerMatrix::from_rows(1, &[[5]])).unwrap()).unwrap();
    round_trip(Payload::GroupTower(GroupTowerPayload::from_tower(&gt)));
    for fam in [GalleryFamily::Comb { teeth: 5 }, GalleryFamily::Solenoid { p: 3 }, GalleryFamily::Example411 { teeth: 4 }] {
        let t = build_gallery(&fam, 3).unwrap();
        round_trip(Payload::ComplexTower(ComplexTowerPayload::from_tower(&t)));
    }
    round_trip(Payload::Filtration(FiltrationPayload {
        steps: vec![ComplexPayload::from_complex(&cycle(3)), ComplexPayload::from_complex(&torus7())],
    }));
    round_trip(Payload::PointSample(PointSamplePayload::from_sample(&ring_sample())));
    round_trip(Payload::Cover(CoverPayload::from_cover(&BallCover::new(vec![Ball {
        center: 2,
        radius: q(7, 3),
    }]))));
}

#[test]
fn loaded_objects_match_originals() {
    let k = rp2();
    let p = ComplexPayload::from_complex(&k);
    assert_eq!(p.maximal_simplices.len(), 10);
    assert_eq!(p.to_complex(), k);
    let z6 = FGAbelianGroup::cyclic(6);
    let gt = GroupTower::periodic(&GroupHom::new(z6.clone(), z6, IntegerMatrix::from_rows(1, &[[5]])).unwrap()).unwrap();
    let back = GroupTowerPayload::from_tower(&gt).to_tower().unwrap();
    assert_eq!(back.depth(), gt.depth());
    assert!(back.bond(0).same_map(&gt.bond(0).with_canonical_groups()) || back.bond(0).canonical_matrix() == gt.bond(0).canonical_matrix());
    let t = build_gallery(&GalleryFamily::Comb { teeth: 5 }, 3).unwrap();
    let back = ComplexTowerPayload::from_tower(&t).to_tower().unwrap();
    assert_eq!(back.certificate(), t.certificate());
    for i in 0..3 {
        assert_eq!(back.level(i), t.level(i));
    }
}
