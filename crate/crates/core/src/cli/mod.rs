//! Command line front end. [`run`] is a pure function of its arguments and
//! the files they name.

pub mod document;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abelian::{FGAbelianGroup, GroupHom};
use crate::assembly::{
    cech_cohomology_report, petkova_report, steenrod_report, Middle, ResolutionCheck, RightEnd, SESReport,
};
use crate::compactohedral::{build_gallery, induced_l_marks, validate, GalleryFamily, ValidationReport, Variant};
use crate::nerve::{cech_tower, lebesgue_number, nerve, BallCover, PointSample};
use crate::simplicial::{
    cohomology_result, finite_telescope, homology, induced_cohomology_map, induced_map, pinched_telescope,
    SimplicialComplex, SimplicialMap,
};
use crate::tower::{homology_tower, ColimOutcome, ComplexTower};
use document::{
    ComplexPayload, ComplexTowerPayload, DocumentEnvelope, GroupPayload, Kind, LoadError, Payload, Rational,
};

/// Exit status and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CliError {
    /// Malformed input or arguments; exit status 1.
    Input(String),
    /// A mathematical precondition failed; exit status 2.
    Math(String),
}

type CliResult<T> = Result<T, CliError>;

fn math(op: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Math(format!("{op}: {e}"))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TowerReportKind {
    Steenrod,
    Cech,
    Petkova,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GalleryReport {
    /// Print the tower as a document.
    Document,
    Steenrod,
    Cech,
    Validate,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Comb,
    Solenoid,
    Warsaw,
    #[value(name = "example_4_11", alias = "example-4-11")]
    Example411,
}

#[derive(Parser, Debug)]
#[command(name = "steenrod", version, about = "Homology of towers of finite simplicial complexes")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology of a complex.
    Homology {
        file: String,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        reduced: bool,
    },
    /// Integral cohomology of a complex.
    Cohomology {
        file: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// The map induced by a simplicial map in one degree.
    Induced {
        file: String,
        #[arg(long, default_value_t = 0)]
        dim: usize,
        #[arg(long)]
        reduced: bool,
        /// Use cohomology instead of homology.
        #[arg(long)]
        cohomology: bool,
    },
    /// Finite mapping telescope of a complex tower through a level.
    Telescope {
        file: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Finite telescope with a cone on its last level.
    Pinch {
        file: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Short exact sequence report for a tower or filtration.
    TowerReport {
        file: String,
        #[arg(long, value_enum, default_value_t = TowerReportKind::Steenrod)]
        report: TowerReportKind,
        #[arg(long, default_value_t = 0)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        window: usize,
        #[arg(long, default_value = "compactohedral")]
        variant: Variant,
        /// Skip validation and take the tower as a resolution.
        #[arg(long)]
        trusted: bool,
    },
    /// Check the compactohedral axioms of a marked tower.
    Validate {
        file: String,
        #[arg(long, default_value = "compactohedral")]
        variant: Variant,
        /// Fill in missing L marks from the K marks.
        #[arg(long)]
        induce_l: bool,
    },
    /// Nerve of a ball cover of a point sample, or with `--schedule` the
    /// tower of nerves.
    Nerve {
        sample: String,
        cover: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Comma separated radii, strictly decreasing.
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<String>>,
    },
    /// Lebesgue number of a ball cover over a point sample.
    Lebesgue { sample: String, cover: String },
    /// Build a certified example tower.
    Gallery {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        teeth: Option<usize>,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = GalleryReport::Document)]
        report: GalleryReport,
        #[arg(long, default_value_t = 0)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        window: usize,
        #[arg(long, default_value = "compactohedral")]
        variant: Variant,
    },
}

/// Output of one command in both renderings.
struct Report {
    text: String,
    structured: Value,
    /// Nonzero when the command ran but its verdict is a failure.
    code: i32,
}

impl Report {
    fn ok(text: String, structured: Value) -> Self {
        Self {
            text,
            structured,
            code: 0,
        }
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&r.structured).expect("reports serialize");
                    s.push('\n');
                    s
                }
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(CliError::Input(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(CliError::Math(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn load(path: &str) -> CliResult<DocumentEnvelope> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: cannot read: {e}")))?;
    DocumentEnvelope::from_json(&text).map_err(|e| load_error(path, e))
}

fn load_error(path: &str, e: LoadError) -> CliError {
    if e.rejected_certificate {
        CliError::Math(format!("{path}: {e}"))
    } else {
        CliError::Input(format!("{path}: {e}"))
    }
}

fn wrong_kind(path: &str, expected: Kind, found: Kind) -> CliError {
    CliError::Input(format!(
        "{path}: expected a {} document, found {}",
        expected.name(),
        found.name()
    ))
}

fn load_complex(path: &str) -> CliResult<SimplicialComplex> {
    match load(path)?.payload {
        Payload::Complex(p) => Ok(p.to_complex()),
        other => Err(wrong_kind(path, Kind::Complex, other.kind())),
    }
}

fn load_map(path: &str) -> CliResult<SimplicialMap> {
    match load(path)?.payload {
        Payload::Map(p) => p.to_map().map_err(|e| CliError::Input(format!("{path}: payload: {e}"))),
        other => Err(wrong_kind(path, Kind::Map, other.kind())),
    }
}

fn load_tower(path: &str) -> CliResult<ComplexTower> {
    match load(path)?.payload {
        Payload::ComplexTower(p) => p.to_tower().map_err(|e| load_error(path, e)),
        other => Err(wrong_kind(path, Kind::ComplexTower, other.kind())),
    }
}

fn load_filtration(path: &str) -> CliResult<Vec<SimplicialComplex>> {
    match load(path)?.payload {
        Payload::Filtration(p) => Ok(p.to_filtration()),
        other => Err(wrong_kind(path, Kind::Filtration, other.kind())),
    }
}

fn load_sample(path: &str) -> CliResult<PointSample> {
    match load(path)?.payload {
        Payload::PointSample(p) => p.to_sample().map_err(|e| load_error(path, e)),
        other => Err(wrong_kind(path, Kind::PointSample, other.kind())),
    }
}

fn load_cover(path: &str) -> CliResult<BallCover> {
    match load(path)?.payload {
        Payload::Cover(p) => Ok(p.to_cover()),
        other => Err(wrong_kind(path, Kind::Cover, other.kind())),
    }
}

fn group_json(g: &FGAbelianGroup) -> Value {
    let p = GroupPayload::from_group(g);
    json!({
        "free_rank": p.free_rank,
        "torsion": p.torsion,
        "display": g.to_string(),
    })
}

fn hom_json(h: &GroupHom) -> Value {
    let m = h.canonical_matrix();
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect();
    json!({
        "source": group_json(&h.source().canonical()),
        "target": group_json(&h.target().canonical()),
        "matrix": rows,
    })
}

fn h_name(n: usize, reduced: bool) -> String {
    if reduced {
        format!("H~_{n}")
    } else {
        format!("H_{n}")
    }
}

fn top_dim(k: &SimplicialComplex) -> usize {
    usize::try_from(k.dim()).unwrap_or(0)
}

fn dims(k: &SimplicialComplex, dim: Option<usize>) -> Vec<usize> {
    match dim {
        Some(d) => vec![d],
        None => (0..=top_dim(k)).collect(),
    }
}

fn homology_lines(k: &SimplicialComplex, dims: &[usize], reduced: bool) -> (String, Vec<Value>) {
    let mut text = String::new();
    let mut groups = Vec::new();
    for &n in dims {
        let g = homology(k, n, reduced).group().canonical();
        let _ = writeln!(text, "{} = {g}", h_name(n, reduced));
        groups.push(json!({ "dimension": n, "group": group_json(&g) }));
    }
    (text, groups)
}

fn f_vector_text(k: &SimplicialComplex) -> String {
    let f: Vec<String> = k.f_vector().iter().map(usize::to_string).collect();
    format!("({})", f.join(", "))
}

fn execute(cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Homology { file, dim, reduced } => {
            let k = load_complex(file)?;
            let (text, groups) = homology_lines(&k, &dims(&k, *dim), *reduced);
            Ok(Report::ok(
                text,
                json!({ "command": "homology", "reduced": reduced, "groups": groups }),
            ))
        }
        Command::Cohomology { file, dim } => {
            let k = load_complex(file)?;
            let mut text = String::new();
            let mut groups = Vec::new();
            for n in dims(&k, *dim) {
                let g = cohomology_result(&k, n).group().canonical();
                let _ = writeln!(text, "H^{n} = {g}");
                groups.push(json!({ "dimension": n, "group": group_json(&g) }));
            }
            Ok(Report::ok(text, json!({ "command": "cohomology", "groups": groups })))
        }
        Command::Induced {
            file,
            dim,
            reduced,
            cohomology,
        } => {
            let f = load_map(file)?;
            let (name, h) = if *cohomology {
                let src = cohomology_result(f.source(), *dim);
                let tgt = cohomology_result(f.target(), *dim);
                (format!("H^{dim}(f)"), induced_cohomology_map(&f, *dim, &src, &tgt))
            } else {
                (format!("{}(f)", h_name(*dim, *reduced)), induced_map(&f, *dim, *reduced))
            };
            let text = format!(
                "{name}: {} -> {}\nmatrix: {}\n",
                h.source().canonical(),
                h.target().canonical(),
                h.canonical_matrix()
            );
            let mut s = hom_json(&h);
            s["command"] = json!("induced");
            s["name"] = json!(name);
            Ok(Report::ok(text, s))
        }
        Command::Telescope { file, depth, dim } => {
            let t = load_tower(file)?;
            let n = depth.unwrap_or(t.depth() - 1);
            let tel = finite_telescope(&t, n).map_err(|e| math("telescope", e))?;
            Ok(glued_report("telescope", n, &tel.complex, *dim))
        }
        Command::Pinch { file, depth, dim } => {
            let t = load_tower(file)?;
            let n = depth.unwrap_or(t.depth() - 1);
            let k = pinched_telescope(&t, n).map_err(|e| math("pinch", e))?;
            Ok(glued_report("pinch", n, &k, *dim))
        }
        Command::TowerReport {
            file,
            report,
            dim,
            window,
            variant,
            trusted,
        } => {
            let check = if *trusted {
                ResolutionCheck::Trusted
            } else {
                ResolutionCheck::Validate(*variant)
            };
            match report {
                TowerReportKind::Steenrod => {
                    let t = load_tower(file)?;
                    let r = steenrod_report(&t, *dim, *window, check).map_err(|e| math("steenrod report", e))?;
                    Ok(ses_report("steenrod", &r))
                }
                TowerReportKind::Cech => {
                    let t = load_tower(file)?;
                    let r = cech_cohomology_report(&t, *dim, *window, check).map_err(|e| math("cech report", e))?;
                    Ok(colim_report(*dim, &r))
                }
                TowerReportKind::Petkova => {
                    let f = load_filtration(file)?;
                    let r = petkova_report(&f, *dim, *window).map_err(|e| math("petkova report", e))?;
                    Ok(ses_report("petkova", &r))
                }
            }
        }
        Command::Validate {
            file,
            variant,
            induce_l,
        } => {
            let mut t = load_tower(file)?;
            if *induce_l && t.marked_l().is_none() {
                let ls = induced_l_marks(&t).map_err(|e| math("validate", e))?;
                t = t.with_marked_l(ls).map_err(|e| math("validate", e))?;
            }
            let r = validate(&t, *variant).map_err(|e| math("validate", e))?;
            Ok(validation_report(&r))
        }
        Command::Nerve {
            sample,
            cover,
            dim,
            schedule,
        } => {
            let s = load_sample(sample)?;
            let c = load_cover(cover)?;
            match schedule {
                None => {
                    let k = nerve(&c, &s);
                    let (h, groups) = homology_lines(&k, &dims(&k, *dim), false);
                    let text = format!("nerve: f-vector {}\n{h}", f_vector_text(&k));
                    Ok(Report::ok(
                        text,
                        json!({
                            "command": "nerve",
                            "f_vector": k.f_vector(),
                            "complex": ComplexPayload::from_complex(&k),
                            "groups": groups,
                        }),
                    ))
                }
                Some(radii) => {
                    let radii = radii
                        .iter()
                        .map(|r| {
                            serde_json::from_value::<Rational>(json!(r))
                                .map(|q| q.0)
                                .map_err(|e| CliError::Input(format!("--schedule: {r}: {e}")))
                        })
                        .collect::<CliResult<Vec<_>>>()?;
                    let t = cech_tower(&s, &radii, &c).map_err(|e| math("cech tower", e))?;
                    let n = dim.unwrap_or(1);
                    let gt = homology_tower(&t, n, false);
                    let mut text = String::new();
                    let mut levels = Vec::new();
                    for (i, g) in gt.levels().iter().enumerate() {
                        let g = g.canonical();
                        let _ = writeln!(
                            text,
                            "level {i}: f-vector {}, H_{n} = {g}",
                            f_vector_text(t.level(i))
                        );
                        levels.push(json!({ "level": i, "f_vector": t.level(i).f_vector(), "group": group_json(&g) }));
                    }
                    Ok(Report::ok(
                        text,
                        json!({
                            "command": "nerve",
                            "dimension": n,
                            "levels": levels,
                            "tower": ComplexTowerPayload::from_tower(&t),
                        }),
                    ))
                }
            }
        }
        Command::Lebesgue { sample, cover } => {
            let s = load_sample(sample)?;
            let c = load_cover(cover)?;
            let l = lebesgue_number(&s, &c).map_err(|e| math("lebesgue", e))?;
            Ok(Report::ok(
                format!("lebesgue number = {l}\n"),
                json!({ "command": "lebesgue", "lebesgue_number": Rational(l) }),
            ))
        }
        Command::Gallery {
            family,
            teeth,
            p,
            depth,
            report,
            dim,
            window,
            variant,
        } => {
            let teeth = teeth.unwrap_or(depth + 1);
            let fam = match family {
                Family::Comb => GalleryFamily::Comb { teeth },
                Family::Solenoid => GalleryFamily::Solenoid { p: *p },
                Family::Warsaw => GalleryFamily::Warsaw,
                Family::Example411 => GalleryFamily::Example411 { teeth },
            };
            let t = build_gallery(&fam, *depth).map_err(|e| math("gallery", e))?;
            let check = ResolutionCheck::Validate(Variant::Compactohedral);
            match report {
                GalleryReport::Document => {
                    let doc = DocumentEnvelope::new(Payload::ComplexTower(ComplexTowerPayload::from_tower(&t)));
                    let text = doc.to_json();
                    let structured = serde_json::from_str(&text).expect("documents are valid JSON");
                    Ok(Report::ok(text, structured))
                }
                GalleryReport::Steenrod => {
                    let r = steenrod_report(&t, *dim, *window, check).map_err(|e| math("steenrod report", e))?;
                    Ok(ses_report("steenrod", &r))
                }
                GalleryReport::Cech => {
                    let r = cech_cohomology_report(&t, *dim, *window, check).map_err(|e| math("cech report", e))?;
                    Ok(colim_report(*dim, &r))
                }
                GalleryReport::Validate => {
                    let t = if t.marked_l().is_none() {
                        let ls = induced_l_marks(&t).map_err(|e| math("validate", e))?;
                        t.with_marked_l(ls).map_err(|e| math("validate", e))?
                    } else {
                        t
                    };
                    let r = validate(&t, *variant).map_err(|e| math("validate", e))?;
                    Ok(validation_report(&r))
                }
            }
        }
    }
}

fn glued_report(command: &str, level: usize, k: &SimplicialComplex, dim: Option<usize>) -> Report {
    let (h, groups) = homology_lines(k, &dims(k, dim), false);
    let text = format!("{command} through level {level}: f-vector {}\n{h}", f_vector_text(k));
    Report::ok(
        text,
        json!({
            "command": command,
            "level": level,
            "f_vector": k.f_vector(),
            "complex": ComplexPayload::from_complex(k),
            "groups": groups,
        }),
    )
}

fn ses_report(which: &str, r: &SESReport) -> Report {
    let right = match &r.right {
        RightEnd::Group(g) => json!({ "status": "group", "group": group_json(g) }),
        RightEnd::NotStable(why) => json!({ "status": "not_stable", "reason": why }),
    };
    let middle = match &r.middle {
        Middle::Group(g) => json!({ "status": "group", "group": group_json(g) }),
        Middle::UnresolvedExtension => json!({ "status": "unresolved_extension" }),
        Middle::UncountableViaLeft => json!({ "status": "uncountable_via_lim1" }),
    };
    Report::ok(
        r.to_string(),
        json!({
            "command": "tower-report",
            "report": which,
            "dimension": r.dimension,
            "reduced": r.reduced,
            "lim1": { "class": r.left.class, "reason": r.left.reason, "label": r.left_label },
            "lim": right,
            "middle": { "name": r.middle_name(), "value": middle },
            "provenance": r.provenance,
        }),
    )
}

fn colim_report(n: usize, r: &ColimOutcome) -> Report {
    match r {
        ColimOutcome::Stable { group, index } => Report::ok(
            format!("H^{n}(X) = {group} (stable from index {index})\n"),
            json!({
                "command": "tower-report",
                "report": "cech",
                "dimension": n,
                "status": "stable",
                "group": group_json(group),
                "index": index,
            }),
        ),
        ColimOutcome::NotFinitelyStable { chain } => {
            let shown: Vec<String> = chain.iter().map(ToString::to_string).collect();
            Report::ok(
                format!("H^{n}(X): not finitely stable (chain: {})\n", shown.join(", ")),
                json!({
                    "command": "tower-report",
                    "report": "cech",
                    "dimension": n,
                    "status": "not_finitely_stable",
                    "chain": chain.iter().map(group_json).collect::<Vec<_>>(),
                }),
            )
        }
    }
}

fn validation_report(r: &ValidationReport) -> Report {
    let mut text = r.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Report {
        text,
        structured: json!({
            "command": "validate",
            "variant": r.variant,
            "passed": r.passed(),
            "failed_axioms": r.failed_axioms().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "violations": r.violations,
        }),
        code: if r.passed() { 0 } else { 2 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_exits_cleanly() {
        let o = run(["steenrod", "--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("tower-report"));
    }

    #[test]
    fn unknown_subcommand_is_an_input_error() {
        assert_eq!(run(["steenrod", "frobnicate"]).code, 1);
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let o = run(["steenrod", "homology", "/nonexistent/file.json"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("/nonexistent/file.json"));
    }

    #[test]
    fn gallery_comb_steenrod_report() {
        let o = run([
            "steenrod", "gallery", "comb", "--teeth", "6", "--depth", "3", "--report", "steenrod", "--dim", "0",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("lim1: Uncountable (label: Prod(Z)/Sum(Z))"));
        assert!(o.stdout.contains("H~_0(X): uncountable via lim1"));
    }
}
