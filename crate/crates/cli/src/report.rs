//! One function per subcommand: compute, then print as text or JSON.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;

use regproj::catalog::catalog as curve_catalog;
use regproj::decision::{
    cycle_projection, double_point_types, interferency, lift_evidence, projection_knotted, unknot_certificate,
    DoublePointType, LiftEvidence,
};
use regproj::diagram::Projection;
use regproj::gpd::{self, Diagnostic, GpdDocument};
use regproj::graph::{CycleSubgraph, EdgeId};
use regproj::invariants::{classify_small_link, linking_number, normalized_bracket, tricolor_count, writhe, LinkClass};
use regproj::lift::{constituents, restrict, Lift};
use regproj::link::LinkDiagram;
use regproj::verify::run_all;

use crate::{CliError, Format};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize)]
struct Json<T: Serialize> {
    format_version: u32,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(format: Format, body: T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Text => print!("{}", text(&body)),
        Format::Json => {
            let doc = Json {
                format_version: FORMAT_VERSION,
                body,
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
        }
    }
}

fn point_name(p: &Projection, i: usize) -> String {
    let g = p.graph();
    let [a, b] = p.double_points()[i].passages;
    format!(
        "d{i} ({}#{} x {}#{})",
        g.edge_name(a.edge),
        a.ordinal,
        g.edge_name(b.edge),
        b.ordinal
    )
}

#[derive(Serialize)]
struct Validation {
    file: String,
    valid: bool,
    vertices: usize,
    edges: usize,
    cr: usize,
    planar: bool,
    lift: Option<String>,
    diagnostics: Vec<Diagnostic>,
}

pub fn validate(path: &Path, format: Format) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file = path.display().to_string();
    let report = match gpd::parse(&text) {
        Ok(doc) => {
            let g = doc.projection.graph();
            Validation {
                file,
                valid: true,
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                cr: doc.projection.cr(),
                planar: g.is_planar(),
                lift: doc.lift().map(|f| f.bits()),
                diagnostics: Vec::new(),
            }
        }
        Err(e) => Validation {
            file,
            valid: false,
            vertices: 0,
            edges: 0,
            cr: 0,
            planar: false,
            lift: None,
            diagnostics: e.diagnostics,
        },
    };
    let valid = report.valid;
    emit(format, report, |r| {
        if !r.valid {
            return r.diagnostics.iter().map(|d| format!("{}:{d}\n", r.file)).collect();
        }
        let mut s = format!(
            "{}: valid, {} vertices, {} edges, {} double points, {} graph\n",
            r.file,
            r.vertices,
            r.edges,
            r.cr,
            if r.planar { "planar" } else { "non-planar" }
        );
        if let Some(bits) = &r.lift {
            s += &format!("lift: {bits}\n");
        }
        s
    });
    if valid {
        Ok(())
    } else {
        Err(CliError::Reported(2))
    }
}

#[derive(Serialize)]
struct ConstituentJson {
    subgraph: String,
    class: String,
}

#[derive(Serialize)]
struct LiftJson {
    over_strand: String,
    constituents: Vec<ConstituentJson>,
}

impl From<&LiftEvidence> for LiftJson {
    fn from(e: &LiftEvidence) -> Self {
        LiftJson {
            over_strand: e.over_strand.clone(),
            constituents: e
                .constituents
                .iter()
                .map(|(s, c)| ConstituentJson {
                    subgraph: s.clone(),
                    class: c.to_string(),
                })
                .collect(),
        }
    }
}

/// Bits and the constituents that are not unknots or unlinks.
fn lift_line(e: &LiftEvidence) -> String {
    let bits = if e.over_strand.is_empty() { "-" } else { &e.over_strand };
    let notable: Vec<String> = e
        .constituents
        .iter()
        .filter(|(_, c)| !matches!(c, LinkClass::Unknot | LinkClass::Unlink(_)))
        .map(|(s, c)| format!("{s} {c}"))
        .collect();
    if notable.is_empty() {
        format!("{bits}  trivial\n")
    } else {
        format!("{bits}  {}\n", notable.join(", "))
    }
}

#[derive(Serialize)]
struct LiftsReport {
    cr: usize,
    lifts: Vec<LiftJson>,
}

pub fn lifts(doc: &GpdDocument, format: Format) -> Result<(), CliError> {
    let p = &doc.projection;
    let evidence = lift_evidence(p);
    let report = LiftsReport {
        cr: p.cr(),
        lifts: evidence.iter().map(LiftJson::from).collect(),
    };
    emit(format, report, |r| {
        let hopf = evidence.iter().filter(|e| e.has_hopf()).count();
        let mut s = format!(
            "{} lifts of {} double points, {hopf} with a Hopf constituent\n",
            r.lifts.len(),
            r.cr
        );
        for e in &evidence {
            s += &lift_line(e);
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct InvariantRow {
    subgraph: String,
    crossings: usize,
    components: usize,
    writhe: i32,
    bracket: String,
    linking_number: Option<i32>,
    tricolorings: u64,
    class: String,
}

#[derive(Serialize)]
struct InvariantsReport {
    over_strand: String,
    diagrams: Vec<InvariantRow>,
}

fn parse_bits(bits: &str, cr: usize) -> Result<Vec<u8>, CliError> {
    let over: Option<Vec<u8>> = bits
        .chars()
        .map(|c| match c {
            '0' => Some(0),
            '1' => Some(1),
            _ => None,
        })
        .collect();
    match over {
        Some(v) if v.len() == cr => Ok(v),
        _ => Err(CliError::Usage(format!(
            "--lift expects {cr} bits of 0 or 1, got `{bits}`"
        ))),
    }
}

fn find_cycle(p: &Projection, names: &str) -> Result<CycleSubgraph, CliError> {
    let g = p.graph();
    let mut edges = BTreeSet::new();
    for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let e: EdgeId = g
            .edge_by_name(name)
            .ok_or_else(|| CliError::Usage(format!("no edge named `{name}`")))?;
        edges.insert(e);
    }
    g.cycles()
        .into_iter()
        .find(|c| c.edges().collect::<BTreeSet<_>>() == edges)
        .ok_or_else(|| CliError::Usage(format!("edges `{names}` do not form a cycle")))
}

fn row(subgraph: String, d: &LinkDiagram) -> InvariantRow {
    InvariantRow {
        subgraph,
        crossings: d.crossing_count(),
        components: d.component_count(),
        writhe: writhe(d),
        bracket: normalized_bracket(d).to_string(),
        linking_number: (d.component_count() == 2).then(|| linking_number(d).ok()).flatten(),
        tricolorings: tricolor_count(d),
        class: classify_small_link(d).to_string(),
    }
}

pub fn invariants(doc: &GpdDocument, bits: Option<&str>, cycles: &[String], format: Format) -> Result<(), CliError> {
    let p = &doc.projection;
    let over = match (bits, &doc.over) {
        (Some(b), _) => parse_bits(b, p.cr())?,
        (None, Some(o)) => o.clone(),
        (None, None) if p.cr() == 0 => Vec::new(),
        (None, None) => return Err(CliError::Usage("no lift: pass --lift or add a lift section".into())),
    };
    let f = Lift::new(p, over);
    let g = p.graph();
    let diagrams = if cycles.is_empty() {
        constituents(&f)
            .into_iter()
            .map(|(s, d)| row(s.describe(g), &d))
            .collect()
    } else {
        if cycles.len() > 2 {
            return Err(CliError::Usage("at most two --cycle options".into()));
        }
        let found = cycles.iter().map(|c| find_cycle(p, c)).collect::<Result<Vec<_>, _>>()?;
        if found.len() == 2 && !found[0].vertex_set().is_disjoint(&found[1].vertex_set()) {
            return Err(CliError::Usage("the two cycles share a vertex".into()));
        }
        let refs: Vec<&CycleSubgraph> = found.iter().collect();
        let d = restrict(&f, &refs).expect("disjoint cycles restrict");
        let name = found.iter().map(|c| c.describe(g)).collect::<Vec<_>>().join(" + ");
        vec![row(name, &d)]
    };
    let report = InvariantsReport {
        over_strand: f.bits(),
        diagrams,
    };
    emit(format, report, |r| {
        let mut s = format!("lift {}\n", if r.over_strand.is_empty() { "-" } else { &r.over_strand });
        for d in &r.diagrams {
            s += &format!(
                "{}: {} crossings, writhe {}, bracket {}, {}3-colorings {}, {}\n",
                d.subgraph,
                d.crossings,
                d.writhe,
                d.bracket,
                d.linking_number
                    .map(|l| format!("linking number {l}, "))
                    .unwrap_or_default(),
                d.tricolorings,
                d.class
            );
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct PointRow {
    point: String,
    #[serde(rename = "type")]
    kind: DoublePointType,
}

#[derive(Serialize)]
struct CycleRow {
    cycle: String,
    self_points: usize,
    interferency: usize,
    curve_class: Option<String>,
    certified_unknotted: bool,
}

#[derive(Serialize)]
struct ClassifyReport {
    points: Vec<PointRow>,
    cycles: Vec<CycleRow>,
}

pub fn classify(doc: &GpdDocument, format: Format) -> Result<(), CliError> {
    let p = &doc.projection;
    let g = p.graph();
    let points = double_point_types(p)
        .into_iter()
        .enumerate()
        .map(|(i, kind)| PointRow {
            point: point_name(p, i),
            kind,
        })
        .collect();
    let cycles = g
        .cycles()
        .iter()
        .map(|c| {
            let image = cycle_projection(p, c);
            CycleRow {
                cycle: c.describe(g),
                self_points: image.cr(),
                interferency: interferency(p, c),
                curve_class: curve_catalog().classify(&image).ok().map(|k| k.id.clone()),
                certified_unknotted: unknot_certificate(p, c),
            }
        })
        .collect();
    emit(format, ClassifyReport { points, cycles }, |r| {
        let mut s = String::new();
        for pt in &r.points {
            s += &format!("{} {}\n", pt.point, pt.kind);
        }
        for c in &r.cycles {
            s += &format!(
                "{}: self points {}, interferency {}, curve {}{}\n",
                c.cycle,
                c.self_points,
                c.interferency,
                c.curve_class.as_deref().unwrap_or("beyond catalog"),
                if c.certified_unknotted {
                    ", unknotted in every lift"
                } else {
                    ""
                }
            );
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct LiftVerdictJson {
    #[serde(flatten)]
    evidence: LiftJson,
    trivial: bool,
    totally_free: bool,
}

#[derive(Serialize)]
struct DecisionJson {
    knotted: bool,
    cr: usize,
    types: Vec<DoublePointType>,
    witness: Option<String>,
    lifts: Vec<LiftVerdictJson>,
}

pub fn decide_knotted(doc: &GpdDocument, format: Format) -> Result<(), CliError> {
    let r = projection_knotted(&doc.projection)?;
    let hopf = r.lifts.iter().filter(|l| l.evidence.has_hopf()).count();
    let n = r.lifts.len();
    let lines: Vec<String> = r.lifts.iter().map(|l| lift_line(&l.evidence)).collect();
    let report = DecisionJson {
        knotted: r.knotted,
        cr: r.cr,
        types: r.types.clone(),
        witness: r.witness.clone(),
        lifts: r
            .lifts
            .iter()
            .map(|l| LiftVerdictJson {
                evidence: (&l.evidence).into(),
                trivial: l.trivial,
                totally_free: l.totally_free,
            })
            .collect(),
    };
    emit(format, report, |r| {
        let types: Vec<String> = r.types.iter().map(ToString::to_string).collect();
        let mut s = format!("knotted: {}\ncr {}, types [{}]\n", r.knotted, r.cr, types.join(", "));
        s += &format!("{hopf}/{n} lifts carry a Hopf constituent\n");
        if let Some(w) = &r.witness {
            s += &format!("trivial lift: {}\n", if w.is_empty() { "-" } else { w });
        }
        s + &lines.concat()
    });
    Ok(())
}

#[derive(Serialize)]
struct CatalogRow {
    id: String,
    cr: usize,
    gauss_word: Vec<usize>,
    trefoil_shadow: bool,
}

#[derive(Serialize)]
struct CatalogReport {
    mirror_identified: bool,
    counts_with_mirrors_identified: Vec<usize>,
    counts_without: Vec<usize>,
    classes: Vec<CatalogRow>,
}

pub fn catalog(max_cr: usize, format: Format) -> Result<(), CliError> {
    let c = curve_catalog();
    let classes = c
        .classes_up_to(max_cr)?
        .into_iter()
        .map(|k| CatalogRow {
            id: k.id.clone(),
            cr: k.cr,
            gauss_word: k.gauss_word.clone(),
            trefoil_shadow: k.is_trefoil_shadow,
        })
        .collect();
    let report = CatalogReport {
        mirror_identified: c.mirror_identified,
        counts_with_mirrors_identified: c.counts_with_mirrors_identified.clone(),
        counts_without: c.counts_without.clone(),
        classes,
    };
    emit(format, report, |r| {
        let counts = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ");
        let mut s = format!(
            "mirror images identified: {} (classes per crossing number: {} identified, {} not)\n",
            if r.mirror_identified { "yes" } else { "no" },
            counts(&r.counts_with_mirrors_identified),
            counts(&r.counts_without)
        );
        s += "id   cr  gauss word  trefoil shadow\n";
        for k in &r.classes {
            let word: String = k.gauss_word.iter().map(ToString::to_string).collect();
            s += &format!(
                "{:<4} {:>2}  {:<10}  {}\n",
                k.id,
                k.cr,
                if word.is_empty() { "-" } else { &word },
                if k.trefoil_shadow { "yes" } else { "no" }
            );
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    seed: u64,
    passed: usize,
    total: usize,
    criteria: Vec<regproj::verify::CriterionReport>,
}

pub fn verify_theorems(seed: u64, format: Format) -> Result<(), CliError> {
    let criteria = run_all(seed);
    let passed = criteria.iter().filter(|c| c.passed).count();
    let total = criteria.len();
    emit(
        format,
        VerifyReport {
            seed,
            passed,
            total,
            criteria,
        },
        |r| {
            let mut s = String::new();
            for c in &r.criteria {
                s += &format!(
                    "criterion {:>2} {} {}: {}\n",
                    c.id,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            s + &format!("{} of {} criteria passed\n", r.passed, r.total)
        },
    );
    if passed == total {
        Ok(())
    } else {
        Err(CliError::Reported(1))
    }
}
