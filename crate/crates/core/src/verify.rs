//! Replays the classification results over the generated corpus and the
//! shipped fixtures, one verdict per acceptance criterion.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{enumerate_classes, MAX_CATALOG_CR};
use crate::corpus::{map_projections, Family};
use crate::decision::{
    double_point_types, lift_evidence, projection_knotted, smooth_type_a, totally_free, unknot_certificate,
    DecisionError, DoublePointType, MAX_DECISION_CR,
};
use crate::diagram::{DoublePointId, Projection};
use crate::fixtures;
use crate::gpd::serialize;
use crate::invariants::{classify_small_link, linking_number, normalized_bracket, tricolor_count, LinkClass};
use crate::lift::{enumerate_lifts, restrict, ConstituentPlan, Subgraph};
use crate::link::LinkDiagram;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Number of objects the criterion quantified over.
    pub checked: usize,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Counts gathered in one pass over every corpus projection with a given
/// number of double points.
#[derive(Clone, Debug, Default)]
pub struct CorpusTally {
    pub projections: usize,
    pub knotted: usize,
    /// Projections with a Type-S or Type-A double point.
    pub with_s_or_a: usize,
    pub knotted_with_s_or_a: usize,
    /// Projections with some lift that is not trivial.
    pub some_lift_nontrivial: usize,
    pub s_or_a_some_lift_nontrivial: usize,
    pub certified_cycles: usize,
    pub certificate_failures: usize,
    pub smoothings: usize,
    pub smoothing_failures: usize,
    pub unclassified: usize,
    /// First offending projection in generation order, as gpd text.
    pub first_failure: Option<String>,
}

impl CorpusTally {
    fn merge(mut self, o: CorpusTally) -> CorpusTally {
        self.projections += o.projections;
        self.knotted += o.knotted;
        self.with_s_or_a += o.with_s_or_a;
        self.knotted_with_s_or_a += o.knotted_with_s_or_a;
        self.some_lift_nontrivial += o.some_lift_nontrivial;
        self.s_or_a_some_lift_nontrivial += o.s_or_a_some_lift_nontrivial;
        self.certified_cycles += o.certified_cycles;
        self.certificate_failures += o.certificate_failures;
        self.smoothings += o.smoothings;
        self.smoothing_failures += o.smoothing_failures;
        self.unclassified += o.unclassified;
        self.first_failure = self.first_failure.or(o.first_failure);
        self
    }
}

fn multisets(classes: &[Vec<LinkClass>]) -> BTreeSet<Vec<LinkClass>> {
    classes
        .iter()
        .map(|c| {
            let mut v: Vec<LinkClass> = c.iter().map(LinkClass::unsigned).collect();
            v.sort();
            v
        })
        .collect()
}

fn lift_classes(p: &Projection, plan: &ConstituentPlan) -> Vec<Vec<LinkClass>> {
    enumerate_lifts(p).iter().map(|f| plan.classify(f)).collect()
}

fn tally_projection(p: &Projection) -> CorpusTally {
    let mut t = CorpusTally {
        projections: 1,
        ..Default::default()
    };
    let plan = ConstituentPlan::new(p);
    let classes = lift_classes(p, &plan);
    let trivial: Vec<bool> = classes
        .iter()
        .map(|c| !c.iter().any(LinkClass::is_obstruction))
        .collect();
    let knotted = trivial.iter().all(|t| !t);
    let types = double_point_types(p);
    let s_or_a = types.iter().any(|t| *t != DoublePointType::TypeD);
    let mut failed = false;

    t.knotted = usize::from(knotted);
    t.with_s_or_a = usize::from(s_or_a);
    t.knotted_with_s_or_a = usize::from(knotted && s_or_a);
    t.some_lift_nontrivial = usize::from(trivial.contains(&false));
    t.s_or_a_some_lift_nontrivial = usize::from(s_or_a && trivial.contains(&false));
    t.unclassified = classes
        .iter()
        .flatten()
        .filter(|c| **c == LinkClass::Unclassified)
        .count();
    failed |= t.unclassified > 0 || (knotted && (p.cr() < 3 || s_or_a));
    failed |= p.cr() < 2 && t.some_lift_nontrivial > 0;
    failed |= p.cr() == 2 && t.s_or_a_some_lift_nontrivial > 0;

    for (i, s) in plan.subdiagrams.iter().enumerate() {
        let Subgraph::Cycle(gamma) = &s.subgraph else { continue };
        if unknot_certificate(p, gamma) {
            t.certified_cycles += 1;
            if classes.iter().any(|c| c[i] != LinkClass::Unknot) {
                t.certificate_failures += 1;
                failed = true;
            }
        }
    }

    if p.cr() == MAX_DECISION_CR {
        let original = multisets(&classes);
        for (d, ty) in types.iter().enumerate() {
            if *ty != DoublePointType::TypeA {
                continue;
            }
            let q = smooth_type_a(p, DoublePointId(d)).expect("Type-A point");
            let qplan = ConstituentPlan::new(&q);
            t.smoothings += 1;
            if q.cr() + 1 != p.cr() || !multisets(&lift_classes(&q, &qplan)).is_subset(&original) {
                t.smoothing_failures += 1;
                failed = true;
            }
        }
    }
    if failed {
        t.first_failure = Some(serialize(p, None));
    }
    t
}

/// Tally over every family at `cr` double points, computed once per
/// process.
pub fn corpus_tally(cr: usize) -> &'static CorpusTally {
    static TALLIES: [OnceLock<CorpusTally>; MAX_DECISION_CR + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TALLIES[cr].get_or_init(|| {
        Family::ALL
            .iter()
            .flat_map(|f| map_projections(&f.graph(), cr, |p| Some(tally_projection(&p))))
            .fold(CorpusTally::default(), CorpusTally::merge)
    })
}

fn families_list() -> String {
    Family::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> (bool, usize, String)) -> CriterionReport {
    let start = Instant::now();
    let (passed, checked, detail) = f();
    CriterionReport {
        id,
        name,
        passed,
        checked,
        detail,
        elapsed: start.elapsed(),
    }
}

fn failure_note(t: &CorpusTally) -> String {
    match &t.first_failure {
        Some(text) => format!("; first offending projection:\n{text}"),
        None => String::new(),
    }
}

pub fn criterion_1() -> CriterionReport {
    timed(1, "one double point: every lift trivial", || {
        let t = corpus_tally(1);
        let ok = t.knotted == 0 && t.some_lift_nontrivial == 0;
        let detail = format!(
            "{} projections of {}; {} knotted, {} with a nontrivial lift{}",
            t.projections,
            families_list(),
            t.knotted,
            t.some_lift_nontrivial,
            if ok { String::new() } else { failure_note(t) }
        );
        (ok, t.projections, detail)
    })
}

pub fn criterion_2() -> CriterionReport {
    timed(2, "two double points: never knotted", || {
        let t = corpus_tally(2);
        let ok = t.knotted == 0 && t.s_or_a_some_lift_nontrivial == 0;
        let detail = format!(
            "{} projections; {} knotted; {} of {} with a Type-S/A point have a nontrivial lift{}",
            t.projections,
            t.knotted,
            t.s_or_a_some_lift_nontrivial,
            t.with_s_or_a,
            if ok { String::new() } else { failure_note(t) }
        );
        (ok, t.projections, detail)
    })
}

pub fn criterion_3() -> CriterionReport {
    timed(3, "three double points with a Type-S/A point: not knotted", || {
        let t = corpus_tally(3);
        let ok = t.knotted_with_s_or_a == 0;
        let detail = format!(
            "{} projections, {} with a Type-S/A point, {} of those knotted; {} knotted in all{}",
            t.projections,
            t.with_s_or_a,
            t.knotted_with_s_or_a,
            t.knotted,
            if ok { String::new() } else { failure_note(t) }
        );
        (ok, t.with_s_or_a, detail)
    })
}

pub fn criterion_4() -> CriterionReport {
    timed(
        4,
        "knotted cube projection: three Type-D points, Hopf in every lift",
        || {
            let doc = fixtures::load(fixtures::KNOTTED_CUBE);
            let p = &doc.projection;
            let report = match projection_knotted(p) {
                Ok(r) => r,
                Err(e) => return (false, 0, format!("decision refused: {e}")),
            };
            let all_d = report.types.iter().all(|t| *t == DoublePointType::TypeD);
            let hopf = report.lifts.iter().filter(|l| l.evidence.has_hopf()).count();
            let ok = report.knotted && p.cr() == 3 && all_d && hopf == 8 && report.lifts.len() == 8;
            let detail = format!(
                "knotted: {}, cr {}, types {:?}, {}/{} lifts with a Hopf constituent",
                report.knotted,
                p.cr(),
                report.types,
                hopf,
                report.lifts.len()
            );
            (ok, report.lifts.len(), detail)
        },
    )
}

pub fn criterion_5() -> CriterionReport {
    timed(5, "Petersen projection: no totally free lift, decision refused", || {
        let doc = fixtures::load(fixtures::PETERSEN);
        let p = &doc.projection;
        let evidence = lift_evidence(p);
        let not_free = enumerate_lifts(p)
            .iter()
            .filter(|f| totally_free(f) == Ok(false))
            .count();
        let hopf = evidence.iter().filter(|e| e.has_hopf()).count();
        let refused = projection_knotted(p) == Err(DecisionError::PlanarityRequired);
        let ok = !p.graph().is_planar() && p.cr() == 2 && not_free == 4 && hopf == 4 && refused;
        let detail = format!(
            "planar: {}, cr {}, {}/4 lifts not totally free, {}/4 with a Hopf constituent, decision refused: {}",
            p.graph().is_planar(),
            p.cr(),
            not_free,
            hopf,
            refused
        );
        (ok, evidence.len(), detail)
    })
}

pub fn criterion_6() -> CriterionReport {
    timed(6, "ten circle projections up to three double points", || {
        let classes = match enumerate_classes(MAX_CATALOG_CR) {
            Ok(c) => c,
            Err(e) => return (false, 0, e.to_string()),
        };
        let shadows = classes.iter().filter(|c| c.is_trefoil_shadow).count();
        let mut bad = 0;
        for c in classes.iter().filter(|c| !c.is_trefoil_shadow) {
            let p = c.representative();
            let cycle = &p.graph().cycles()[0];
            bad += enumerate_lifts(&p)
                .iter()
                .filter(|f| classify_small_link(&restrict(f, &[cycle]).unwrap()) != LinkClass::Unknot)
                .count();
        }
        let per_cr: Vec<usize> = (0..=MAX_CATALOG_CR)
            .map(|n| classes.iter().filter(|c| c.cr == n).count())
            .collect();
        let ok = classes.len() == 10 && shadows == 1 && bad == 0;
        let detail = format!(
            "{} classes ({}), {} trefoil shadow, {} non-unknot lifts of the other classes",
            classes.len(),
            per_cr.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" + "),
            shadows,
            bad
        );
        (ok, classes.len(), detail)
    })
}

/// Base diagrams for the random move walks: every lift of every catalog
/// curve and of every two-circle projection with at most three double
/// points.
fn walk_bases() -> Vec<LinkDiagram> {
    let mut out = Vec::new();
    for c in enumerate_classes(MAX_CATALOG_CR).unwrap() {
        let p = c.representative();
        let cycle = p.graph().cycles()[0].clone();
        out.extend(enumerate_lifts(&p).iter().map(|f| restrict(f, &[&cycle]).unwrap()));
    }
    let g = Family::TwoUnknots.graph();
    let (a, b) = g.disjoint_cycle_pairs().remove(0);
    for cr in 0..=3 {
        for p in map_projections(&g, cr, Some).into_iter().step_by(7) {
            out.extend(enumerate_lifts(&p).iter().map(|f| restrict(f, &[&a, &b]).unwrap()));
        }
    }
    out
}

#[derive(PartialEq, Debug)]
struct Invariants {
    bracket: crate::poly::LaurentPoly,
    lk: Option<i32>,
    colorings: u64,
}

fn invariants(d: &LinkDiagram) -> Invariants {
    Invariants {
        bracket: normalized_bracket(d),
        lk: linking_number(d).ok(),
        colorings: tricolor_count(d),
    }
}

/// Moves per random walk.
pub const WALK_LENGTH: usize = 30;
pub const WALK_COUNT: usize = 500;
pub const WALK_MAX_CROSSINGS: usize = 6;

pub fn criterion_7(seed: u64) -> CriterionReport {
    timed(7, "invariants unchanged along random Reidemeister walks", || {
        let bases = walk_bases();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut moves = 0;
        let mut failures = Vec::new();
        for walk in 0..WALK_COUNT {
            let base = bases.choose(&mut rng).unwrap();
            let want = invariants(base);
            let mut d = base.clone();
            for step in 0..WALK_LENGTH {
                if d.random_move(&mut rng, WALK_MAX_CROSSINGS).is_none() {
                    break;
                }
                moves += 1;
                if d.check().is_err() || invariants(&d) != want {
                    failures.push(format!("walk {walk} step {step}"));
                    break;
                }
            }
        }
        let ok = failures.is_empty();
        let detail = format!(
            "{WALK_COUNT} walks from {} base diagrams, {moves} moves, seed {seed}, {} failures{}",
            bases.len(),
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        );
        (ok, WALK_COUNT, detail)
    })
}

pub fn criterion_8() -> CriterionReport {
    timed(8, "every diagram with at most three crossings is classified", || {
        let mut checked = 0;
        let mut unclassified = 0;
        let mut classify = |d: &LinkDiagram| {
            checked += 1;
            let unknown = classify_small_link(d) == LinkClass::Unclassified;
            unclassified += usize::from(unknown);
            unknown
        };
        for c in enumerate_classes(MAX_CATALOG_CR).unwrap() {
            let p = c.representative();
            let cycle = p.graph().cycles()[0].clone();
            for f in enumerate_lifts(&p) {
                classify(&restrict(&f, &[&cycle]).unwrap());
            }
        }
        let mut two = 0;
        // unclassified pairs that are a trefoil next to a split unknot
        let mut split_trefoil = 0;
        for family in [Family::TwoUnknots, Family::Handcuff] {
            let g = family.graph();
            let pairs = g.disjoint_cycle_pairs();
            for cr in 0..=3 {
                for p in map_projections(&g, cr, Some) {
                    for f in enumerate_lifts(&p) {
                        for (a, b) in &pairs {
                            two += 1;
                            let d = restrict(&f, &[a, b]).unwrap();
                            if classify(&d) && linking_number(&d) == Ok(0) {
                                let parts =
                                    [a, b].map(|c| classify_small_link(&restrict(&f, &[c]).unwrap()).unsigned());
                                split_trefoil += usize::from(
                                    parts.contains(&LinkClass::Unknot) && parts.contains(&LinkClass::Trefoil(0)),
                                );
                            }
                        }
                    }
                }
            }
        }
        let ok = unclassified == 0;
        let mut detail = format!("{checked} diagrams ({two} with two components), {unclassified} unclassified");
        if split_trefoil > 0 {
            detail +=
                &format!("; {split_trefoil} of them are a trefoil split from an unknot, which no link class covers");
        }
        (ok, checked, detail)
    })
}

pub fn criterion_9() -> CriterionReport {
    timed(9, "certified cycles are unknotted in every lift", || {
        let tallies: Vec<&CorpusTally> = (0..=MAX_DECISION_CR).map(corpus_tally).collect();
        let certified: usize = tallies.iter().map(|t| t.certified_cycles).sum();
        let failures: usize = tallies.iter().map(|t| t.certificate_failures).sum();
        let projections: usize = tallies.iter().map(|t| t.projections).sum();
        let ok = failures == 0;
        let note = if ok {
            String::new()
        } else {
            tallies.iter().map(|t| failure_note(t)).collect()
        };
        (
            ok,
            certified,
            format!("{certified} certified cycles in {projections} projections, {failures} failures{note}"),
        )
    })
}

pub fn criterion_10() -> CriterionReport {
    timed(10, "smoothing a Type-A point only removes lift classes", || {
        let t = corpus_tally(MAX_DECISION_CR);
        let ok = t.smoothing_failures == 0 && t.smoothings > 0;
        let detail = format!(
            "{} smoothings, {} not contained{}",
            t.smoothings,
            t.smoothing_failures,
            if t.smoothing_failures == 0 {
                String::new()
            } else {
                failure_note(t)
            }
        );
        (ok, t.smoothings, detail)
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(seed),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}
