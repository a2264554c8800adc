use regproj::corpus::{embedding, projections, Family};
use regproj::decision::cycle_projection;
use regproj::fixtures;
use regproj::graph::families;
use regproj::invariants::{classify_small_link, linking_number, normalized_bracket, LinkClass};
use regproj::lift::{constituents, enumerate_lifts, restrict, ConstituentPlan, Lift};

#[test]
fn constituent_counts() {
    for (g, knots, pairs) in [
        (families::handcuff(), 2, 1),
        (families::theta(), 3, 0),
        (families::k4(), 7, 0),
        (families::two_unknots(), 2, 1),
    ] {
        let p = embedding(&g).unwrap();
        let plan = ConstituentPlan::new(&p);
        assert_eq!((plan.knot_count(), plan.pair_count()), (knots, pairs));
        let lift = Lift::new(&p, Vec::new());
        assert!(plan
            .classify(&lift)
            .iter()
            .all(|c| matches!(c, LinkClass::Unknot | LinkClass::Unlink(2))));
    }
}

#[test]
fn lifts_are_ordered_with_the_first_point_most_significant() {
    let p = fixtures::load(fixtures::KNOTTED_CUBE).projection;
    let bits: Vec<String> = enumerate_lifts(&p).iter().map(Lift::bits).collect();
    assert_eq!(bits, ["000", "001", "010", "011", "100", "101", "110", "111"]);
}

#[test]
fn restriction_commutes_with_lifting() {
    for family in [Family::Theta, Family::Handcuff, Family::K4] {
        let g = family.graph();
        for p in projections(&g, 2).iter().step_by(7) {
            for c in g.cycles() {
                let edges = c.edges().collect();
                let (q, kept) = p.restrict_to_edges(&edges);
                assert_eq!(cycle_projection(p, &c), q);
                let qc = &q.graph().cycles()[0];
                for f in enumerate_lifts(p) {
                    let over = kept.iter().map(|&d| f.over_passage(d)).collect();
                    let direct = restrict(&f, &[&c]).unwrap();
                    let via = restrict(&Lift::new(&q, over), &[qc]).unwrap();
                    assert_eq!(direct.crossing_count(), via.crossing_count());
                    assert_eq!(normalized_bracket(&direct), normalized_bracket(&via));
                }
            }
        }
    }
}

#[test]
fn handcuff_cr4_constituents() {
    let doc = fixtures::load(fixtures::HANDCUFF_CR4);
    let f = doc.lift().unwrap();
    let parts = constituents(&f);
    assert_eq!(parts.len(), 3);
    let pair = parts.iter().find(|(_, d)| d.component_count() == 2).unwrap();
    assert_eq!(pair.1.crossing_count(), 4);
    assert_eq!(linking_number(&pair.1), Ok(0));
    assert_eq!(classify_small_link(&pair.1), LinkClass::Unclassified);
}

#[test]
fn trefoil_fixture_lift() {
    let doc = fixtures::load(fixtures::TREFOIL_SHADOW);
    let f = doc.lift().unwrap();
    let c = &doc.projection.graph().cycles()[0];
    assert!(matches!(
        classify_small_link(&restrict(&f, &[c]).unwrap()),
        LinkClass::Trefoil(_)
    ));
}
