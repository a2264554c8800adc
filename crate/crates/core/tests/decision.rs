use std::collections::BTreeSet;

use regproj::corpus::{embedding, projections};
use regproj::decision::{
    double_point_types, interferency, lift_class_multisets, lift_evidence, lift_trivial, projection_knotted,
    regions_of_cycle, smooth_type_a, totally_free, unknot_certificate, DecisionError, DoublePointType, TypeCensus,
};
use regproj::diagram::{DoublePointId, GaussData, Projection};
use regproj::fixtures;
use regproj::graph::{families, AbstractGraph, EdgeId};
use regproj::invariants::LinkClass;
use regproj::lift::enumerate_lifts;

fn realize(g: &AbstractGraph, seqs: &[Vec<usize>]) -> Projection {
    let cr = seqs.iter().map(Vec::len).sum::<usize>() / 2;
    regproj::corpus::rotation_systems(g)
        .into_iter()
        .find_map(|rotations| {
            (0..1u32 << cr).find_map(|bits| {
                let flip = (0..cr).map(|i| bits >> i & 1 == 1).collect();
                GaussData {
                    graph: g.clone(),
                    sequences: seqs.to_vec(),
                    flip,
                    rotations: rotations.clone(),
                }
                .realize()
            })
        })
        .expect("realizable")
}

#[test]
fn types_of_small_examples() {
    let kink = realize(&families::circle(), &[vec![0, 0]]);
    assert_eq!(double_point_types(&kink), vec![DoublePointType::TypeS]);

    let theta = fixtures::load(fixtures::THETA_TYPE_A).projection;
    assert_eq!(double_point_types(&theta), vec![DoublePointType::TypeA]);

    let cube = fixtures::load(fixtures::KNOTTED_CUBE).projection;
    let census = TypeCensus::of(&cube);
    assert_eq!((census.type_s, census.type_a, census.type_d), (0, 0, 3));
    assert!(!census.has_s_or_a());
}

#[test]
fn degree_two_vertices_do_not_split_an_edge() {
    // a circle subdivided twice is still one edge for typing
    let g = AbstractGraph::new(2, &[(0, 1), (1, 0)]);
    let p = realize(&g, &[vec![0], vec![0]]);
    assert_eq!(double_point_types(&p), vec![DoublePointType::TypeS]);
}

#[test]
fn interferency_counts() {
    let theta = fixtures::load(fixtures::THETA_EMBEDDED).projection;
    for c in theta.graph().cycles() {
        assert_eq!(interferency(&theta, &c), 0);
        assert!(unknot_certificate(&theta, &c));
    }

    let three = fixtures::load(fixtures::INTERFERENCY_THREE).projection;
    let loop_cycle = three
        .graph()
        .cycles()
        .into_iter()
        .find(|c| c.contains_edge(EdgeId(0)))
        .unwrap();
    assert_eq!(interferency(&three, &loop_cycle), 3);
    assert!(!unknot_certificate(&three, &loop_cycle));

    let a = fixtures::load(fixtures::THETA_TYPE_A).projection;
    let ones = a.graph().cycles().iter().filter(|c| interferency(&a, c) == 1).count();
    assert_eq!(ones, 2);
}

#[test]
fn trefoil_shadow_is_never_certified() {
    let p = fixtures::load(fixtures::TREFOIL_SHADOW).projection;
    let c = &p.graph().cycles()[0];
    assert_eq!(interferency(&p, c), 0);
    assert!(!unknot_certificate(&p, c));
}

#[test]
fn regions_of_embedded_and_kinked_cycles() {
    let theta = fixtures::load(fixtures::THETA_EMBEDDED).projection;
    for c in theta.graph().cycles() {
        let r = regions_of_cycle(&theta, &c);
        assert_eq!(r.regions.len(), 2);
        let pieces: usize = r.regions.iter().map(|x| x.pieces.len()).sum();
        assert_eq!(pieces, 1);
        assert!(r.crossing_edges.is_empty());
    }

    let kink = realize(&families::circle(), &[vec![0, 0]]);
    let r = regions_of_cycle(&kink, &kink.graph().cycles()[0]);
    assert_eq!(r.regions.len(), 3);
    assert!(r.regions.iter().all(|x| x.pieces.is_empty()));
}

#[test]
fn regions_fixture_has_one_piece_per_region() {
    let p = fixtures::load(fixtures::REGIONS_THREE_PIECES).projection;
    let g = p.graph();
    let gamma = g
        .cycles()
        .into_iter()
        .find(|c| c.len() == 2 && c.contains_edge(EdgeId(0)) && c.contains_edge(EdgeId(1)))
        .unwrap();
    let r = regions_of_cycle(&p, &gamma);
    assert_eq!(r.crossing_edges, BTreeSet::from([EdgeId(5), EdgeId(6)]));
    assert_eq!(r.regions.len(), 3);
    assert!(r.detached.is_empty());
    let mut loops: Vec<EdgeId> = Vec::new();
    for region in &r.regions {
        assert_eq!(region.pieces.len(), 1);
        let piece = &region.pieces[0];
        assert_eq!(piece.edges.len(), 1);
        assert_eq!(piece.ends.len(), 2);
        loops.extend(&piece.edges);
    }
    loops.sort();
    assert_eq!(loops, vec![EdgeId(2), EdgeId(3), EdgeId(4)]);
}

#[test]
fn knotted_cube_fixture() {
    let p = fixtures::load(fixtures::KNOTTED_CUBE).projection;
    let report = projection_knotted(&p).unwrap();
    assert!(report.knotted);
    assert_eq!(report.cr, 3);
    assert!(report.witness.is_none());
    assert!(report.lifts.iter().all(|l| l.evidence.has_hopf() && !l.trivial));
}

#[test]
fn embedded_theta_is_trivial() {
    let p = embedding(&families::theta()).unwrap();
    let report = projection_knotted(&p).unwrap();
    assert!(!report.knotted);
    assert_eq!(report.witness.as_deref(), Some(""));
}

#[test]
fn trefoil_lift_is_not_free() {
    let doc = fixtures::load(fixtures::TREFOIL_SHADOW);
    let f = doc.lift().unwrap();
    assert!(!totally_free(&f).unwrap());
    let report = projection_knotted(&doc.projection).unwrap();
    assert!(!report.knotted);
    assert_eq!(report.lifts.iter().filter(|l| l.trivial).count(), 6);
}

#[test]
fn refusals() {
    let petersen = fixtures::load(fixtures::PETERSEN).projection;
    assert_eq!(
        projection_knotted(&petersen).unwrap_err(),
        DecisionError::PlanarityRequired
    );
    let f = &enumerate_lifts(&petersen)[0];
    assert_eq!(lift_trivial(f).unwrap_err(), DecisionError::PlanarityRequired);
    assert!(!totally_free(f).unwrap());

    let handcuff = fixtures::load(fixtures::HANDCUFF_CR4);
    assert_eq!(
        projection_knotted(&handcuff.projection).unwrap_err(),
        DecisionError::OutOfRange { cr: 4, max: 3 }
    );
    let evidence = lift_evidence(&handcuff.projection);
    assert_eq!(evidence.len(), 16);
    assert!(evidence.iter().all(|e| e.has_unclassified()));
}

#[test]
fn smoothing_theta_removes_its_point() {
    let p = fixtures::load(fixtures::THETA_TYPE_A).projection;
    let q = smooth_type_a(&p, DoublePointId(0)).unwrap();
    assert_eq!(q.cr(), 0);
    assert!(q.is_spherical());
    assert!(lift_class_multisets(&q).is_subset(&lift_class_multisets(&p)));
}

#[test]
fn smoothing_rejects_other_types() {
    let cube = fixtures::load(fixtures::KNOTTED_CUBE).projection;
    assert_eq!(
        smooth_type_a(&cube, DoublePointId(1)).unwrap_err(),
        DecisionError::TypeMismatch {
            point: DoublePointId(1),
            found: DoublePointType::TypeD
        }
    );
}

#[test]
fn smoothing_every_two_point_theta_projection() {
    let g = families::theta();
    let mut smoothed = 0;
    for p in projections(&g, 2) {
        for (i, t) in double_point_types(&p).into_iter().enumerate() {
            if t == DoublePointType::TypeA {
                let q = smooth_type_a(&p, DoublePointId(i)).unwrap();
                assert_eq!(q.cr(), 1);
                assert!(lift_class_multisets(&q).is_subset(&lift_class_multisets(&p)));
                smoothed += 1;
            }
        }
    }
    assert!(smoothed > 0);
}

#[test]
fn evidence_names_obstructions() {
    let doc = fixtures::load(fixtures::TREFOIL_SHADOW);
    let trefoils = lift_evidence(&doc.projection)
        .into_iter()
        .filter(|e| e.obstructions().any(|(_, c)| matches!(c, LinkClass::Trefoil(_))))
        .count();
    assert_eq!(trefoils, 2);
}
