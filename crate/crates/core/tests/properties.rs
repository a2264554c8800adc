use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use regproj::corpus::{generate_corpus, Family};
use regproj::decision::{double_point_types, projection_knotted};
use regproj::diagram::Projection;
use regproj::gpd::{parse, serialize};
use regproj::graph::{AbstractGraph, EdgeId};
use regproj::invariants::{
    classify_small_link, kauffman_bracket, linking_number, normalized_bracket, tricolor_count, LinkClass,
};
use regproj::lift::{constituents, Lift};

fn corpus() -> &'static [Projection] {
    static CORPUS: OnceLock<Vec<Projection>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        [Family::Theta, Family::Handcuff, Family::K4, Family::TwoUnknots]
            .into_iter()
            .flat_map(|f| generate_corpus(f, 2))
            .collect()
    })
}

fn small_multigraph() -> impl Strategy<Value = AbstractGraph> {
    (1usize..5).prop_flat_map(|v| {
        proptest::collection::vec((0..v, 0..v), 0..7).prop_map(move |edges| AbstractGraph::new(v, &edges))
    })
}

/// Edge sets in which every touched vertex has degree 2 and which are
/// connected.
fn brute_force_cycles(g: &AbstractGraph) -> BTreeSet<BTreeSet<EdgeId>> {
    let m = g.edge_count();
    let mut out = BTreeSet::new();
    for mask in 1u32..1 << m {
        let edges: Vec<EdgeId> = (0..m).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect();
        let mut degree = vec![0; g.vertex_count()];
        for &e in &edges {
            let (a, b) = g.endpoints(e);
            degree[a.0] += 1;
            degree[b.0] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let sub = AbstractGraph::new(
            g.vertex_count(),
            &edges
                .iter()
                .map(|&e| {
                    let (a, b) = g.endpoints(e);
                    (a.0, b.0)
                })
                .collect::<Vec<_>>(),
        );
        let isolated = degree.iter().filter(|&&d| d == 0).count();
        if sub.component_count() == isolated + 1 {
            out.insert(edges.into_iter().collect());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cycles_match_brute_force(g in small_multigraph()) {
        let found: BTreeSet<BTreeSet<EdgeId>> = g.cycles().iter().map(|c| c.edges().collect()).collect();
        prop_assert_eq!(found.len(), g.cycles().len());
        prop_assert_eq!(found, brute_force_cycles(&g));
    }

    #[test]
    fn disjoint_pairs_match_brute_force(g in small_multigraph()) {
        let cycles = brute_force_cycles(&g);
        let vertices = |c: &BTreeSet<EdgeId>| -> BTreeSet<usize> {
            c.iter().flat_map(|&e| { let (a, b) = g.endpoints(e); [a.0, b.0] }).collect()
        };
        let expected = cycles
            .iter()
            .enumerate()
            .flat_map(|(i, a)| cycles.iter().skip(i + 1).map(move |b| (a, b)))
            .filter(|(a, b)| vertices(a).is_disjoint(&vertices(b)))
            .count();
        prop_assert_eq!(g.disjoint_cycle_pairs().len(), expected);
    }

    #[test]
    fn switching_every_crossing_flips_signs(i in any::<prop::sample::Index>(), bits in any::<u64>()) {
        let p = &corpus()[i.index(corpus().len())];
        let f = Lift::nth(p, bits % (1 << p.cr()));
        for (_, d) in constituents(&f) {
            let s = d.switched();
            let (a, b) = (classify_small_link(&d), classify_small_link(&s));
            let flipped = match a {
                LinkClass::Hopf(x) => LinkClass::Hopf(-x),
                LinkClass::Trefoil(x) => LinkClass::Trefoil(-x),
                other => other,
            };
            prop_assert_eq!(b, flipped);
            prop_assert_eq!(normalized_bracket(&s), normalized_bracket(&d).invert_variable());
            prop_assert_eq!(tricolor_count(&s), tricolor_count(&d));
        }
    }

    #[test]
    fn orientation_does_not_change_classes(i in any::<prop::sample::Index>(), bits in any::<u64>()) {
        let p = &corpus()[i.index(corpus().len())];
        let f = Lift::nth(p, bits % (1 << p.cr()));
        for (_, d) in constituents(&f) {
            let r = d.reversed_component(0);
            prop_assert_eq!(classify_small_link(&r).unsigned(), classify_small_link(&d).unsigned());
            prop_assert_eq!(kauffman_bracket(&r), kauffman_bracket(&d));
            if d.component_count() == 2 {
                prop_assert_eq!(linking_number(&r).unwrap(), -linking_number(&d).unwrap());
            }
        }
    }

    #[test]
    fn mirror_keeps_types_and_verdict(i in any::<prop::sample::Index>()) {
        let p = &corpus()[i.index(corpus().len())];
        let m = p.mirror();
        prop_assert!(m.is_spherical());
        prop_assert_eq!(double_point_types(&m), double_point_types(p));
        prop_assert_eq!(projection_knotted(&m).unwrap().knotted, projection_knotted(p).unwrap().knotted);
    }

    #[test]
    fn serialization_round_trips(i in any::<prop::sample::Index>(), bits in any::<u64>()) {
        let p = &corpus()[i.index(corpus().len())];
        let f = Lift::nth(p, bits % (1 << p.cr()));
        let doc = parse(&serialize(p, Some(f.over()))).unwrap();
        prop_assert_eq!(&doc.projection, p);
        prop_assert_eq!(doc.over.as_deref(), Some(f.over()));
    }
}
