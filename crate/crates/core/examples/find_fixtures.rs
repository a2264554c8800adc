//! Searches for the projections shipped under `fixtures/` and prints them
//! in gpd form.
//!
//! ```text
//! cargo run --release -p regproj --example find_fixtures -- <name>
//! ```
//!
//! `<name>` is one of `knotted`, `petersen`, `handcuff4`, `regions`,
//! `theta-embedded`, `theta-type-a`, `trefoil`, `interferency3`,
//! `torus-word`.

use std::collections::BTreeSet;

use regproj::catalog::matching_words;
use regproj::corpus::{compositions, embedding, rotation_systems};
use regproj::decision::{double_point_types, projection_knotted, regions_of_cycle, DoublePointType};
use regproj::diagram::{default_rotations, GaussData, Projection};
use regproj::gpd::{serialize, serialize_data};
use regproj::graph::{families, AbstractGraph, CycleSubgraph, EdgeId};
use regproj::invariants::{classify_small_link, linking_number, LinkClass};
use regproj::lift::{enumerate_lifts, restrict, ConstituentPlan};

/// Sign of label `i`'s crossing with the edges' own orientations, given
/// the over passage.
fn base_sign(flip: bool, over: u8) -> i32 {
    let s = if over == 0 { 1 } else { -1 };
    if flip {
        -s
    } else {
        s
    }
}

fn direction(c: &CycleSubgraph, e: EdgeId) -> Option<i32> {
    c.steps()
        .iter()
        .find(|s| s.edge == e)
        .map(|s| if s.forward { 1 } else { -1 })
}

/// Whether every lift has a disjoint cycle pair with linking number ±1.
/// Rotations do not enter: signs depend only on orientations and flips.
fn every_lift_hopf(pairs: &[(CycleSubgraph, CycleSubgraph)], passages: &[[EdgeId; 2]], flip: &[bool]) -> bool {
    let n = flip.len();
    (0..1u32 << n).all(|lift| {
        let over = |i: usize| (lift >> (n - 1 - i) & 1) as u8;
        pairs.iter().any(|(a, b)| {
            let mut sum = 0;
            for (i, [e0, e1]) in passages.iter().enumerate() {
                let d = match (
                    direction(a, *e0),
                    direction(b, *e1),
                    direction(b, *e0),
                    direction(a, *e1),
                ) {
                    (Some(x), Some(y), _, _) | (_, _, Some(x), Some(y)) => x * y,
                    _ => continue,
                };
                sum += d * base_sign(flip[i], over(i));
            }
            sum.abs() == 2
        })
    })
}

fn split(word: &[usize], cut: &[usize]) -> Vec<Vec<usize>> {
    let mut at = 0;
    cut.iter()
        .map(|&len| {
            let s = word[at..at + len].to_vec();
            at += len;
            s
        })
        .collect()
}

fn passages_of(seqs: &[Vec<usize>], cr: usize) -> Vec<[EdgeId; 2]> {
    let mut occ: Vec<Vec<EdgeId>> = vec![Vec::new(); cr];
    for (e, s) in seqs.iter().enumerate() {
        for &l in s {
            occ[l].push(EdgeId(e));
        }
    }
    occ.into_iter().map(|v| [v[0], v[1]]).collect()
}

fn realize_any(g: &AbstractGraph, seqs: &[Vec<usize>], flip: &[bool]) -> Option<Projection> {
    rotation_systems(g).into_iter().find_map(|rotations| {
        GaussData {
            graph: g.clone(),
            sequences: seqs.to_vec(),
            flip: flip.to_vec(),
            rotations,
        }
        .realize()
    })
}

/// A projection of `g` with `cr` double points, all between disjoint
/// edges if `all_d`, on which every lift has a Hopf constituent.
fn hopf_everywhere(g: &AbstractGraph, cr: usize, all_d: bool) -> Option<Projection> {
    let pairs = g.disjoint_cycle_pairs();
    if pairs.is_empty() {
        return None;
    }
    for word in matching_words(cr) {
        for cut in compositions(2 * cr, g.edge_count()) {
            let seqs = split(&word, &cut);
            let passages = passages_of(&seqs, cr);
            if all_d && passages.iter().any(|[a, b]| a == b || g.edges_meet(*a, *b)) {
                continue;
            }
            for bits in 0..1u32 << cr {
                let flip: Vec<bool> = (0..cr).map(|i| bits >> i & 1 == 1).collect();
                if !every_lift_hopf(&pairs, &passages, &flip) {
                    continue;
                }
                if let Some(p) = realize_any(g, &seqs, &flip) {
                    return Some(p);
                }
            }
        }
    }
    None
}

/// Connected planar multigraphs on `v` vertices with `e` edges, minimum
/// degree 3 and at least three disjoint cycle pairs.
fn candidate_graphs(v: usize, e: usize) -> Vec<AbstractGraph> {
    let slots: Vec<(usize, usize)> = (0..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; e];
    fn rec(
        k: usize,
        from: usize,
        pick: &mut Vec<usize>,
        slots: &[(usize, usize)],
        v: usize,
        out: &mut Vec<AbstractGraph>,
    ) {
        if k == pick.len() {
            let edges: Vec<(usize, usize)> = pick.iter().map(|&i| slots[i]).collect();
            let g = AbstractGraph::new(v, &edges);
            if g.vertices().all(|x| g.degree(x) >= 3)
                && g.component_count() == 1
                && g.is_planar()
                && g.disjoint_cycle_pairs().len() >= 3
            {
                out.push(g);
            }
            return;
        }
        for i in from..slots.len() {
            pick[k] = i;
            rec(k + 1, i, pick, slots, v, out);
        }
    }
    rec(0, 0, &mut pick, &slots, v, &mut out);
    out
}

fn prism(n: usize) -> AbstractGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    AbstractGraph::new(2 * n, &edges)
}

fn knotted() -> Projection {
    let mut graphs = vec![prism(4), prism(5)];
    for (v, e) in [(2, 4), (2, 5), (3, 5), (3, 6), (4, 6), (2, 6), (3, 7), (4, 7), (5, 8)] {
        graphs.extend(candidate_graphs(v, e));
    }
    eprintln!("{} candidate graphs", graphs.len());
    for g in graphs {
        if let Some(p) = hopf_everywhere(&g, 3, true) {
            let report = projection_knotted(&p).expect("planar, cr 3");
            assert!(report.knotted);
            return p;
        }
    }
    panic!("no knotted projection found");
}

fn petersen() -> Projection {
    hopf_everywhere(&families::petersen(), 2, false).expect("Petersen drawing with two double points")
}

/// Handcuff whose two loops cross each other four times.
fn handcuff4() -> (Projection, Vec<u8>) {
    let g = families::handcuff();
    for word in matching_words(4) {
        for cut in compositions(8, 3) {
            let seqs = split(&word, &cut);
            if !seqs[1].is_empty() || passages_of(&seqs, 4).iter().any(|[a, b]| a == b) {
                continue;
            }
            for bits in 0..16u32 {
                let flip: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
                let Some(p) = realize_any(&g, &seqs, &flip) else {
                    continue;
                };
                let plan = ConstituentPlan::new(&p);
                // a lift whose loops are not layered one above the other
                for f in enumerate_lifts(&p) {
                    let d = plan
                        .subdiagrams
                        .iter()
                        .find(|s| s.crossing_count() == 4)
                        .unwrap()
                        .diagram(&f);
                    if linking_number(&d) == Ok(0) && f.over().contains(&0) && f.over().contains(&1) {
                        return (p.clone(), f.over().to_vec());
                    }
                }
            }
        }
    }
    panic!("no handcuff projection found");
}

/// A cycle with a self double point and two crossing edges whose
/// remaining graph splits into three pieces, one per region.
fn regions() -> Projection {
    // v0, v1 on the cycle (e0, e1); loops e2, e3 at v0 and e4 at v1;
    // e5, e6 run from v0 to v1 across the cycle
    let g = AbstractGraph::new(2, &[(0, 1), (1, 0), (0, 0), (0, 0), (1, 1), (0, 1), (0, 1)]);
    let gamma = g
        .cycles()
        .into_iter()
        .find(|c| c.len() == 2 && c.contains_edge(EdgeId(0)) && c.contains_edge(EdgeId(1)))
        .unwrap();
    let candidates = [
        vec![vec![0, 1], vec![0, 2], vec![], vec![], vec![], vec![1], vec![2]],
        vec![vec![0, 1], vec![2, 0], vec![], vec![], vec![], vec![1], vec![2]],
        vec![vec![1, 0], vec![0, 2], vec![], vec![], vec![], vec![1], vec![2]],
        vec![vec![1, 0, 2], vec![0], vec![], vec![], vec![], vec![1], vec![2]],
    ];
    for seqs in candidates {
        for bits in 0..8u32 {
            let flip: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
            for rotations in rotation_systems(&g) {
                let gd = GaussData {
                    graph: g.clone(),
                    sequences: seqs.clone(),
                    flip: flip.clone(),
                    rotations,
                };
                let Some(p) = gd.realize() else { continue };
                let r = regions_of_cycle(&p, &gamma);
                let ends: BTreeSet<usize> = r.regions.iter().map(|x| x.pieces.len()).collect();
                if r.regions.len() == 3 && ends == BTreeSet::from([1]) && r.crossing_edges.len() == 2 {
                    return p;
                }
            }
        }
    }
    panic!("no regions projection found");
}

fn first_realization(g: &AbstractGraph, seqs: &[Vec<usize>]) -> Projection {
    let cr = seqs.iter().map(Vec::len).sum::<usize>() / 2;
    (0..1u32 << cr)
        .find_map(|bits| realize_any(g, seqs, &(0..cr).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>()))
        .expect("realizable sequences")
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    let text = match which.as_str() {
        "knotted" => {
            let p = knotted();
            assert!(double_point_types(&p).iter().all(|t| *t == DoublePointType::TypeD));
            serialize(&p, None)
        }
        "petersen" => serialize(&petersen(), None),
        "handcuff4" => {
            let (p, over) = handcuff4();
            serialize(&p, Some(&over))
        }
        "regions" => serialize(&regions(), None),
        "theta-embedded" => serialize(&embedding(&families::theta()).unwrap(), None),
        "theta-type-a" => {
            // e0 and e1 cross once
            let g = families::theta();
            serialize(&first_realization(&g, &[vec![0], vec![0], vec![]]), None)
        }
        "trefoil" => {
            let g = families::circle();
            let p = first_realization(&g, &[vec![0, 1, 2, 0, 1, 2]]);
            let f = enumerate_lifts(&p)
                .into_iter()
                .find(|f| {
                    matches!(
                        classify_small_link(&restrict(f, &[&g.cycles()[0]]).unwrap()),
                        LinkClass::Trefoil(_)
                    )
                })
                .unwrap();
            serialize(&p, Some(f.over()))
        }
        "interferency3" => {
            // loop e0 at v0 crossed once by each of three parallel edges
            let g = AbstractGraph::new(3, &[(0, 0), (1, 2), (1, 2), (1, 2)]);
            serialize(
                &first_realization(&g, &[vec![0, 1, 2], vec![0], vec![1], vec![2]]),
                None,
            )
        }
        "torus-word" => {
            let g = families::circle();
            let gd = GaussData {
                graph: g.clone(),
                sequences: vec![vec![0, 1, 0, 1]],
                flip: vec![false, false],
                rotations: default_rotations(&g),
            };
            serialize_data(&gd.to_data(), None)
        }
        _ => {
            eprintln!("usage: find_fixtures <name> (see the module docs)");
            std::process::exit(2);
        }
    };
    print!("{text}");
}
