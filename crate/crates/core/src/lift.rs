//! Lifts of a projection and their constituent knots and 2-component links.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{DoublePointId, Projection};
use crate::graph::{AbstractGraph, CycleSubgraph, EdgeId};
use crate::invariants::{classify_small_link, LinkClass};
use crate::link::{LinkDiagram, LinkError, Visit};

/// A projection with, for every double point, the index (0 or 1) of the
/// passage that runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift<'p> {
    projection: &'p Projection,
    over: Vec<u8>,
}

impl<'p> Lift<'p> {
    pub fn new(projection: &'p Projection, over: Vec<u8>) -> Self {
        assert_eq!(over.len(), projection.cr(), "one over passage per double point");
        assert!(over.iter().all(|&b| b < 2));
        Lift { projection, over }
    }

    /// The `index`-th lift in lexicographic order of over-passage vectors,
    /// double point 0 most significant.
    pub fn nth(projection: &'p Projection, index: u64) -> Self {
        let n = projection.cr();
        let over = (0..n).map(|i| (index >> (n - 1 - i) & 1) as u8).collect();
        Lift { projection, over }
    }

    pub fn projection(&self) -> &'p Projection {
        self.projection
    }

    pub fn over(&self) -> &[u8] {
        &self.over
    }

    pub fn over_passage(&self, d: DoublePointId) -> u8 {
        self.over[d.0]
    }

    pub fn bits(&self) -> String {
        self.over.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
    }
}

/// All `2^cr` lifts in lexicographic order.
pub fn enumerate_lifts(p: &Projection) -> Vec<Lift<'_>> {
    assert!(p.cr() < 32, "lift enumeration over {} double points", p.cr());
    (0..1u64 << p.cr()).map(|i| Lift::nth(p, i)).collect()
}

/// A subgraph homeomorphic to one circle or to two disjoint circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subgraph {
    Cycle(CycleSubgraph),
    Pair(CycleSubgraph, CycleSubgraph),
}

impl Subgraph {
    pub fn cycles(&self) -> Vec<&CycleSubgraph> {
        match self {
            Subgraph::Cycle(c) => vec![c],
            Subgraph::Pair(a, b) => vec![a, b],
        }
    }

    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.cycles().into_iter().flat_map(|c| c.edges()).collect()
    }

    pub fn describe(&self, g: &AbstractGraph) -> String {
        match self {
            Subgraph::Cycle(c) => c.describe(g),
            Subgraph::Pair(a, b) => format!("{} + {}", a.describe(g), b.describe(g)),
        }
    }
}

/// Restriction of a projection to a subgraph, with over/under data still
/// open. `crossings[i]` is the double point that becomes crossing `i`.
#[derive(Clone, Debug)]
pub struct Subdiagram {
    pub subgraph: Subgraph,
    pub crossings: Vec<DoublePointId>,
    shadow: LinkDiagram,
}

impl Subdiagram {
    pub fn new(p: &Projection, cycles: &[&CycleSubgraph]) -> Result<Self, LinkError> {
        let subgraph = match cycles {
            [c] => Subgraph::Cycle((*c).clone()),
            [a, b] => {
                if !a.vertex_set().is_disjoint(&b.vertex_set()) {
                    return Err(LinkError::OverlappingComponents);
                }
                Subgraph::Pair((*a).clone(), (*b).clone())
            }
            _ => {
                return Err(LinkError::ComponentCount {
                    expected: 2,
                    found: cycles.len(),
                })
            }
        };
        let edges = subgraph.edges();
        let survives = |d: DoublePointId| p.double_point(d).passages.iter().all(|q| edges.contains(&q.edge));
        let crossings: Vec<DoublePointId> = p.double_point_ids().filter(|&d| survives(d)).collect();
        let index = |d: DoublePointId| crossings.binary_search(&d).unwrap();
        let mut walks = Vec::new();
        for cycle in cycles {
            let mut walk = Vec::new();
            for step in cycle.steps() {
                let points = p.points_on_edge(step.edge);
                let ordinals: Vec<usize> = if step.forward {
                    (0..points.len()).collect()
                } else {
                    (0..points.len()).rev().collect()
                };
                for j in ordinals {
                    let d = points[j];
                    if !survives(d) {
                        continue;
                    }
                    let dp = p.double_point(d);
                    let k = usize::from(!(dp.passages[0].edge == step.edge && dp.passages[0].ordinal == j));
                    let dart = if step.forward {
                        dp.passages[k].incoming()
                    } else {
                        dp.passages[k].outgoing()
                    };
                    let slot = dp
                        .darts
                        .iter()
                        .position(|&x| x == dart)
                        .expect("passage dart at its double point");
                    walk.push(Visit {
                        crossing: index(d),
                        slot,
                    });
                }
            }
            walks.push(walk);
        }
        let shadow = LinkDiagram::from_walks(vec![0; crossings.len()], &walks)?;
        Ok(Subdiagram {
            subgraph,
            crossings,
            shadow,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// The diagram with every crossing's over strand set to parity 0.
    pub fn shadow(&self) -> &LinkDiagram {
        &self.shadow
    }

    pub fn diagram(&self, lift: &Lift<'_>) -> LinkDiagram {
        let mut d = self.shadow.clone();
        for (i, &c) in self.crossings.iter().enumerate() {
            d.over[i] = lift.over_passage(c);
        }
        d
    }
}

/// `f` restricted to one cycle or two disjoint cycles.
pub fn restrict(lift: &Lift<'_>, cycles: &[&CycleSubgraph]) -> Result<LinkDiagram, LinkError> {
    Ok(Subdiagram::new(lift.projection(), cycles)?.diagram(lift))
}

/// Every cycle and every disjoint pair of cycles of a projection's graph,
/// prepared for repeated evaluation over lifts.
#[derive(Clone, Debug)]
pub struct ConstituentPlan {
    pub subdiagrams: Vec<Subdiagram>,
}

impl ConstituentPlan {
    pub fn new(p: &Projection) -> Self {
        let g = p.graph();
        let mut subdiagrams = Vec::new();
        for c in g.cycles() {
            subdiagrams.push(Subdiagram::new(p, &[&c]).expect("cycle restriction"));
        }
        for (a, b) in g.disjoint_cycle_pairs() {
            subdiagrams.push(Subdiagram::new(p, &[&a, &b]).expect("pair restriction"));
        }
        ConstituentPlan { subdiagrams }
    }

    pub fn knot_count(&self) -> usize {
        self.subdiagrams
            .iter()
            .filter(|s| matches!(s.subgraph, Subgraph::Cycle(_)))
            .count()
    }

    pub fn pair_count(&self) -> usize {
        self.subdiagrams.len() - self.knot_count()
    }

    pub fn diagrams<'a>(&'a self, lift: &'a Lift<'_>) -> impl Iterator<Item = (&'a Subgraph, LinkDiagram)> + 'a {
        self.subdiagrams.iter().map(move |s| (&s.subgraph, s.diagram(lift)))
    }

    pub fn classify(&self, lift: &Lift<'_>) -> Vec<LinkClass> {
        self.subdiagrams
            .iter()
            .map(|s| classify_small_link(&s.diagram(lift)))
            .collect()
    }
}

/// One diagram per cycle and per disjoint cycle pair.
pub fn constituents(lift: &Lift<'_>) -> Vec<(Subgraph, LinkDiagram)> {
    let plan = ConstituentPlan::new(lift.projection());
    plan.diagrams(lift).map(|(s, d)| (s.clone(), d)).collect()
}

impl fmt::Display for Lift<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lift {}", self.bits())
    }
}
