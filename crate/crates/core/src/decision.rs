//! Decision procedures for projections with at most three double points.
//!
//! A lift is reported trivial (and totally free) exactly when none of its
//! constituent knots and 2-component links is a Hopf link or a trefoil.
//! Sufficiency is the classification theorem for such projections. The
//! converse is standard knot theory: a trivial spatial graph has only
//! trivial constituents, and a Hopf link or trefoil has a non-free
//! complement group, so its presence rules out total freeness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{is_trivial_circle_projection, CatalogError};
use crate::diagram::{ArcUse, Dart, DartRef, DoublePointId, Node, Projection};
use crate::graph::{CycleSubgraph, EdgeId, UnionFind, VertexId};
use crate::invariants::LinkClass;
use crate::lift::{enumerate_lifts, ConstituentPlan, Lift};

/// Largest number of double points the decision procedures accept.
pub const MAX_DECISION_CR: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecisionError {
    #[error("out of theorem range: {cr} double points, at most {max} supported")]
    OutOfRange { cr: usize, max: usize },
    #[error("planarity required: the graph does not embed in the sphere")]
    PlanarityRequired,
    #[error("type mismatch: {point} is {found}, expected Type-A")]
    TypeMismatch {
        point: DoublePointId,
        found: DoublePointType,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DoublePointType {
    TypeS,
    TypeA,
    TypeD,
}

impl fmt::Display for DoublePointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DoublePointType::TypeS => "Type-S",
            DoublePointType::TypeA => "Type-A",
            DoublePointType::TypeD => "Type-D",
        })
    }
}

/// Types of all double points, read on the graph with degree-2 vertices
/// suppressed.
pub fn double_point_types(p: &Projection) -> Vec<DoublePointType> {
    let red = p.graph().suppress_degree_two();
    p.double_points()
        .iter()
        .map(|dp| {
            let (e1, e2) = (red.edge_map[dp.passages[0].edge.0], red.edge_map[dp.passages[1].edge.0]);
            if e1 == e2 {
                DoublePointType::TypeS
            } else if red.graph.edges_meet(e1, e2) {
                DoublePointType::TypeA
            } else {
                DoublePointType::TypeD
            }
        })
        .collect()
}

pub fn double_point_type(p: &Projection, d: DoublePointId) -> DoublePointType {
    double_point_types(p)[d.0]
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCensus {
    pub type_s: usize,
    pub type_a: usize,
    pub type_d: usize,
}

impl TypeCensus {
    pub fn of(p: &Projection) -> Self {
        let mut c = TypeCensus::default();
        for t in double_point_types(p) {
            match t {
                DoublePointType::TypeS => c.type_s += 1,
                DoublePointType::TypeA => c.type_a += 1,
                DoublePointType::TypeD => c.type_d += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.type_s + self.type_a + self.type_d
    }

    pub fn has_s_or_a(&self) -> bool {
        self.type_s + self.type_a > 0
    }
}

/// Double points on the image of `gamma` where exactly one strand belongs
/// to `gamma`.
pub fn interferency(p: &Projection, gamma: &CycleSubgraph) -> usize {
    p.double_points()
        .iter()
        .filter(|dp| dp.passages.iter().filter(|q| gamma.contains_edge(q.edge)).count() == 1)
        .count()
}

/// The image of `gamma` alone.
pub fn cycle_projection(p: &Projection, gamma: &CycleSubgraph) -> Projection {
    p.restrict_to_edges(&gamma.edges().collect()).0
}

/// Whether the image of `gamma` is a circle projection carrying only the
/// unknot and is crossed by at most one other strand. When true, every
/// lift bounds a disk for `gamma` that meets the rest of the graph only on
/// its boundary; when false nothing is claimed.
pub fn unknot_certificate(p: &Projection, gamma: &CycleSubgraph) -> bool {
    if interferency(p, gamma) > 1 {
        return false;
    }
    match is_trivial_circle_projection(&cycle_projection(p, gamma)) {
        Ok(trivial) => trivial,
        Err(CatalogError::OutOfRange { .. }) | Err(CatalogError::NotACircle) => false,
    }
}

/// A connected piece of the graph left after removing a cycle and every
/// edge whose image crosses the cycle's image, with the cycle vertices it
/// ends at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualPiece {
    pub edges: BTreeSet<EdgeId>,
    /// Segments as (edge, segment index).
    pub segments: Vec<(EdgeId, usize)>,
    /// Cycle vertices where the piece ends, one entry per end.
    pub ends: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    /// Faces of the full projection inside this region, as indices into
    /// [`Projection::faces`].
    pub faces: Vec<usize>,
    pub pieces: Vec<ResidualPiece>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDecomposition {
    pub cycle: CycleSubgraph,
    /// Edges off the cycle whose image crosses the cycle's image.
    pub crossing_edges: BTreeSet<EdgeId>,
    /// One region per face of the cycle's image.
    pub regions: Vec<Region>,
    /// Pieces in parts of the projection disconnected from the cycle's
    /// image; the map data does not say which region holds them.
    pub detached: Vec<ResidualPiece>,
}

pub fn regions_of_cycle(p: &Projection, gamma: &CycleSubgraph) -> RegionDecomposition {
    let in_gamma = |e: EdgeId| gamma.contains_edge(e);
    let faces = p.faces();
    let mut face_of = vec![usize::MAX; 2 * p.arc_count()];
    for (i, f) in faces.iter().enumerate() {
        for d in f {
            face_of[d.0] = i;
        }
    }
    // faces joined across arcs off the cycle
    let mut uf = UnionFind::new(faces.len());
    for a in 0..p.arc_count() {
        if !in_gamma(p.dart_ref(Dart(2 * a)).edge) {
            uf.union(face_of[2 * a], face_of[2 * a + 1]);
        }
    }

    // faces of the cycle's image, located through the segments on the cycle
    let image = cycle_projection(p, gamma);
    let surviving = |e: EdgeId, s: usize| {
        p.points_on_edge(e)[..s]
            .iter()
            .filter(|&&d| p.double_point(d).passages.iter().all(|q| in_gamma(q.edge)))
            .count()
    };
    let image_edge = |e: EdgeId| {
        let name = p.graph().edge_name(e);
        image.graph().edge_by_name(name).expect("cycle edge survives")
    };
    let image_faces = image.faces();
    let mut region_of_class: BTreeMap<usize, usize> = BTreeMap::new();
    for e in gamma.edges() {
        for s in 0..p.segment_count(e) {
            for head in [false, true] {
                let d = p.dart(DartRef {
                    edge: e,
                    segment: s,
                    head,
                });
                let id = image.dart(DartRef {
                    edge: image_edge(e),
                    segment: surviving(e, s),
                    head,
                });
                let r = image_faces
                    .iter()
                    .position(|f| f.contains(&id))
                    .expect("dart on a face");
                region_of_class.insert(uf.find(face_of[d.0]), r);
            }
        }
    }
    let mut regions: Vec<Region> = (0..image_faces.len())
        .map(|_| Region {
            faces: Vec::new(),
            pieces: Vec::new(),
        })
        .collect();
    for i in 0..faces.len() {
        if let Some(&r) = region_of_class.get(&uf.find(i)) {
            regions[r].faces.push(i);
        }
    }

    // residual pieces: what is left of the graph after dropping the cycle
    // and every edge crossing its image, split into connected pieces
    let crossing_edges: BTreeSet<EdgeId> = p
        .double_points()
        .iter()
        .filter(|dp| dp.passages.iter().any(|q| in_gamma(q.edge)))
        .flat_map(|dp| dp.passages.iter().map(|q| q.edge))
        .filter(|&e| !in_gamma(e))
        .collect();
    let on_cycle = |n: Node| matches!(n, Node::Branch(v) if gamma.vertices().contains(&v));
    let kept_arc = |a: usize| {
        let e = p.dart_ref(Dart(2 * a)).edge;
        !in_gamma(e) && !crossing_edges.contains(&e)
    };
    let mut pieces_uf = UnionFind::new(p.arc_count() + p.node_count());
    for a in (0..p.arc_count()).filter(|&a| kept_arc(a)) {
        for d in [Dart(2 * a), Dart(2 * a + 1)] {
            let n = p.node_of(d);
            if !on_cycle(n) {
                pieces_uf.union(a, p.arc_count() + p.node_index(n));
            }
        }
    }
    let mut grouped: BTreeMap<usize, (usize, ResidualPiece)> = BTreeMap::new();
    for a in (0..p.arc_count()).filter(|&a| kept_arc(a)) {
        let r = p.dart_ref(Dart(2 * a));
        let (_, piece) = grouped.entry(pieces_uf.find(a)).or_insert_with(|| {
            (
                a,
                ResidualPiece {
                    edges: BTreeSet::new(),
                    segments: Vec::new(),
                    ends: Vec::new(),
                },
            )
        });
        piece.edges.insert(r.edge);
        piece.segments.push((r.edge, r.segment));
        for d in [Dart(2 * a), Dart(2 * a + 1)] {
            if let Node::Branch(v) = p.node_of(d) {
                if gamma.vertices().contains(&v) {
                    piece.ends.push(p.graph().vertex_name(v).to_string());
                }
            }
        }
    }
    let mut detached = Vec::new();
    for (_, (a, piece)) in grouped {
        match region_of_class.get(&uf.find(face_of[2 * a])) {
            Some(&r) => regions[r].pieces.push(piece),
            None => detached.push(piece),
        }
    }
    RegionDecomposition {
        cycle: gamma.clone(),
        crossing_edges,
        regions,
        detached,
    }
}

fn check_range(p: &Projection) -> Result<(), DecisionError> {
    if p.cr() > MAX_DECISION_CR {
        return Err(DecisionError::OutOfRange {
            cr: p.cr(),
            max: MAX_DECISION_CR,
        });
    }
    Ok(())
}

/// Constituents of one lift that are Hopf links or trefoils.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftEvidence {
    pub over_strand: String,
    pub constituents: Vec<(String, LinkClass)>,
}

impl LiftEvidence {
    pub fn obstructions(&self) -> impl Iterator<Item = &(String, LinkClass)> {
        self.constituents.iter().filter(|(_, c)| c.is_obstruction())
    }

    pub fn has_obstruction(&self) -> bool {
        self.obstructions().next().is_some()
    }

    pub fn has_hopf(&self) -> bool {
        self.constituents.iter().any(|(_, c)| matches!(c, LinkClass::Hopf(_)))
    }

    pub fn has_unclassified(&self) -> bool {
        self.constituents.iter().any(|(_, c)| *c == LinkClass::Unclassified)
    }
}

/// Classifies every constituent of every lift. No range or planarity
/// requirement: constituents with more than three crossings come back
/// unclassified.
pub fn lift_evidence(p: &Projection) -> Vec<LiftEvidence> {
    let plan = ConstituentPlan::new(p);
    let g = p.graph();
    enumerate_lifts(p)
        .par_iter()
        .map(|f| LiftEvidence {
            over_strand: f.bits(),
            constituents: plan
                .subdiagrams
                .iter()
                .zip(plan.classify(f))
                .map(|(s, c)| (s.subgraph.describe(g), c))
                .collect(),
        })
        .collect()
}

pub fn totally_free(f: &Lift<'_>) -> Result<bool, DecisionError> {
    check_range(f.projection())?;
    Ok(!ConstituentPlan::new(f.projection())
        .classify(f)
        .iter()
        .any(LinkClass::is_obstruction))
}

pub fn lift_trivial(f: &Lift<'_>) -> Result<bool, DecisionError> {
    if !f.projection().graph().is_planar() {
        return Err(DecisionError::PlanarityRequired);
    }
    totally_free(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftVerdict {
    pub evidence: LiftEvidence,
    pub trivial: bool,
    pub totally_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub cr: usize,
    pub types: Vec<DoublePointType>,
    pub census: TypeCensus,
    pub lifts: Vec<LiftVerdict>,
    pub knotted: bool,
    /// Least trivial lift by over-strand bit vector.
    pub witness: Option<String>,
}

/// Whether no lift is trivial, with per-lift evidence.
pub fn projection_knotted(p: &Projection) -> Result<DecisionReport, DecisionError> {
    if !p.graph().is_planar() {
        return Err(DecisionError::PlanarityRequired);
    }
    check_range(p)?;
    let lifts: Vec<LiftVerdict> = lift_evidence(p)
        .into_iter()
        .map(|evidence| {
            let free = !evidence.has_obstruction();
            LiftVerdict {
                evidence,
                trivial: free,
                totally_free: free,
            }
        })
        .collect();
    let witness = lifts.iter().find(|l| l.trivial).map(|l| l.evidence.over_strand.clone());
    Ok(DecisionReport {
        cr: p.cr(),
        types: double_point_types(p),
        census: TypeCensus::of(p),
        knotted: witness.is_none(),
        witness,
        lifts,
    })
}

/// Knottedness without assembling a report; stops at the first trivial
/// lift.
pub fn is_knotted(p: &Projection, plan: &ConstituentPlan) -> bool {
    (0..1u64 << p.cr()).all(|i| plan.classify(&Lift::nth(p, i)).iter().any(LinkClass::is_obstruction))
}

/// Smooths a Type-A double point so that the result is again a projection
/// of the same graph with one double point fewer.
///
/// Let the two edges meet at `v`. Each edge is cut at the double point
/// into its part towards `v` and its far part; the smoothing joins the part
/// of either edge towards `v` to the far part of the other, and the new
/// edge keeps the name of the edge whose far end it reaches. The other
/// smoothing would close a loop at `v` and is never produced. When the
/// edges are adjacent only after suppressing degree-2 vertices, the
/// suppressed projection is smoothed. A loop edge counts its end nearer to
/// the double point (fewer double points in between, tail end on a tie)
/// as its end at `v`; when the edges share both endpoints the shared
/// vertex nearer to the double point is used, the lower vertex on a tie.
pub fn smooth_type_a(p: &Projection, d: DoublePointId) -> Result<Projection, DecisionError> {
    let found = double_point_type(p, d);
    if found != DoublePointType::TypeA {
        return Err(DecisionError::TypeMismatch { point: d, found });
    }
    let (q, _) = p.suppress_degree_two();
    let g = q.graph();
    let [p1, p2] = q.double_point(d).passages;
    let (e1, e2) = (p1.edge, p2.edge);
    let m1 = q.points_on_edge(e1).len();
    let m2 = q.points_on_edge(e2).len();
    // (vertex, is head end, double points strictly between it and d)
    let ends = |e: EdgeId, ord: usize, m: usize| {
        let (a, b) = g.endpoints(e);
        [(a, false, ord), (b, true, m - 1 - ord)]
    };
    let mut best: Option<(usize, VertexId, bool, bool)> = None;
    for (v1, h1, c1) in ends(e1, p1.ordinal, m1) {
        for (v2, h2, c2) in ends(e2, p2.ordinal, m2) {
            let key = (c1 + c2, v1, h1, h2);
            if v1 == v2 && best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    let (_, _, h1, h2) = best.expect("Type-A edges share a vertex");
    let near = |e: EdgeId, ord: usize, h: bool, m: usize| {
        if h {
            ArcUse::backward(e, m, ord + 1)
        } else {
            ArcUse::forward(e, 0, ord)
        }
    };
    let far = |e: EdgeId, ord: usize, h: bool, m: usize| {
        if h {
            ArcUse::backward(e, ord, 0)
        } else {
            ArcUse::forward(e, ord + 1, m)
        }
    };
    // both routes start at the shared vertex; flip those whose edge ends there
    let orient = |route: Vec<ArcUse>, at_head: bool| {
        if at_head {
            route
                .into_iter()
                .rev()
                .map(|a| ArcUse {
                    reversed: !a.reversed,
                    ..a
                })
                .collect()
        } else {
            route
        }
    };
    let mut routes: Vec<Vec<ArcUse>> = g
        .edge_ids()
        .map(|e| ArcUse::forward(e, 0, q.segment_count(e) - 1))
        .collect();
    routes[e1.0] = orient(
        near(e2, p2.ordinal, h2, m2)
            .into_iter()
            .chain(far(e1, p1.ordinal, h1, m1))
            .collect(),
        h1,
    );
    routes[e2.0] = orient(
        near(e1, p1.ordinal, h1, m1)
            .into_iter()
            .chain(far(e2, p2.ordinal, h2, m2))
            .collect(),
        h2,
    );
    let identity: Vec<Option<VertexId>> = g.vertices().map(Some).collect();
    let data = q.reroute(g.clone(), &routes, &identity, Some(d));
    Ok(Projection::try_from(data).expect("smoothing keeps a valid projection"))
}

/// Multiset of unsigned constituent classes of one lift, sorted.
pub fn class_multiset(plan: &ConstituentPlan, f: &Lift<'_>) -> Vec<LinkClass> {
    let mut v: Vec<LinkClass> = plan.classify(f).iter().map(LinkClass::unsigned).collect();
    v.sort();
    v
}

/// The distinct per-lift class multisets of a projection.
pub fn lift_class_multisets(p: &Projection) -> BTreeSet<Vec<LinkClass>> {
    let plan = ConstituentPlan::new(p);
    enumerate_lifts(p).iter().map(|f| class_multiset(&plan, f)).collect()
}
