//! Regular projections of graphs on the sphere as combinatorial maps.
//!
//! Every edge of the graph is cut by the double points it passes through
//! into *segments* (arcs). Segment `k` of edge `e` runs from the `k`-th
//! node on the edge to the `k+1`-th, where node 0 is the tail vertex and the
//! last node is the head vertex. Each segment has two darts: its `tail` end
//! and its `head` end. Branch vertices and double points carry a
//! counterclockwise cyclic order of the darts incident to them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{AbstractGraph, EdgeId, UnionFind, VertexId};

/// Structured name of a dart: an end of a segment of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DartRef {
    pub edge: EdgeId,
    pub segment: usize,
    /// `false`: the end at the segment's start node; `true`: at its end node.
    pub head: bool,
}

impl DartRef {
    pub fn tail(edge: EdgeId, segment: usize) -> Self {
        DartRef {
            edge,
            segment,
            head: false,
        }
    }

    pub fn head(edge: EdgeId, segment: usize) -> Self {
        DartRef {
            edge,
            segment,
            head: true,
        }
    }
}

/// One of the two preimages of a double point: the `ordinal`-th double
/// point met walking edge `edge` from tail to head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Passage {
    pub edge: EdgeId,
    pub ordinal: usize,
}

impl Passage {
    /// Dart through which the edge arrives at the double point.
    pub fn incoming(&self) -> DartRef {
        DartRef::head(self.edge, self.ordinal)
    }

    /// Dart through which the edge leaves the double point.
    pub fn outgoing(&self) -> DartRef {
        DartRef::tail(self.edge, self.ordinal + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoublePointId(pub usize);

impl fmt::Display for DoublePointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

/// A transversal double point. `darts` is the counterclockwise rotation;
/// darts 0 and 2 belong to `passages[0]`, darts 1 and 3 to `passages[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePoint {
    pub passages: [Passage; 2],
    pub darts: Vec<DartRef>,
}

/// Projection data as read from a file or assembled by hand, before
/// validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionData {
    pub graph: AbstractGraph,
    /// Counterclockwise rotation at each graph vertex.
    pub rotations: Vec<Vec<DartRef>>,
    pub double_points: Vec<DoublePoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    UnknownEdge,
    PassageOrdinals,
    DoublePointValence,
    Transversality,
    DoublePointAtVertex,
    Rotation,
    NotSpherical,
}

impl ViolationKind {
    pub fn label(&self) -> &'static str {
        match self {
            ViolationKind::UnknownEdge => "unknown edge",
            ViolationKind::PassageOrdinals => "passage ordinals",
            ViolationKind::DoublePointValence => "double point valence",
            ViolationKind::Transversality => "transversality",
            ViolationKind::DoublePointAtVertex => "double point at vertex",
            ViolationKind::Rotation => "rotation",
            ViolationKind::NotSpherical => "not spherical",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending element, e.g. `d2` or `v0`.
    pub element: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind.label(), self.element, self.detail)
    }
}

fn violation(kind: ViolationKind, element: impl Into<String>, detail: impl Into<String>) -> Violation {
    Violation {
        kind,
        element: element.into(),
        detail: detail.into(),
    }
}

/// Checks every structural invariant of a regular projection.
pub fn validate(data: &ProjectionData) -> Result<(), Vec<Violation>> {
    let g = &data.graph;
    let mut out = Vec::new();
    let edge_ok = |e: EdgeId| e.0 < g.edge_count();

    // passages and ordinals
    let mut ordinals: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (i, dp) in data.double_points.iter().enumerate() {
        for p in &dp.passages {
            if edge_ok(p.edge) {
                ordinals[p.edge.0].push(p.ordinal);
            } else {
                out.push(violation(
                    ViolationKind::UnknownEdge,
                    format!("d{i}"),
                    format!("edge index {}", p.edge.0),
                ));
            }
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    for (e, ords) in ordinals.iter_mut().enumerate() {
        ords.sort_unstable();
        if ords.iter().enumerate().any(|(k, &o)| k != o) {
            out.push(violation(
                ViolationKind::PassageOrdinals,
                g.edge_name(EdgeId(e)),
                format!("ordinals {ords:?} are not 0..{}", ords.len()),
            ));
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    let seg_count: Vec<usize> = ordinals.iter().map(|o| o.len() + 1).collect();
    let dart_ok = |d: &DartRef| edge_ok(d.edge) && d.segment < seg_count[d.edge.0];

    // double points
    let mut at_double: BTreeSet<DartRef> = BTreeSet::new();
    for (i, dp) in data.double_points.iter().enumerate() {
        let name = format!("d{i}");
        if dp.darts.len() != 4 {
            out.push(violation(
                ViolationKind::DoublePointValence,
                name,
                format!("{} darts listed, expected 4", dp.darts.len()),
            ));
            continue;
        }
        if let Some(bad) = dp.darts.iter().find(|d| !dart_ok(d)) {
            out.push(violation(
                ViolationKind::UnknownEdge,
                name,
                format!("dart {bad:?} does not exist"),
            ));
            continue;
        }
        for (k, p) in dp.passages.iter().enumerate() {
            let want: BTreeSet<DartRef> = [p.incoming(), p.outgoing()].into_iter().collect();
            let have: BTreeSet<DartRef> = [dp.darts[k], dp.darts[k + 2]].into_iter().collect();
            if want != have {
                out.push(violation(
                    ViolationKind::Transversality,
                    name.clone(),
                    format!("darts {} and {} are not the two ends of passage {}", k, k + 2, k),
                ));
            }
        }
        at_double.extend(dp.darts.iter().copied());
    }

    // vertex rotations
    if data.rotations.len() != g.vertex_count() {
        out.push(violation(
            ViolationKind::Rotation,
            "rotation",
            format!("{} rotations for {} vertices", data.rotations.len(), g.vertex_count()),
        ));
        return Err(out);
    }
    for v in g.vertices() {
        let mut expected = Vec::new();
        for e in g.edge_ids() {
            let (a, b) = g.endpoints(e);
            if a == v {
                expected.push(DartRef::tail(e, 0));
            }
            if b == v {
                expected.push(DartRef::head(e, seg_count[e.0] - 1));
            }
        }
        expected.sort();
        let mut have = data.rotations[v.0].clone();
        for d in &have {
            if at_double.contains(d) {
                out.push(violation(
                    ViolationKind::DoublePointAtVertex,
                    g.vertex_name(v),
                    format!("dart {d:?} is also listed at a double point"),
                ));
            }
        }
        have.sort();
        if have != expected {
            out.push(violation(
                ViolationKind::Rotation,
                g.vertex_name(v),
                "rotation is not a cyclic order of exactly the darts at this vertex".to_string(),
            ));
        }
    }
    if !out.is_empty() {
        return Err(out);
    }

    let p = Projection::assemble(data.clone());
    for comp in p.euler_by_component() {
        if comp.characteristic != 2 {
            out.push(violation(
                ViolationKind::NotSpherical,
                comp.first_node_name,
                format!(
                    "component has V - E + F = {} - {} + {} = {}",
                    comp.nodes, comp.arcs, comp.faces, comp.characteristic
                ),
            ));
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Index of a dart in a validated projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    pub fn arc(self) -> usize {
        self.0 / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Branch(VertexId),
    Double(DoublePointId),
}

pub(crate) struct ComponentEuler {
    pub nodes: usize,
    pub arcs: usize,
    pub faces: usize,
    pub characteristic: i64,
    pub first_node_name: String,
}

/// A validated regular projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    data: ProjectionData,
    arc_offset: Vec<usize>,
    arc_owner: Vec<(EdgeId, usize)>,
    /// per edge, double point at each ordinal
    points_on_edge: Vec<Vec<DoublePointId>>,
    dart_node: Vec<Node>,
    dart_pos: Vec<usize>,
}

impl TryFrom<ProjectionData> for Projection {
    type Error = Vec<Violation>;

    fn try_from(data: ProjectionData) -> Result<Self, Self::Error> {
        validate(&data)?;
        Ok(Projection::assemble(data))
    }
}

impl Projection {
    /// Builds the index structures. Callers guarantee everything but
    /// sphericity.
    fn assemble(data: ProjectionData) -> Projection {
        let g = &data.graph;
        let mut points_on_edge: Vec<Vec<DoublePointId>> = vec![Vec::new(); g.edge_count()];
        for (i, dp) in data.double_points.iter().enumerate() {
            for p in &dp.passages {
                let list = &mut points_on_edge[p.edge.0];
                if list.len() <= p.ordinal {
                    list.resize(p.ordinal + 1, DoublePointId(usize::MAX));
                }
                list[p.ordinal] = DoublePointId(i);
            }
        }
        let mut arc_offset = Vec::with_capacity(g.edge_count());
        let mut arc_owner = Vec::new();
        for e in g.edge_ids() {
            arc_offset.push(arc_owner.len());
            for s in 0..=points_on_edge[e.0].len() {
                arc_owner.push((e, s));
            }
        }
        let darts = arc_owner.len() * 2;
        let mut dart_node = vec![Node::Branch(VertexId(0)); darts];
        let mut dart_pos = vec![0; darts];
        let index = |d: &DartRef| 2 * (arc_offset[d.edge.0] + d.segment) + usize::from(d.head);
        for (v, rot) in data.rotations.iter().enumerate() {
            for (k, d) in rot.iter().enumerate() {
                dart_node[index(d)] = Node::Branch(VertexId(v));
                dart_pos[index(d)] = k;
            }
        }
        for (i, dp) in data.double_points.iter().enumerate() {
            for (k, d) in dp.darts.iter().enumerate() {
                dart_node[index(d)] = Node::Double(DoublePointId(i));
                dart_pos[index(d)] = k;
            }
        }
        Projection {
            data,
            arc_offset,
            arc_owner,
            points_on_edge,
            dart_node,
            dart_pos,
        }
    }

    pub fn data(&self) -> &ProjectionData {
        &self.data
    }

    pub fn into_data(self) -> ProjectionData {
        self.data
    }

    pub fn graph(&self) -> &AbstractGraph {
        &self.data.graph
    }

    /// Number of double points.
    pub fn cr(&self) -> usize {
        self.data.double_points.len()
    }

    pub fn double_points(&self) -> &[DoublePoint] {
        &self.data.double_points
    }

    pub fn double_point(&self, id: DoublePointId) -> &DoublePoint {
        &self.data.double_points[id.0]
    }

    pub fn double_point_ids(&self) -> impl Iterator<Item = DoublePointId> {
        (0..self.cr()).map(DoublePointId)
    }

    pub fn arc_count(&self) -> usize {
        self.arc_owner.len()
    }

    pub fn node_count(&self) -> usize {
        self.graph().vertex_count() + self.cr()
    }

    /// Double points met along `e`, tail to head.
    pub fn points_on_edge(&self, e: EdgeId) -> &[DoublePointId] {
        &self.points_on_edge[e.0]
    }

    pub fn segment_count(&self, e: EdgeId) -> usize {
        self.points_on_edge[e.0].len() + 1
    }

    pub fn dart(&self, d: DartRef) -> Dart {
        Dart(2 * (self.arc_offset[d.edge.0] + d.segment) + usize::from(d.head))
    }

    pub fn dart_ref(&self, d: Dart) -> DartRef {
        let (edge, segment) = self.arc_owner[d.arc()];
        DartRef {
            edge,
            segment,
            head: d.0 % 2 == 1,
        }
    }

    pub fn node_of(&self, d: Dart) -> Node {
        self.dart_node[d.0]
    }

    /// Position of `d` in its node's rotation (for double points, the slot
    /// index 0..4).
    pub fn slot_of(&self, d: Dart) -> usize {
        self.dart_pos[d.0]
    }

    pub fn rotation(&self, node: Node) -> Vec<Dart> {
        match node {
            Node::Branch(v) => self.data.rotations[v.0].iter().map(|&d| self.dart(d)).collect(),
            Node::Double(p) => self.data.double_points[p.0]
                .darts
                .iter()
                .map(|&d| self.dart(d))
                .collect(),
        }
    }

    fn rotation_len(&self, node: Node) -> usize {
        match node {
            Node::Branch(v) => self.data.rotations[v.0].len(),
            Node::Double(_) => 4,
        }
    }

    fn rotation_at(&self, node: Node, k: usize) -> Dart {
        let d = match node {
            Node::Branch(v) => self.data.rotations[v.0][k],
            Node::Double(p) => self.data.double_points[p.0].darts[k],
        };
        self.dart(d)
    }

    /// Counterclockwise successor of `d` around its node.
    pub fn rot_next(&self, d: Dart) -> Dart {
        let node = self.node_of(d);
        let k = (self.dart_pos[d.0] + 1) % self.rotation_len(node);
        self.rotation_at(node, k)
    }

    /// Face successor: cross the arc, then turn counterclockwise. The face
    /// lies to the right of the direction of travel.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next(d.twin())
    }

    /// Faces as cyclic dart sequences. A vertex with no incident arcs is a
    /// component with a single empty face.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n = 2 * self.arc_count();
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = Dart(s);
            while !seen[d.0] {
                seen[d.0] = true;
                face.push(d);
                d = self.face_next(d);
            }
            faces.push(face);
        }
        for v in self.graph().vertices() {
            if self.data.rotations[v.0].is_empty() {
                faces.push(Vec::new());
            }
        }
        faces
    }

    pub fn node_index(&self, node: Node) -> usize {
        match node {
            Node::Branch(v) => v.0,
            Node::Double(p) => self.graph().vertex_count() + p.0,
        }
    }

    /// Connected component index of every node.
    pub fn node_components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.node_count());
        for a in 0..self.arc_count() {
            let (x, y) = (self.node_of(Dart(2 * a)), self.node_of(Dart(2 * a + 1)));
            uf.union(self.node_index(x), self.node_index(y));
        }
        (0..self.node_count()).map(|i| uf.find(i)).collect()
    }

    pub(crate) fn euler_by_component(&self) -> Vec<ComponentEuler> {
        let comp = self.node_components();
        let mut roots: Vec<usize> = comp.clone();
        roots.sort_unstable();
        roots.dedup();
        let slot = |c: usize| roots.binary_search(&c).unwrap();
        let mut tally = vec![(0usize, 0usize, 0usize); roots.len()];
        for &c in &comp {
            tally[slot(c)].0 += 1;
        }
        for a in 0..self.arc_count() {
            let n = self.node_index(self.node_of(Dart(2 * a)));
            tally[slot(comp[n])].1 += 1;
        }
        for face in self.faces() {
            if let Some(&d) = face.first() {
                tally[slot(comp[self.node_index(self.node_of(d))])].2 += 1
            }
        }
        for v in self.graph().vertices() {
            if self.data.rotations[v.0].is_empty() {
                tally[slot(comp[v.0])].2 += 1;
            }
        }
        roots
            .iter()
            .zip(tally)
            .map(|(&root, (nodes, arcs, faces))| ComponentEuler {
                nodes,
                arcs,
                faces,
                characteristic: nodes as i64 - arcs as i64 + faces as i64,
                first_node_name: self.node_name(root),
            })
            .collect()
    }

    pub fn is_spherical(&self) -> bool {
        self.euler_by_component().iter().all(|c| c.characteristic == 2)
    }

    pub fn node_name(&self, index: usize) -> String {
        let nv = self.graph().vertex_count();
        if index < nv {
            self.graph().vertex_name(VertexId(index)).to_string()
        } else {
            format!("d{}", index - nv)
        }
    }

    /// Reflection of the sphere: every rotation reversed.
    pub fn mirror(&self) -> Projection {
        let mut data = self.data.clone();
        for rot in &mut data.rotations {
            if rot.len() > 1 {
                rot[1..].reverse();
            }
        }
        for dp in &mut data.double_points {
            dp.darts.swap(1, 3);
        }
        Projection::assemble(data)
    }

    /// Which passage of `p` lies on edge `e` at `ordinal`.
    pub fn passage_index(&self, p: DoublePointId, passage: Passage) -> usize {
        let dp = &self.data.double_points[p.0];
        if dp.passages[0] == passage {
            0
        } else {
            1
        }
    }

    /// Projection of the subgraph spanned by `edges`: double points with a
    /// passage on a dropped edge disappear and the segments around them
    /// merge. Vertices not touching a kept edge are dropped. Returns the
    /// new projection and, for each surviving double point, its id in
    /// `self`.
    pub fn restrict_to_edges(&self, edges: &BTreeSet<EdgeId>) -> (Projection, Vec<DoublePointId>) {
        let g = self.graph();
        let kept_edges: Vec<EdgeId> = g.edge_ids().filter(|e| edges.contains(e)).collect();
        let mut vertex_new: Vec<Option<usize>> = vec![None; g.vertex_count()];
        let mut vnames = Vec::new();
        for v in g.vertices() {
            if kept_edges.iter().any(|&e| {
                let (a, b) = g.endpoints(e);
                a == v || b == v
            }) {
                vertex_new[v.0] = Some(vnames.len());
                vnames.push(g.vertex_name(v).to_string());
            }
        }
        let mut edge_new: Vec<Option<EdgeId>> = vec![None; g.edge_count()];
        let mut enames = Vec::new();
        for (i, &e) in kept_edges.iter().enumerate() {
            edge_new[e.0] = Some(EdgeId(i));
            let (a, b) = g.endpoints(e);
            enames.push((
                g.edge_name(e).to_string(),
                vnames[vertex_new[a.0].unwrap()].clone(),
                vnames[vertex_new[b.0].unwrap()].clone(),
            ));
        }
        let graph = AbstractGraph::from_names(vnames, enames).expect("subgraph of a valid graph");

        let survives = |p: DoublePointId| {
            self.data.double_points[p.0]
                .passages
                .iter()
                .all(|q| edges.contains(&q.edge))
        };
        // new segment index of old segment `s` of `e`
        let new_segment = |e: EdgeId, s: usize| self.points_on_edge[e.0][..s].iter().filter(|&&p| survives(p)).count();
        let map_dart = |d: DartRef| DartRef {
            edge: edge_new[d.edge.0].unwrap(),
            segment: new_segment(d.edge, d.segment),
            head: d.head,
        };

        let mut old_ids = Vec::new();
        let mut double_points = Vec::new();
        for (i, dp) in self.data.double_points.iter().enumerate() {
            if !survives(DoublePointId(i)) {
                continue;
            }
            old_ids.push(DoublePointId(i));
            let passages = dp.passages.map(|q| Passage {
                edge: edge_new[q.edge.0].unwrap(),
                ordinal: new_segment(q.edge, q.ordinal),
            });
            double_points.push(DoublePoint {
                passages,
                darts: dp.darts.iter().map(|&d| map_dart(d)).collect(),
            });
        }
        let mut rotations = vec![Vec::new(); graph.vertex_count()];
        for v in g.vertices() {
            if let Some(nv) = vertex_new[v.0] {
                rotations[nv] = self.data.rotations[v.0]
                    .iter()
                    .filter(|d| edges.contains(&d.edge))
                    .map(|&d| map_dart(d))
                    .collect();
            }
        }
        let data = ProjectionData {
            graph,
            rotations,
            double_points,
        };
        debug_assert!(validate(&data).is_ok(), "restriction must stay a valid projection");
        (Projection::assemble(data), old_ids)
    }
}

/// One old segment used by a rebuilt edge, walked against its edge's
/// direction when `reversed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcUse {
    pub edge: EdgeId,
    pub segment: usize,
    pub reversed: bool,
}

impl ArcUse {
    /// Segments `lo..=hi` of `e`, walked along the edge.
    pub fn forward(e: EdgeId, lo: usize, hi: usize) -> Vec<ArcUse> {
        (lo..=hi)
            .map(|segment| ArcUse {
                edge: e,
                segment,
                reversed: false,
            })
            .collect()
    }

    /// Segments `hi` down to `lo` of `e`, walked against the edge.
    pub fn backward(e: EdgeId, hi: usize, lo: usize) -> Vec<ArcUse> {
        (lo..=hi)
            .rev()
            .map(|segment| ArcUse {
                edge: e,
                segment,
                reversed: true,
            })
            .collect()
    }
}

impl Projection {
    /// Projection of `graph` whose edge `i` runs along the old segments
    /// `routes[i]`. Junctions at the `dropped` double point or at a vertex
    /// without an image in `vertex_map` are smoothed over; every other
    /// junction is a double point that survives.
    pub fn reroute(
        &self,
        graph: AbstractGraph,
        routes: &[Vec<ArcUse>],
        vertex_map: &[Option<VertexId>],
        dropped: Option<DoublePointId>,
    ) -> ProjectionData {
        let mut map: std::collections::HashMap<Dart, DartRef> = std::collections::HashMap::new();
        for (i, route) in routes.iter().enumerate() {
            let e = EdgeId(i);
            let mut seg = 0;
            let mut prev_end: Option<Dart> = None;
            for arc in route {
                let tail = self.dart(DartRef::tail(arc.edge, arc.segment));
                let (start, end) = if arc.reversed {
                    (tail.twin(), tail)
                } else {
                    (tail, tail.twin())
                };
                match prev_end {
                    None => {
                        map.insert(start, DartRef::tail(e, 0));
                    }
                    Some(pe) => {
                        let kept = match self.node_of(pe) {
                            Node::Double(x) => Some(x) != dropped,
                            Node::Branch(v) => vertex_map[v.0].is_some(),
                        };
                        if kept {
                            map.insert(pe, DartRef::head(e, seg));
                            seg += 1;
                            map.insert(start, DartRef::tail(e, seg));
                        }
                    }
                }
                prev_end = Some(end);
            }
            if let Some(pe) = prev_end {
                map.insert(pe, DartRef::head(e, seg));
            }
        }
        let mut double_points = Vec::new();
        for (i, dp) in self.data.double_points.iter().enumerate() {
            if Some(DoublePointId(i)) == dropped {
                continue;
            }
            let darts: Vec<DartRef> = dp.darts.iter().map(|&d| map[&self.dart(d)]).collect();
            let passage = |k: usize| {
                let (a, b) = (darts[k], darts[k + 2]);
                let h = if a.head { a } else { b };
                Passage {
                    edge: h.edge,
                    ordinal: h.segment,
                }
            };
            double_points.push(DoublePoint {
                passages: [passage(0), passage(1)],
                darts,
            });
        }
        let mut rotations = vec![Vec::new(); graph.vertex_count()];
        for v in self.graph().vertices() {
            if let Some(nv) = vertex_map[v.0] {
                rotations[nv.0] = self.data.rotations[v.0].iter().map(|&d| map[&self.dart(d)]).collect();
            }
        }
        ProjectionData {
            graph,
            rotations,
            double_points,
        }
    }

    /// The projection with every degree-2 vertex smoothed away (a circle
    /// keeps one vertex). Edge and vertex correspondences are those of
    /// [`AbstractGraph::suppress_degree_two`].
    pub fn suppress_degree_two(&self) -> (Projection, crate::graph::Reduction) {
        let g = self.graph();
        let red = g.suppress_degree_two();
        let mut routes = Vec::new();
        let mut used = vec![false; g.edge_count()];
        for ne in red.graph.edge_ids() {
            let (na, _) = red.graph.endpoints(ne);
            let start = g
                .vertices()
                .find(|v| red.vertex_map[v.0] == Some(na))
                .expect("surviving endpoint");
            let mut route = Vec::new();
            let mut at = start;
            loop {
                let e = g
                    .edge_ids()
                    .find(|&e| {
                        let (a, b) = g.endpoints(e);
                        !used[e.0] && red.edge_map[e.0] == ne && (a == at || b == at)
                    })
                    .expect("chain continues");
                used[e.0] = true;
                let (a, b) = g.endpoints(e);
                let last = self.segment_count(e) - 1;
                if a == at {
                    route.extend(ArcUse::forward(e, 0, last));
                    at = b;
                } else {
                    route.extend(ArcUse::backward(e, last, 0));
                    at = a;
                }
                if red.vertex_map[at.0].is_some() {
                    break;
                }
            }
            routes.push(route);
        }
        let data = self.reroute(red.graph.clone(), &routes, &red.vertex_map, None);
        let p = Projection::try_from(data).expect("suppression keeps a valid projection");
        (p, red)
    }
}

/// An end of an edge at one of its endpoints, used when specifying vertex
/// rotations independently of how edges are segmented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub head: bool,
}

/// Gauss-style description of a projection: the sequence of double point
/// labels along every edge, the crossing orientation of every double
/// point, and the cyclic order of edge ends at every vertex.
///
/// Label `i` must occur exactly twice overall. The first occurrence in
/// edge order becomes passage 0. With `flip[i] == false` the second
/// passage arrives at slot 1 (crossing from the right of the first
/// passage's direction of travel), otherwise at slot 3.
#[derive(Clone, Debug)]
pub struct GaussData {
    pub graph: AbstractGraph,
    pub sequences: Vec<Vec<usize>>,
    pub flip: Vec<bool>,
    pub rotations: Vec<Vec<EdgeEnd>>,
}

impl GaussData {
    pub fn to_data(&self) -> ProjectionData {
        let g = &self.graph;
        let n = self.flip.len();
        let mut occurrences: Vec<Vec<Passage>> = vec![Vec::new(); n];
        for (e, seq) in self.sequences.iter().enumerate() {
            for (k, &label) in seq.iter().enumerate() {
                occurrences[label].push(Passage {
                    edge: EdgeId(e),
                    ordinal: k,
                });
            }
        }
        let double_points = occurrences
            .iter()
            .enumerate()
            .map(|(i, occ)| {
                let (p0, p1) = (occ[0], occ[1]);
                let darts = if self.flip[i] {
                    vec![p0.incoming(), p1.outgoing(), p0.outgoing(), p1.incoming()]
                } else {
                    vec![p0.incoming(), p1.incoming(), p0.outgoing(), p1.outgoing()]
                };
                DoublePoint {
                    passages: [p0, p1],
                    darts,
                }
            })
            .collect();
        let rotations = self
            .rotations
            .iter()
            .map(|ends| {
                ends.iter()
                    .map(|end| {
                        if end.head {
                            DartRef::head(end.edge, self.sequences[end.edge.0].len())
                        } else {
                            DartRef::tail(end.edge, 0)
                        }
                    })
                    .collect()
            })
            .collect();
        debug_assert_eq!(self.sequences.len(), g.edge_count());
        ProjectionData {
            graph: g.clone(),
            rotations,
            double_points,
        }
    }

    /// Assembles the projection if the data describes a sphere immersion.
    pub fn realize(&self) -> Option<Projection> {
        let p = Projection::assemble(self.to_data());
        p.is_spherical().then_some(p)
    }
}

/// Edge ends at each vertex in edge order (tail before head).
pub fn default_rotations(g: &AbstractGraph) -> Vec<Vec<EdgeEnd>> {
    let mut rot = vec![Vec::new(); g.vertex_count()];
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        rot[a.0].push(EdgeEnd { edge: e, head: false });
        rot[b.0].push(EdgeEnd { edge: e, head: true });
    }
    rot
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::families;

    pub(crate) fn embedded_circle() -> Projection {
        let g = families::circle();
        GaussData {
            rotations: default_rotations(&g),
            graph: g,
            sequences: vec![vec![]],
            flip: vec![],
        }
        .realize()
        .unwrap()
    }

    pub(crate) fn figure_eight() -> Projection {
        let g = families::circle();
        GaussData {
            rotations: default_rotations(&g),
            graph: g,
            sequences: vec![vec![0, 0]],
            flip: vec![false],
        }
        .realize()
        .unwrap()
    }

    /// Standard trefoil shadow: Gauss word 012012 with the one orientation
    /// choice that closes up on the sphere.
    pub(crate) fn trefoil_shadow() -> Projection {
        let g = families::circle();
        for bits in 0..8u32 {
            let gd = GaussData {
                rotations: default_rotations(&g),
                graph: g.clone(),
                sequences: vec![vec![0, 1, 2, 0, 1, 2]],
                flip: (0..3).map(|i| bits >> i & 1 == 1).collect(),
            };
            if let Some(p) = gd.realize() {
                return p;
            }
        }
        unreachable!("the trefoil shadow is spherical")
    }

    #[test]
    fn circle_is_valid_with_two_faces() {
        let p = embedded_circle();
        assert!(validate(p.data()).is_ok());
        assert_eq!(p.faces().len(), 2);
    }

    #[test]
    fn figure_eight_has_three_faces() {
        let p = figure_eight();
        assert_eq!(p.cr(), 1);
        // V = 2 (vertex + double point), E = 3 segments: F = 2 - V + E
        assert_eq!(p.faces().len(), 3);
        assert!(validate(p.data()).is_ok());
    }

    #[test]
    fn trefoil_shadow_has_five_faces() {
        let p = trefoil_shadow();
        // V = 1 + 3, E = 7
        assert_eq!(p.faces().len(), 5);
    }

    fn realizations(word: &[usize], n: usize) -> usize {
        let g = families::circle();
        (0..1u32 << n)
            .filter(|bits| {
                GaussData {
                    rotations: default_rotations(&g),
                    graph: g.clone(),
                    sequences: vec![word.to_vec()],
                    flip: (0..n).map(|i| bits >> i & 1 == 1).collect(),
                }
                .realize()
                .is_some()
            })
            .count()
    }

    #[test]
    fn odd_interlaced_word_never_closes_up() {
        assert_eq!(realizations(&[0, 1, 0, 1], 2), 0);
        assert_eq!(realizations(&[0, 1, 1, 0], 2), 4);
        assert_eq!(realizations(&[0, 1, 2, 0, 1, 2], 3), 2);
    }

    #[test]
    fn three_dart_double_point_is_rejected() {
        let mut data = figure_eight().into_data();
        data.double_points[0].darts.pop();
        let errs = validate(&data).unwrap_err();
        assert!(errs.iter().any(|v| v.kind == ViolationKind::DoublePointValence));
    }

    #[test]
    fn torus_rotation_is_not_spherical() {
        // word 0101 with every orientation tried; the rejected ones fail
        // with the Euler violation
        let g = families::circle();
        let mut saw = false;
        for bits in 0..4u32 {
            let data = GaussData {
                rotations: default_rotations(&g),
                graph: g.clone(),
                sequences: vec![vec![0, 1, 0, 1]],
                flip: (0..2).map(|i| bits >> i & 1 == 1).collect(),
            }
            .to_data();
            if let Err(errs) = validate(&data) {
                assert!(errs.iter().all(|v| v.kind == ViolationKind::NotSpherical));
                saw = true;
            }
        }
        assert!(saw);
    }

    #[test]
    fn swapped_opposite_darts_break_transversality() {
        let mut data = trefoil_shadow().into_data();
        data.double_points[1].darts.swap(1, 2);
        let errs = validate(&data).unwrap_err();
        assert!(errs.iter().any(|v| v.kind == ViolationKind::Transversality));
    }

    #[test]
    fn mirror_is_an_involution() {
        let p = trefoil_shadow();
        assert_eq!(p.mirror().mirror(), p);
        assert!(validate(p.mirror().data()).is_ok());
        let c = embedded_circle();
        assert_eq!(c.mirror(), c);
    }

    #[test]
    fn restriction_drops_foreign_crossings() {
        // theta with one crossing between e0 and e1
        let g = families::theta();
        let rot = default_rotations(&g);
        let mut found = None;
        for a in [false, true] {
            let mut rot = rot.clone();
            if a {
                rot[0].swap(1, 2);
            }
            for f in [false, true] {
                let gd = GaussData {
                    graph: g.clone(),
                    sequences: vec![vec![0], vec![0], vec![]],
                    flip: vec![f],
                    rotations: rot.clone(),
                };
                if let Some(p) = gd.realize() {
                    found = Some(p);
                }
            }
        }
        let p = found.expect("some rotation realizes a theta with one crossing");
        let keep: BTreeSet<EdgeId> = [EdgeId(0), EdgeId(2)].into_iter().collect();
        let (r, ids) = p.restrict_to_edges(&keep);
        assert_eq!(r.cr(), 0);
        assert!(ids.is_empty());
        assert!(validate(r.data()).is_ok());
        let keep: BTreeSet<EdgeId> = [EdgeId(0), EdgeId(1)].into_iter().collect();
        let (r, ids) = p.restrict_to_edges(&keep);
        assert_eq!(r.cr(), 1);
        assert_eq!(ids, vec![DoublePointId(0)]);
    }
}
