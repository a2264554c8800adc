//! Abstract multigraphs and the subgraph machinery the decision procedures
//! quantify over: cycles, vertex-disjoint cycle pairs, planarity and
//! degree-two suppression.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge `{edge}` uses undeclared vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
}

/// A finite multigraph. Loops and parallel edges are allowed; every edge
/// carries a fixed direction (tail, head) used only to order its arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractGraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
}

impl AbstractGraph {
    /// Builds a graph on vertices `0..vertex_count` with default names
    /// `v<i>` / `e<j>`.
    ///
    /// Panics if an endpoint is out of range.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        for &(a, b) in edges {
            assert!(a < vertex_count && b < vertex_count, "edge endpoint out of range");
        }
        AbstractGraph {
            vertex_names: (0..vertex_count).map(|i| format!("v{i}")).collect(),
            edge_names: (0..edges.len()).map(|i| format!("e{i}")).collect(),
            edges: edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))).collect(),
        }
    }

    pub fn from_names(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self, GraphError> {
        let mut index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let mut seen = HashSet::new();
        let mut edge_names = Vec::with_capacity(edges.len());
        let mut ends = Vec::with_capacity(edges.len());
        for (name, a, b) in edges {
            if !seen.insert(name.clone()) {
                return Err(GraphError::DuplicateEdge(name));
            }
            let lookup = |v: &String| {
                index.get(v).copied().ok_or_else(|| GraphError::UnknownVertex {
                    edge: name.clone(),
                    vertex: v.clone(),
                })
            };
            ends.push((lookup(&a)?, lookup(&b)?));
            edge_names.push(name);
        }
        Ok(AbstractGraph {
            vertex_names: vertices,
            edge_names,
            edges: ends,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edges[e.0];
        a == b
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.iter().position(|n| n == name).map(EdgeId)
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// True when the two edges have a common endpoint. An edge always
    /// meets itself.
    pub fn edges_meet(&self, e1: EdgeId, e2: EdgeId) -> bool {
        let (a, b) = self.edges[e1.0];
        let (c, d) = self.edges[e2.0];
        a == c || a == d || b == c || b == d
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count());
        for &(a, b) in &self.edges {
            uf.union(a.0, b.0);
        }
        uf.count()
    }

    /// Every subgraph homeomorphic to a circle, each once, in canonical
    /// form, sorted.
    pub fn cycles(&self) -> Vec<CycleSubgraph> {
        let mut found = BTreeSet::new();
        for e in self.edge_ids() {
            if self.is_loop(e) {
                found.insert(CycleSubgraph::canonical(self, vec![Step { edge: e, forward: true }]));
            }
        }
        let adj = self.adjacency();
        for s in 0..self.vertex_count() {
            let mut on_path = vec![false; self.vertex_count()];
            on_path[s] = true;
            let mut steps = Vec::new();
            self.cycle_dfs(&adj, s, s, &mut on_path, &mut steps, &mut found);
        }
        found.into_iter().collect()
    }

    fn cycle_dfs(
        &self,
        adj: &[Vec<(EdgeId, VertexId)>],
        start: usize,
        at: usize,
        on_path: &mut Vec<bool>,
        steps: &mut Vec<Step>,
        found: &mut BTreeSet<CycleSubgraph>,
    ) {
        for &(e, to) in &adj[at] {
            if self.is_loop(e) || steps.iter().any(|s| s.edge == e) {
                continue;
            }
            let forward = self.edges[e.0].0 .0 == at;
            if to.0 == start {
                if !steps.is_empty() {
                    steps.push(Step { edge: e, forward });
                    found.insert(CycleSubgraph::canonical(self, steps.clone()));
                    steps.pop();
                }
            } else if to.0 > start && !on_path[to.0] {
                on_path[to.0] = true;
                steps.push(Step { edge: e, forward });
                self.cycle_dfs(adj, start, to.0, on_path, steps, found);
                steps.pop();
                on_path[to.0] = false;
            }
        }
    }

    /// All unordered pairs of vertex-disjoint cycles, in the order induced
    /// by [`AbstractGraph::cycles`].
    pub fn disjoint_cycle_pairs(&self) -> Vec<(CycleSubgraph, CycleSubgraph)> {
        let cycles = self.cycles();
        let sets: Vec<BTreeSet<VertexId>> = cycles.iter().map(|c| c.vertex_set()).collect();
        let mut pairs = Vec::new();
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                if sets[i].is_disjoint(&sets[j]) {
                    pairs.push((cycles[i].clone(), cycles[j].clone()));
                }
            }
        }
        pairs
    }

    fn adjacency(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            adj[a.0].push((EdgeId(i), b));
            if a != b {
                adj[b.0].push((EdgeId(i), a));
            }
        }
        adj
    }

    /// Whether the graph embeds in the sphere.
    ///
    /// Loops and parallel edges are dropped, the simple graph is split into
    /// biconnected blocks, and each block is tested with the
    /// Demoucron–Malgrange–Pertuiset fragment-embedding procedure, which is
    /// O(V·E) fragment recomputations per block (fine at the sizes this crate
    /// handles). Blocks failing `E <= 3V - 6` are rejected up front.
    pub fn is_planar(&self) -> bool {
        let n = self.vertex_count();
        let mut simple: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in &self.edges {
            if a != b {
                simple[a.0].insert(b.0);
                simple[b.0].insert(a.0);
            }
        }
        biconnected_blocks(&simple)
            .into_iter()
            .all(|block| block_is_planar(&simple, &block))
    }

    /// Smooths away every degree-two vertex that is not the sole vertex of
    /// a circle component.
    pub fn suppress_degree_two(&self) -> Reduction {
        let n = self.vertex_count();
        let mut edges: Vec<Option<(VertexId, VertexId)>> = self.edges.iter().copied().map(Some).collect();
        // current representative of every original edge
        let mut rep: Vec<usize> = (0..self.edge_count()).collect();
        let mut removed = vec![false; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if removed[v] {
                    continue;
                }
                let incident: Vec<usize> = edges
                    .iter()
                    .enumerate()
                    .filter_map(|(i, e)| e.filter(|&(a, b)| a.0 == v || b.0 == v).map(|_| i))
                    .collect();
                if incident.len() != 2 {
                    continue;
                }
                let (i, j) = (incident[0], incident[1]);
                let (ei, ej) = (edges[i].unwrap(), edges[j].unwrap());
                if ei.0 == ei.1 || ej.0 == ej.1 {
                    continue;
                }
                let far = |(a, b): (VertexId, VertexId)| if a.0 == v { b } else { a };
                edges[i] = Some((far(ei), far(ej)));
                edges[j] = None;
                for r in rep.iter_mut() {
                    if *r == j {
                        *r = i;
                    }
                }
                removed[v] = true;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        let mut vertex_map = vec![None; n];
        let mut names = Vec::new();
        for v in 0..n {
            if !removed[v] {
                vertex_map[v] = Some(VertexId(names.len()));
                names.push(self.vertex_names[v].clone());
            }
        }
        let mut edge_slot = vec![None; edges.len()];
        let mut new_edges = Vec::new();
        let mut edge_names = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            if let Some((a, b)) = e {
                edge_slot[i] = Some(EdgeId(new_edges.len()));
                new_edges.push((vertex_map[a.0].unwrap(), vertex_map[b.0].unwrap()));
                edge_names.push(self.edge_names[i].clone());
            }
        }
        Reduction {
            graph: AbstractGraph {
                vertex_names: names,
                edge_names,
                edges: new_edges,
            },
            edge_map: rep.iter().map(|&r| edge_slot[r].unwrap()).collect(),
            vertex_map,
        }
    }
}

/// Result of [`AbstractGraph::suppress_degree_two`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: AbstractGraph,
    /// Original edge -> merged edge of `graph`.
    pub edge_map: Vec<EdgeId>,
    /// Original vertex -> surviving vertex, `None` if smoothed away.
    pub vertex_map: Vec<Option<VertexId>>,
}

/// One traversal step of a cycle: an edge and whether it is walked from
/// tail to head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub edge: EdgeId,
    pub forward: bool,
}

/// A subgraph homeomorphic to a circle, stored as a closed walk. The walk
/// direction is the orientation used for writhe and linking numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleSubgraph {
    steps: Vec<Step>,
    vertices: Vec<VertexId>,
}

impl CycleSubgraph {
    /// Canonical form: the lexicographically least rotation over both
    /// traversal directions, keyed by edge id then by direction
    /// (forward first).
    pub fn canonical(g: &AbstractGraph, steps: Vec<Step>) -> Self {
        let n = steps.len();
        let reversed: Vec<Step> = steps
            .iter()
            .rev()
            .map(|s| Step {
                edge: s.edge,
                forward: !s.forward,
            })
            .collect();
        let key = |v: &[Step]| -> Vec<(usize, bool)> { v.iter().map(|s| (s.edge.0, !s.forward)).collect() };
        let mut best: Option<Vec<Step>> = None;
        for dir in [&steps, &reversed] {
            for r in 0..n {
                let cand: Vec<Step> = dir[r..].iter().chain(dir[..r].iter()).copied().collect();
                if best.as_ref().is_none_or(|b| key(&cand) < key(b)) {
                    best = Some(cand);
                }
            }
        }
        let steps = best.unwrap_or_default();
        let vertices = steps
            .iter()
            .map(|s| {
                let (a, b) = g.endpoints(s.edge);
                if s.forward {
                    a
                } else {
                    b
                }
            })
            .collect();
        CycleSubgraph { steps, vertices }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps.iter().map(|s| s.edge)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.steps.iter().any(|s| s.edge == e)
    }

    /// Start vertex of each step.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Same subgraph walked the other way.
    pub fn reversed(&self) -> CycleSubgraph {
        let n = self.steps.len();
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step {
                edge: s.edge,
                forward: !s.forward,
            })
            .collect();
        let vertices = (0..n).map(|i| self.vertices[(2 * n - i) % n]).collect();
        CycleSubgraph { steps, vertices }
    }

    pub fn describe(&self, g: &AbstractGraph) -> String {
        let names: Vec<&str> = self.steps.iter().map(|s| g.edge_name(s.edge)).collect();
        format!("({})", names.join(" "))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Vertex sets of the biconnected blocks of a simple graph (bridges give
/// two-vertex blocks; isolated vertices give nothing).
fn biconnected_blocks(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent, neighbour iterator position)
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, adj[root].iter().copied().collect(), 0));
        while let Some(top) = stack.last_mut() {
            let (u, parent) = (top.0, top.1);
            if top.3 < top.2.len() {
                let w = top.2[top.3];
                top.3 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, u, adj[w].iter().copied().collect(), 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = stack.last() {
                    let p = p.0;
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (p, u) {
                                break;
                            }
                        }
                        blocks.push(block.into_iter().collect());
                    }
                }
            }
        }
    }
    blocks
}

fn block_is_planar(adj: &[BTreeSet<usize>], block: &[usize]) -> bool {
    let in_block: HashSet<usize> = block.iter().copied().collect();
    let ib = &in_block;
    let edges: Vec<(usize, usize)> = block
        .iter()
        .flat_map(|&u| {
            adj[u]
                .iter()
                .filter(move |&&w| w > u && ib.contains(&w))
                .map(move |&w| (u, w))
        })
        .collect();
    let v = block.len();
    if v <= 4 {
        return true;
    }
    if edges.len() > 3 * v - 6 {
        return false;
    }
    let nbrs = |u: usize| adj[u].iter().copied().filter(|w| in_block.contains(w));

    // initial cycle via DFS back edge
    let cycle = find_cycle(block[0], &nbrs);
    let mut embedded_v: HashSet<usize> = cycle.iter().copied().collect();
    let mut embedded_e: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        embedded_e.insert(ordered(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    loop {
        let fragments = fragments(block, &embedded_v, &embedded_e, &nbrs);
        if fragments.is_empty() {
            return true;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.unwrap();
        let path = fragment_path(&fragments[fi], &embedded_v, &nbrs);
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let walk = |from: usize, to: usize| -> Vec<usize> {
            let mut out = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % face.len();
                out.push(face[i]);
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut f1 = walk(ia, ib);
        f1.extend(inner.iter().rev());
        let mut f2 = walk(ib, ia);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            embedded_e.insert(ordered(w[0], w[1]));
        }
        embedded_v.extend(path.iter().copied());
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// A cycle through `root`: BFS from `root` to one of its neighbours without
/// using the direct edge. Every edge of a biconnected block lies on a cycle.
fn find_cycle<I: Iterator<Item = usize>>(root: usize, nbrs: &impl Fn(usize) -> I) -> Vec<usize> {
    let target = nbrs(root).next().expect("block vertex has neighbours");
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([root]);
    prev.insert(root, root);
    while let Some(u) = queue.pop_front() {
        for w in nbrs(u) {
            if u == root && w == target {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(w) {
                e.insert(u);
                if w == target {
                    let mut cyc = vec![target];
                    let mut x = target;
                    while x != root {
                        x = prev[&x];
                        cyc.push(x);
                    }
                    return cyc;
                }
                queue.push_back(w);
            }
        }
    }
    unreachable!("biconnected block with >= 5 vertices has a cycle")
}

struct Fragment {
    attachments: BTreeSet<usize>,
    /// internal vertices (empty for a chord)
    internal: HashSet<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments<I: Iterator<Item = usize>>(
    block: &[usize],
    embedded_v: &HashSet<usize>,
    embedded_e: &HashSet<(usize, usize)>,
    nbrs: &impl Fn(usize) -> I,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &u in block {
        if !embedded_v.contains(&u) {
            continue;
        }
        for w in nbrs(u) {
            if w > u && embedded_v.contains(&w) && !embedded_e.contains(&(u, w)) {
                out.push(Fragment {
                    attachments: [u, w].into_iter().collect(),
                    internal: HashSet::new(),
                    chord: Some((u, w)),
                });
            }
        }
    }
    let mut seen: HashSet<usize> = HashSet::new();
    for &s in block {
        if embedded_v.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut internal = HashSet::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen.insert(s);
        while let Some(u) = queue.pop_front() {
            internal.insert(u);
            for w in nbrs(u) {
                if embedded_v.contains(&w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment {
            attachments,
            internal,
            chord: None,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path<I: Iterator<Item = usize>>(
    frag: &Fragment,
    embedded_v: &HashSet<usize>,
    nbrs: &impl Fn(usize) -> I,
) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let start = *frag.attachments.iter().next().unwrap();
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for w in nbrs(start) {
        if frag.internal.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, start);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for w in nbrs(u) {
            if frag.internal.contains(&w) {
                if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(w) {
                    e.insert(u);
                    queue.push_back(w);
                }
            } else if embedded_v.contains(&w) && w != start {
                let mut path = vec![w, u];
                let mut x = u;
                while let Some(&p) = prev.get(&x) {
                    path.push(p);
                    if p == start {
                        break;
                    }
                    x = p;
                }
                path.reverse();
                return path;
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}

/// The fixture graph families used throughout the crate.
pub mod families {
    use super::AbstractGraph;

    /// One vertex carrying one loop.
    pub fn circle() -> AbstractGraph {
        AbstractGraph::new(1, &[(0, 0)])
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> AbstractGraph {
        AbstractGraph::new(2, &[(0, 1), (0, 1), (0, 1)])
    }

    /// Two loops joined by a bridge.
    pub fn handcuff() -> AbstractGraph {
        AbstractGraph::new(2, &[(0, 0), (0, 1), (1, 1)])
    }

    pub fn k4() -> AbstractGraph {
        AbstractGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    pub fn k5() -> AbstractGraph {
        complete(5)
    }

    pub fn complete(n: usize) -> AbstractGraph {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        AbstractGraph::new(n, &edges)
    }

    /// Two disjoint circles.
    pub fn two_unknots() -> AbstractGraph {
        AbstractGraph::new(2, &[(0, 0), (1, 1)])
    }

    /// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram.
    pub fn petersen() -> AbstractGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
        }
        for i in 0..5 {
            edges.push((i, i + 5));
        }
        for i in 0..5 {
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        AbstractGraph::new(10, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    /// Brute-force oracle: an edge subset is a cycle iff it is connected
    /// and every touched vertex has degree exactly two in it.
    fn brute_force_cycle_sets(g: &AbstractGraph) -> BTreeSet<BTreeSet<EdgeId>> {
        let m = g.edge_count();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << m) {
            let chosen: Vec<EdgeId> = (0..m).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect();
            let mut deg = vec![0; g.vertex_count()];
            let mut uf = UnionFind::new(g.vertex_count());
            for &e in &chosen {
                let (a, b) = g.endpoints(e);
                deg[a.0] += 1;
                deg[b.0] += 1;
                uf.union(a.0, b.0);
            }
            let touched: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] > 0).collect();
            if touched.iter().all(|&v| deg[v] == 2) {
                let r = uf.find(touched[0]);
                if touched.iter().all(|&v| uf.find(v) == r) {
                    out.insert(chosen.into_iter().collect());
                }
            }
        }
        out
    }

    fn cycle_sets(g: &AbstractGraph) -> BTreeSet<BTreeSet<EdgeId>> {
        g.cycles().iter().map(|c| c.edges().collect()).collect()
    }

    #[test]
    fn theta_has_three_cycles() {
        assert_eq!(theta().cycles().len(), 3);
        assert!(theta().disjoint_cycle_pairs().is_empty());
    }

    #[test]
    fn handcuff_cycles_are_the_loops() {
        let g = handcuff();
        let cycles = g.cycles();
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.len() == 1));
        assert_eq!(g.disjoint_cycle_pairs().len(), 1);
    }

    #[test]
    fn k4_cycles_match_brute_force() {
        let g = k4();
        let oracle = brute_force_cycle_sets(&g);
        assert_eq!(oracle.len(), 7);
        assert_eq!(cycle_sets(&g), oracle);
        assert_eq!(g.cycles().len(), 7);
        assert!(g.disjoint_cycle_pairs().is_empty());
    }

    #[test]
    fn cycle_canonical_form_prefers_least_rotation() {
        let g = theta();
        let c = CycleSubgraph::canonical(
            &g,
            vec![
                Step {
                    edge: EdgeId(2),
                    forward: true,
                },
                Step {
                    edge: EdgeId(0),
                    forward: false,
                },
            ],
        );
        assert_eq!(
            c.steps()[0],
            Step {
                edge: EdgeId(0),
                forward: true
            }
        );
        assert_eq!(
            c.steps()[1],
            Step {
                edge: EdgeId(2),
                forward: false
            }
        );
        assert_eq!(c.vertices(), &[VertexId(0), VertexId(1)]);
        let r = c.reversed();
        assert_eq!(r.steps()[0].edge, EdgeId(2));
        assert_eq!(CycleSubgraph::canonical(&g, r.steps().to_vec()), c);
    }

    #[test]
    fn planarity_of_small_complete_graphs() {
        assert!(k4().is_planar());
        assert!(!k5().is_planar());
        assert!(!petersen().is_planar());
        assert!(theta().is_planar());
        let k33 = AbstractGraph::new(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        );
        assert!(!k33.is_planar());
        let k33_minus = AbstractGraph::new(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)]);
        assert!(k33_minus.is_planar());
    }

    #[test]
    fn suppression_of_paths_and_circles() {
        let path = AbstractGraph::new(4, &[(0, 1), (1, 2), (2, 3)]);
        let r = path.suppress_degree_two();
        assert_eq!(r.graph.edge_count(), 1);
        assert!(r.edge_map.iter().all(|&e| e == EdgeId(0)));

        let square = AbstractGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let r = square.suppress_degree_two();
        assert_eq!(r.graph.vertex_count(), 1);
        assert_eq!(r.graph.edge_count(), 1);
        assert!(r.graph.is_loop(EdgeId(0)));

        let sub_theta = AbstractGraph::new(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let r = sub_theta.suppress_degree_two();
        assert_eq!(r.graph.vertex_count(), 2);
        assert_eq!(r.graph.edge_count(), 3);
        assert_eq!(r.graph.cycles().len(), 3);
        assert_eq!(r.edge_map[0], r.edge_map[1]);
    }

    #[test]
    fn suppression_keeps_loop_vertex() {
        let g = circle();
        let r = g.suppress_degree_two();
        assert_eq!(r.graph, g);
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let err = AbstractGraph::from_names(vec!["a".into()], vec![("x".into(), "a".into(), "b".into())]).unwrap_err();
        assert!(matches!(err, GraphError::UnknownVertex { .. }));
    }
}
