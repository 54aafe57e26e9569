//! Simple undirected graphs with named, provenance-carrying vertices.
//!
//! Vertices are kept sorted by name, so `VertexId` order is the lexicographic
//! name order. A `VertexId` is only meaningful for the graph that issued it;
//! the vertex *name* is the identity that survives subgraphs, expansions and
//! contractions.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a vertex")]
    UnknownEndpoint(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An undirected edge, always stored with `.0 < .1`.
pub type Edge = (VertexId, VertexId);

#[inline]
pub fn edge(u: VertexId, v: VertexId) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// The two sides of a cut (the two copies in an expansion).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn number(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Side> {
        match n {
            1 => Some(Side::One),
            2 => Some(Side::Two),
            _ => None,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

/// Where a vertex came from. Parent vertices are referenced by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Original,
    Product(Arc<str>, Arc<str>),
    Copy { of: Arc<str>, side: Side },
    Merged { rep: Arc<str>, class: usize },
}

#[derive(Clone, Debug)]
pub struct Graph {
    names: Vec<Arc<str>>,
    provenance: Vec<Provenance>,
    adj: Vec<Vec<VertexId>>,
    edges: Vec<Edge>,
    index: HashMap<Arc<str>, VertexId>,
}

impl Graph {
    /// Validated constructor from vertex names and name pairs.
    pub fn new<S: AsRef<str>>(vertex_names: &[S], edge_pairs: &[(S, S)]) -> Result<Graph, GraphError> {
        let vertices = vertex_names
            .iter()
            .map(|n| (Arc::<str>::from(n.as_ref()), Provenance::Original))
            .collect();
        let mut lookup: HashMap<&str, usize> = HashMap::new();
        for (i, n) in vertex_names.iter().enumerate() {
            if lookup.insert(n.as_ref(), i).is_some() {
                return Err(GraphError::DuplicateVertex(n.as_ref().to_string()));
            }
        }
        let mut edges = Vec::with_capacity(edge_pairs.len());
        for (a, b) in edge_pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *lookup.get(a).ok_or_else(|| GraphError::UnknownEndpoint(a.to_string()))?;
            let ib = *lookup.get(b).ok_or_else(|| GraphError::UnknownEndpoint(b.to_string()))?;
            if ia == ib {
                return Err(GraphError::LoopEdge(a.to_string()));
            }
            edges.push((ia, ib));
        }
        Graph::from_parts(vertices, edges)
    }

    /// Builds a graph from raw parts. Edge endpoints index into `vertices`;
    /// parallel edges are coalesced, loops are rejected.
    pub fn from_parts(
        vertices: Vec<(Arc<str>, Provenance)>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let n = vertices.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| vertices[a].0.cmp(&vertices[b].0));
        for w in order.windows(2) {
            if vertices[w[0]].0 == vertices[w[1]].0 {
                return Err(GraphError::DuplicateVertex(vertices[w[0]].0.to_string()));
            }
        }
        let mut position = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new as u32;
        }
        let mut names = Vec::with_capacity(n);
        let mut provenance = Vec::with_capacity(n);
        let mut slots: Vec<Option<(Arc<str>, Provenance)>> = vertices.into_iter().map(Some).collect();
        for &old in &order {
            let (name, prov) = slots[old].take().expect("each vertex moved once");
            names.push(name);
            provenance.push(prov);
        }
        let mut es = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::UnknownEndpoint(format!("index {a}")));
            }
            if b >= n {
                return Err(GraphError::UnknownEndpoint(format!("index {b}")));
            }
            if a == b {
                return Err(GraphError::LoopEdge(names[position[a] as usize].to_string()));
            }
            es.push(edge(VertexId(position[a]), VertexId(position[b])));
        }
        es.sort_unstable();
        es.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &es {
            adj[u.index()].push(v);
            adj[v.index()].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let index = names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), VertexId(i as u32)))
            .collect();
        Ok(Graph { names, provenance, adj, edges: es, index })
    }

    pub fn single_vertex(name: &str) -> Graph {
        Graph::from_parts(vec![(name.into(), Provenance::Original)], vec![]).expect("K1 is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + Clone {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.index()].binary_search(&v).is_ok()
    }

    /// Position of `e` in `edges()`.
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn name_arc(&self, v: VertexId) -> &Arc<str> {
        &self.names[v.index()]
    }

    pub fn provenance(&self, v: VertexId) -> &Provenance {
        &self.provenance[v.index()]
    }

    pub fn find(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<VertexId, GraphError> {
        self.find(name).ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn lookup_all<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<VertexId>, GraphError> {
        names.iter().map(|n| self.lookup(n.as_ref())).collect()
    }

    /// Equality of vertex names and of edges between names. Provenance is
    /// not compared.
    pub fn labeled_eq(&self, other: &Graph) -> bool {
        self.names == other.names && self.edges == other.edges
    }

    /// Edges as name pairs, in canonical order.
    pub fn edge_names(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(move |&(u, v)| (self.name(u), self.name(v)))
    }

    /// Same graph with every vertex renamed through `rename`; provenance is
    /// kept. Fails if the new names are not unique.
    pub fn renamed(&self, mut rename: impl FnMut(VertexId) -> Arc<str>) -> Result<Graph, GraphError> {
        let vertices = self.vertices().map(|v| (rename(v), self.provenance(v).clone())).collect();
        let edges = self.edges.iter().map(|&(u, v)| (u.index(), v.index())).collect();
        Graph::from_parts(vertices, edges)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labeled_eq(other)
    }
}

impl Eq for Graph {}

/// Hop distances between all vertex pairs; `None` means unreachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<u32> {
        let d = self.dist[u.index() * self.n + v.index()];
        (d != UNREACHABLE).then_some(d)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// BFS from `src`; unreachable vertices get `u32::MAX`.
pub fn bfs_distances(g: &Graph, src: VertexId) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[src.index()] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u.index()];
        for &w in g.neighbors(u) {
            if dist[w.index()] == UNREACHABLE {
                dist[w.index()] = du + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut dist = Vec::with_capacity(n * n);
    for v in g.vertices() {
        dist.extend(bfs_distances(g, v));
    }
    DistanceMatrix { n, dist }
}

/// Induced subgraph on `s`. Names and provenance are preserved.
pub fn induced_subgraph(g: &Graph, s: &[VertexId]) -> Result<Graph, GraphError> {
    let mut keep = vec![usize::MAX; g.vertex_count()];
    let mut vertices = Vec::with_capacity(s.len());
    for &v in s {
        if v.index() >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
        if keep[v.index()] != usize::MAX {
            continue;
        }
        keep[v.index()] = vertices.len();
        vertices.push((g.name_arc(v).clone(), g.provenance(v).clone()));
    }
    let edges = g
        .edges()
        .iter()
        .filter_map(|&(u, v)| {
            let (a, b) = (keep[u.index()], keep[v.index()]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b))
        })
        .collect();
    Graph::from_parts(vertices, edges)
}

/// Returns the first pair `(u, v)` of `s` whose distance inside the induced
/// subgraph differs from its distance in `g`, or `None` if `s` is isometric.
pub fn isometry_violation(g: &Graph, s: &[VertexId]) -> Result<Option<(VertexId, VertexId)>, GraphError> {
    let sub = induced_subgraph(g, s)?;
    let host = |v: VertexId| g.find(sub.name(v)).expect("subgraph vertex exists in host");
    for a in sub.vertices() {
        let inner = bfs_distances(&sub, a);
        let outer = bfs_distances(g, host(a));
        for b in sub.vertices() {
            if inner[b.index()] != outer[host(b).index()] {
                return Ok(Some((host(a), host(b))));
            }
        }
    }
    Ok(None)
}

pub fn is_isometric_subgraph(g: &Graph, s: &[VertexId]) -> Result<bool, GraphError> {
    Ok(isometry_violation(g, s)?.is_none())
}

fn product_name(a: &str, b: &str) -> Arc<str> {
    format!("({a},{b})").into()
}

/// Cartesian product `g □ h`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.vertex_count();
    let id = |u: VertexId, x: VertexId| u.index() * nh + x.index();
    let mut vertices = Vec::with_capacity(g.vertex_count() * nh);
    for u in g.vertices() {
        for x in h.vertices() {
            vertices.push((
                product_name(g.name(u), h.name(x)),
                Provenance::Product(g.name_arc(u).clone(), h.name_arc(x).clone()),
            ));
        }
    }
    let mut edges = Vec::new();
    for u in g.vertices() {
        for &(x, y) in h.edges() {
            edges.push((id(u, x), id(u, y)));
        }
    }
    for &(u, v) in g.edges() {
        for x in h.vertices() {
            edges.push((id(u, x), id(v, x)));
        }
    }
    Graph::from_parts(vertices, edges).expect("product vertex names are distinct")
}

/// Connected components, each sorted, listed by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<VertexId>> {
    components_without(g, |_| false)
}

/// Components of `g` after deleting every edge for which `removed` holds.
/// The predicate receives the position of the edge in `g.edges()`.
pub fn components_without(g: &Graph, removed: impl Fn(usize) -> bool) -> Vec<Vec<VertexId>> {
    let labels = component_labels_without(g, removed);
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); count];
    for v in g.vertices() {
        out[labels[v.index()]].push(v);
    }
    out
}

/// Component number per vertex (numbered by smallest member).
pub fn component_labels_without(g: &Graph, removed: impl Fn(usize) -> bool) -> Vec<usize> {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for s in g.vertices() {
        if label[s.index()] != usize::MAX {
            continue;
        }
        label[s.index()] = next;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if label[w.index()] == usize::MAX && !removed(g.edge_index(u, w).expect("adjacent")) {
                    label[w.index()] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn is_connected(g: &Graph) -> bool {
    g.vertex_count() > 0 && components(g).len() == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// `true` marks the color class not containing the first vertex of each component.
    Coloring(Vec<bool>),
    /// Vertices of a simple odd cycle, in cyclic order.
    OddCycle(Vec<VertexId>),
}

pub fn is_bipartite(g: &Graph) -> Bipartition {
    let n = g.vertex_count();
    let mut level = vec![u32::MAX; n];
    let mut parent = vec![VertexId(u32::MAX); n];
    for s in g.vertices() {
        if level[s.index()] != u32::MAX {
            continue;
        }
        level[s.index()] = 0;
        parent[s.index()] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if level[w.index()] == u32::MAX {
                    level[w.index()] = level[u.index()] + 1;
                    parent[w.index()] = u;
                    queue.push_back(w);
                } else if level[w.index()] == level[u.index()] {
                    return Bipartition::OddCycle(odd_cycle_through(&parent, u, w));
                }
            }
        }
    }
    Bipartition::Coloring(level.iter().map(|l| l % 2 == 1).collect())
}

// Both endpoints sit on the same BFS level, so their tree paths meet at the
// same depth and the cycle through the common ancestor is odd and simple.
fn odd_cycle_through(parent: &[VertexId], u: VertexId, w: VertexId) -> Vec<VertexId> {
    let mut left = vec![u];
    let mut right = vec![w];
    let (mut a, mut b) = (u, w);
    while a != b {
        a = parent[a.index()];
        b = parent[b.index()];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    // `left` now runs u .. lca .. w; the closing edge is w-u.
    left
}

/// Checks that `cycle` is a simple cycle of `g` of odd length.
pub fn is_odd_cycle(g: &Graph, cycle: &[VertexId]) -> bool {
    let k = cycle.len();
    if k < 3 || k % 2 == 0 {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in cycle {
        if v.index() >= g.vertex_count() || std::mem::replace(&mut seen[v.index()], true) {
            return false;
        }
    }
    (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]))
}
