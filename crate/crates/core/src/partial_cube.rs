//! Djoković–Winkler relation, Θ*-classes and partial-cube recognition.

use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::graph::{
    all_pairs_distances, component_labels_without, components, is_bipartite, is_odd_cycle, Bipartition,
    DistanceMatrix, Edge, Graph, Side, VertexId,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("{0:?} is not an edge of the graph")]
    UnknownEdge(Edge),
}

/// `e = xy` and `f = uv` are Θ-related iff `d(x,u) + d(y,v) != d(x,v) + d(y,u)`.
pub fn theta_related(g: &Graph, e: Edge, f: Edge, d: &DistanceMatrix) -> Result<bool, ThetaError> {
    for &(a, b) in [&e, &f] {
        if a.index() >= g.vertex_count() || b.index() >= g.vertex_count() || !g.has_edge(a, b) {
            return Err(ThetaError::UnknownEdge(e));
        }
    }
    Ok(theta_unchecked(e, f, d))
}

#[inline]
fn theta_unchecked((x, y): Edge, (u, v): Edge, d: &DistanceMatrix) -> bool {
    match (d.get(x, u), d.get(y, v), d.get(x, v), d.get(y, u)) {
        (Some(xu), Some(yv), Some(xv), Some(yu)) => xu + yv != xv + yu,
        _ => false,
    }
}

/// Partition of the edges into Θ*-classes.
///
/// Classes are listed in canonical order: by their smallest edge, where edges
/// are compared lexicographically by endpoint names. Edges are referred to by
/// their position in `Graph::edges()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    sides: Vec<Option<Vec<Side>>>,
}

impl ThetaPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, id: usize) -> Option<&[usize]> {
        self.classes.get(id).map(Vec::as_slice)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, edge_index: usize) -> usize {
        self.class_of[edge_index]
    }

    /// Side of every vertex for class `id`, present when deleting the class
    /// leaves exactly two components. Side one holds the smallest vertex.
    pub fn sides(&self, id: usize) -> Option<&[Side]> {
        self.sides.get(id).and_then(|s| s.as_deref())
    }

    pub fn side(&self, id: usize, v: VertexId) -> Option<Side> {
        self.sides(id).map(|s| s[v.index()])
    }

    /// True when every class splits the graph into two sides and every class
    /// edge joins the two sides.
    pub fn is_cut_partition(&self, g: &Graph) -> bool {
        self.classes.iter().enumerate().all(|(i, class)| match self.sides(i) {
            Some(s) => class.iter().all(|&e| {
                let (u, v) = g.edges()[e];
                s[u.index()] != s[v.index()]
            }),
            None => false,
        })
    }
}

pub fn theta_classes(g: &Graph) -> Result<ThetaPartition, ThetaError> {
    if components(g).len() != 1 {
        return Err(ThetaError::NotConnected);
    }
    let d = all_pairs_distances(g);
    Ok(theta_classes_with(g, &d))
}

pub(crate) fn theta_classes_with(g: &Graph, d: &DistanceMatrix) -> ThetaPartition {
    let edges = g.edges();
    let m = edges.len();
    let mut uf = UnionFind::<usize>::new(m);
    for i in 0..m {
        for j in i + 1..m {
            if theta_unchecked(edges[i], edges[j], d) {
                uf.union(i, j);
            }
        }
    }
    // Edges are canonically sorted, so numbering roots on first sight gives
    // classes ordered by their smallest edge.
    let mut root_class = vec![usize::MAX; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; m];
    for e in 0..m {
        let r = uf.find(e);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of[e] = root_class[r];
        classes[root_class[r]].push(e);
    }
    let sides = classes
        .iter()
        .map(|class| {
            let labels = component_labels_without(g, |e| class_of[e] == class_of[class[0]]);
            let count = labels.iter().max().map_or(0, |&m| m + 1);
            (count == 2).then(|| {
                labels.iter().map(|&l| if l == labels[0] { Side::One } else { Side::Two }).collect()
            })
        })
        .collect();
    ThetaPartition { classes, class_of, sides }
}

/// Bit vectors with graph distance equal to Hamming distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeLabeling {
    pub dim: usize,
    pub labels: Vec<Vec<bool>>,
}

impl HypercubeLabeling {
    pub fn hamming(&self, u: VertexId, v: VertexId) -> u32 {
        let (a, b) = (&self.labels[u.index()], &self.labels[v.index()]);
        a.iter().zip(b).filter(|(x, y)| x != y).count() as u32
    }

    pub fn label_string(&self, v: VertexId) -> String {
        self.labels[v.index()].iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Why a graph is not a partial cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PcRefutation {
    /// Two vertices in different components (none for the empty graph).
    NotConnected(Option<(VertexId, VertexId)>),
    NotBipartite(Vec<VertexId>),
    /// The labeling built from the Θ*-classes fails isometry at `(u, v)`.
    LabelingFailure {
        labeling: HypercubeLabeling,
        u: VertexId,
        v: VertexId,
    },
}

impl fmt::Display for PcRefutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcRefutation::NotConnected(_) => write!(f, "not connected"),
            PcRefutation::NotBipartite(c) => write!(f, "not bipartite (odd cycle of length {})", c.len()),
            PcRefutation::LabelingFailure { labeling, u, v } => write!(
                f,
                "Θ*-labeling fails isometry: {u} and {v} at Hamming distance {}",
                labeling.hamming(*u, *v)
            ),
        }
    }
}

/// Checks a refutation against `g` without trusting how it was produced.
pub fn verify_refutation(g: &Graph, r: &PcRefutation) -> bool {
    let n = g.vertex_count();
    match r {
        PcRefutation::NotConnected(None) => n == 0,
        PcRefutation::NotConnected(Some((u, v))) => {
            u.index() < n && v.index() < n && crate::graph::bfs_distances(g, *u)[v.index()] == u32::MAX
        }
        PcRefutation::NotBipartite(cycle) => is_odd_cycle(g, cycle),
        PcRefutation::LabelingFailure { labeling, u, v } => {
            if labeling.labels.len() != n || u.index() >= n || v.index() >= n || u == v {
                return false;
            }
            let d = crate::graph::bfs_distances(g, *u)[v.index()];
            d == u32::MAX || d != labeling.hamming(*u, *v)
        }
    }
}

/// A recognized partial cube: its Θ*-classes and the induced labeling.
#[derive(Clone, Debug)]
pub struct PartialCube {
    pub partition: ThetaPartition,
    pub labeling: HypercubeLabeling,
}

pub fn recognize_partial_cube(g: &Graph) -> Result<HypercubeLabeling, PcRefutation> {
    recognize(g).map(|pc| pc.labeling)
}

/// Recognition keeping the Θ*-partition. Bit `i` of a label is set when the
/// vertex lies on side two of class `i`.
pub fn recognize(g: &Graph) -> Result<PartialCube, PcRefutation> {
    let comps = components(g);
    match comps.len() {
        0 => return Err(PcRefutation::NotConnected(None)),
        1 => {}
        _ => return Err(PcRefutation::NotConnected(Some((comps[0][0], comps[1][0])))),
    }
    if let Bipartition::OddCycle(c) = is_bipartite(g) {
        return Err(PcRefutation::NotBipartite(c));
    }
    let d = all_pairs_distances(g);
    let partition = theta_classes_with(g, &d);
    let labeling = labeling_from(g, &partition);
    if let Some((u, v)) = labeling_violation(g, &labeling, &d) {
        return Err(PcRefutation::LabelingFailure { labeling, u, v });
    }
    Ok(PartialCube { partition, labeling })
}

// Classes that do not split into exactly two parts put the component of the
// smallest vertex on side one and everything else on side two; such a
// labeling can never be isometric.
fn labeling_from(g: &Graph, tp: &ThetaPartition) -> HypercubeLabeling {
    let n = g.vertex_count();
    let mut labels = vec![Vec::with_capacity(tp.len()); n];
    for (i, class) in tp.classes().iter().enumerate() {
        match tp.sides(i) {
            Some(sides) => {
                for v in 0..n {
                    labels[v].push(sides[v] == Side::Two);
                }
            }
            None => {
                let comp = component_labels_without(g, |e| tp.class_of(e) == tp.class_of(class[0]));
                for v in 0..n {
                    labels[v].push(comp[v] != comp[0]);
                }
            }
        }
    }
    HypercubeLabeling { dim: tp.len(), labels }
}

fn labeling_violation(g: &Graph, lab: &HypercubeLabeling, d: &DistanceMatrix) -> Option<(VertexId, VertexId)> {
    for u in g.vertices() {
        for v in g.vertices().skip(u.index() + 1) {
            if d.get(u, v) != Some(lab.hamming(u, v)) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn verify_labeling(g: &Graph, lab: &HypercubeLabeling) -> bool {
    if lab.labels.len() != g.vertex_count() || lab.labels.iter().any(|l| l.len() != lab.dim) {
        return false;
    }
    // distance 0 iff identical labels, so distinctness is covered by isometry
    labeling_violation(g, lab, &all_pairs_distances(g)).is_none()
}
