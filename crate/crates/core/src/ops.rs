//! Expansion, contraction of a Θ-class, and restriction to one side.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{induced_subgraph, isometry_violation, Graph, GraphError, Provenance, Side, VertexId};
use crate::partial_cube::{recognize, PcRefutation, ThetaPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("vertex `{0}` is in neither side")]
    UncoveredVertex(String),
    #[error("edge `{0}`-`{1}` lies in neither side")]
    UncoveredEdge(String, String),
    #[error("side {side:?} is not isometric: `{u}`, `{v}`")]
    NotIsometric { side: Side, u: String, v: String },
    #[error("the two sides do not intersect")]
    EmptyIntersection,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A base graph with two vertex sets whose induced subgraphs are the sides
/// of an expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionSpec {
    pub base: Graph,
    pub v1: Vec<VertexId>,
    pub v2: Vec<VertexId>,
}

impl ExpansionSpec {
    /// Sorts and deduplicates the sides and validates the result.
    pub fn new(base: Graph, mut v1: Vec<VertexId>, mut v2: Vec<VertexId>) -> Result<Self, ExpansionError> {
        v1.sort_unstable();
        v1.dedup();
        v2.sort_unstable();
        v2.dedup();
        let spec = ExpansionSpec { base, v1, v2 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_names<S: AsRef<str>>(base: Graph, v1: &[S], v2: &[S]) -> Result<Self, ExpansionError> {
        let a = base.lookup_all(v1)?;
        let b = base.lookup_all(v2)?;
        ExpansionSpec::new(base, a, b)
    }

    /// Membership of every base vertex in (side one, side two).
    pub fn membership(&self) -> Result<Vec<(bool, bool)>, ExpansionError> {
        let n = self.base.vertex_count();
        let mut m = vec![(false, false); n];
        for &v in &self.v1 {
            m.get_mut(v.index()).ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?.0 = true;
        }
        for &v in &self.v2 {
            m.get_mut(v.index()).ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?.1 = true;
        }
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), ExpansionError> {
        let g = &self.base;
        let m = self.membership()?;
        if let Some(v) = g.vertices().find(|v| m[v.index()] == (false, false)) {
            return Err(ExpansionError::UncoveredVertex(g.name(v).into()));
        }
        for &(u, v) in g.edges() {
            let (a, b) = (m[u.index()], m[v.index()]);
            if !(a.0 && b.0) && !(a.1 && b.1) {
                return Err(ExpansionError::UncoveredEdge(g.name(u).into(), g.name(v).into()));
            }
        }
        if !m.iter().any(|&(a, b)| a && b) {
            return Err(ExpansionError::EmptyIntersection);
        }
        for (side, set) in [(Side::One, &self.v1), (Side::Two, &self.v2)] {
            if let Some((u, v)) = isometry_violation(g, set)? {
                return Err(ExpansionError::NotIsometric { side, u: g.name(u).into(), v: g.name(v).into() });
            }
        }
        Ok(())
    }

    /// The common part `v1 ∩ v2`, sorted.
    pub fn intersection(&self) -> Vec<VertexId> {
        self.v1.iter().copied().filter(|v| self.v2.binary_search(v).is_ok()).collect()
    }

    pub fn side_graph(&self, side: Side) -> Graph {
        let set = match side {
            Side::One => &self.v1,
            Side::Two => &self.v2,
        };
        induced_subgraph(&self.base, set).expect("validated vertex set")
    }
}

/// Name of the copy of `name` on `side`: `name.1` or `name.2`.
pub fn copy_name(name: &str, side: Side) -> Arc<str> {
    format!("{name}.{}", side.number()).into()
}

/// Result of an expansion with the new Θ-class tagged.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: Graph,
    /// Positions in `graph.edges()` of the matching edges.
    pub matching: Vec<usize>,
}

impl Expansion {
    /// Base vertex and side a vertex of the expansion was copied from.
    pub fn origin(&self, spec: &ExpansionSpec, v: VertexId) -> (VertexId, Side) {
        match self.graph.provenance(v) {
            Provenance::Copy { of, side } => (spec.base.find(of).expect("copied from base"), *side),
            other => unreachable!("expansion vertex with provenance {other:?}"),
        }
    }
}

pub fn expand(spec: &ExpansionSpec) -> Result<Graph, ExpansionError> {
    expand_tagged(spec).map(|x| x.graph)
}

pub fn expand_tagged(spec: &ExpansionSpec) -> Result<Expansion, ExpansionError> {
    spec.validate()?;
    let g = &spec.base;
    let member = spec.membership()?;
    let mut slot = vec![[usize::MAX; 2]; g.vertex_count()];
    let mut vertices = Vec::with_capacity(spec.v1.len() + spec.v2.len());
    for (k, side) in [Side::One, Side::Two].into_iter().enumerate() {
        for v in g.vertices() {
            let inside = if k == 0 { member[v.index()].0 } else { member[v.index()].1 };
            if inside {
                slot[v.index()][k] = vertices.len();
                vertices.push((
                    copy_name(g.name(v), side),
                    Provenance::Copy { of: g.name_arc(v).clone(), side },
                ));
            }
        }
    }
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        for k in 0..2 {
            let (a, b) = (slot[u.index()][k], slot[v.index()][k]);
            if a != usize::MAX && b != usize::MAX {
                edges.push((a, b));
            }
        }
    }
    let mut pairs = Vec::new();
    for v in g.vertices() {
        let [a, b] = slot[v.index()];
        if a != usize::MAX && b != usize::MAX {
            pairs.push((vertices[a].0.clone(), vertices[b].0.clone()));
            edges.push((a, b));
        }
    }
    let graph = Graph::from_parts(vertices, edges)?;
    let mut matching: Vec<usize> = pairs
        .iter()
        .map(|(a, b)| {
            let (a, b) = (graph.find(a).expect("copy"), graph.find(b).expect("copy"));
            graph.edge_index(a, b).expect("matching edge")
        })
        .collect();
    matching.sort_unstable();
    Ok(Expansion { graph, matching })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpsError {
    #[error("not a partial cube: {0}")]
    NotPartialCube(PcRefutation),
    #[error("the given Θ-partition does not belong to this graph")]
    PartitionMismatch,
    #[error("no Θ-class with index {0}")]
    UnknownClass(usize),
}

fn checked_sides<'a>(h: &Graph, tp: &'a ThetaPartition, class_id: usize) -> Result<&'a [Side], OpsError> {
    let pc = recognize(h).map_err(OpsError::NotPartialCube)?;
    if &pc.partition != tp {
        return Err(OpsError::PartitionMismatch);
    }
    tp.sides(class_id).ok_or(OpsError::UnknownClass(class_id))
}

/// Contraction of one Θ-class of a partial cube.
#[derive(Clone, Debug)]
pub struct ContractionResult {
    pub quotient: Graph,
    pub class_id: usize,
    /// Per vertex of the contracted graph.
    pub side_of: Vec<Side>,
    /// Per vertex of the contracted graph: its vertex in `quotient`.
    pub image_of: Vec<VertexId>,
    /// Class edges as (side one, side two) endpoints, sorted.
    pub matching: Vec<(VertexId, VertexId)>,
}

impl ContractionResult {
    /// Images of side one and side two as an expansion of the quotient.
    pub fn spec(&self) -> ExpansionSpec {
        let mut v1 = Vec::new();
        let mut v2 = Vec::new();
        for (x, &side) in self.side_of.iter().enumerate() {
            match side {
                Side::One => v1.push(self.image_of[x]),
                Side::Two => v2.push(self.image_of[x]),
            }
        }
        v1.sort_unstable();
        v2.sort_unstable();
        v1.dedup();
        v2.dedup();
        ExpansionSpec { base: self.quotient.clone(), v1, v2 }
    }

    /// Vertex of `h` identified with vertex `(q, side)` of the re-expansion.
    pub fn preimages(&self) -> HashMap<(VertexId, Side), VertexId> {
        self.side_of
            .iter()
            .enumerate()
            .map(|(x, &side)| ((self.image_of[x], side), VertexId::from_index(x)))
            .collect()
    }

    /// Whether `x` (an expansion of the quotient) is `h` once every copy is
    /// identified, via its provenance, with the vertex it was contracted from.
    pub fn identifies(&self, h: &Graph, x: &Expansion) -> bool {
        if x.graph.vertex_count() != h.vertex_count() || x.graph.edge_count() != h.edge_count() {
            return false;
        }
        let pre = self.preimages();
        let mut map = Vec::with_capacity(x.graph.vertex_count());
        for w in x.graph.vertices() {
            let Provenance::Copy { of, side } = x.graph.provenance(w) else { return false };
            let Some(q) = self.quotient.find(of) else { return false };
            let Some(&orig) = pre.get(&(q, *side)) else { return false };
            map.push(orig);
        }
        let mut seen = vec![false; h.vertex_count()];
        if map.iter().any(|v| std::mem::replace(&mut seen[v.index()], true)) {
            return false;
        }
        x.graph.edges().iter().all(|&(a, b)| h.has_edge(map[a.index()], map[b.index()]))
    }
}

pub fn contract_class(h: &Graph, tp: &ThetaPartition, class_id: usize) -> Result<ContractionResult, OpsError> {
    let sides = checked_sides(h, tp, class_id)?;
    Ok(contract_unchecked(h, tp, class_id, sides))
}

pub(crate) fn contract_unchecked(h: &Graph, tp: &ThetaPartition, class_id: usize, sides: &[Side]) -> ContractionResult {
    let n = h.vertex_count();
    let mut partner = vec![None; n];
    let mut matching = Vec::new();
    for &e in tp.class(class_id).expect("class exists") {
        let (a, b) = h.edges()[e];
        let (one, two) = if sides[a.index()] == Side::One { (a, b) } else { (b, a) };
        partner[two.index()] = Some(one);
        matching.push((one, two));
    }
    matching.sort_unstable();
    let merged: Vec<bool> = {
        let mut m = vec![false; n];
        for &(one, _) in &matching {
            m[one.index()] = true;
        }
        m
    };
    let mut slot = vec![usize::MAX; n];
    let mut vertices = Vec::new();
    for v in h.vertices() {
        if partner[v.index()].is_some() {
            continue;
        }
        slot[v.index()] = vertices.len();
        let prov = if merged[v.index()] {
            Provenance::Merged { rep: h.name_arc(v).clone(), class: class_id }
        } else {
            h.provenance(v).clone()
        };
        vertices.push((h.name_arc(v).clone(), prov));
    }
    for v in h.vertices() {
        if let Some(one) = partner[v.index()] {
            slot[v.index()] = slot[one.index()];
        }
    }
    let edges = h
        .edges()
        .iter()
        .filter(|&&(a, b)| slot[a.index()] != slot[b.index()])
        .map(|&(a, b)| (slot[a.index()], slot[b.index()]))
        .collect();
    let slot_names: Vec<Arc<str>> = vertices.iter().map(|(name, _)| name.clone()).collect();
    let quotient = Graph::from_parts(vertices, edges).expect("names of a valid graph");
    let image_of = h
        .vertices()
        .map(|v| quotient.find(&slot_names[slot[v.index()]]).expect("image vertex"))
        .collect();
    ContractionResult { quotient, class_id, side_of: sides.to_vec(), image_of, matching }
}

pub fn restrict(h: &Graph, tp: &ThetaPartition, class_id: usize, side: Side) -> Result<Graph, OpsError> {
    let sides = checked_sides(h, tp, class_id)?;
    Ok(restrict_unchecked(h, sides, side))
}

fn restrict_unchecked(h: &Graph, sides: &[Side], side: Side) -> Graph {
    let keep: Vec<VertexId> = h.vertices().filter(|v| sides[v.index()] == side).collect();
    induced_subgraph(h, &keep).expect("vertices of h")
}

/// Every contraction and both restrictions of every Θ-class, class by class.
pub fn one_step_minors(h: &Graph) -> Result<Vec<Graph>, OpsError> {
    let pc = recognize(h).map_err(OpsError::NotPartialCube)?;
    let tp = &pc.partition;
    let mut out = Vec::with_capacity(3 * tp.len());
    for class in 0..tp.len() {
        let sides = tp.sides(class).expect("partial cube classes are cuts");
        out.push(contract_unchecked(h, tp, class, sides).quotient);
        out.push(restrict_unchecked(h, sides, Side::One));
        out.push(restrict_unchecked(h, sides, Side::Two));
    }
    Ok(out)
}
