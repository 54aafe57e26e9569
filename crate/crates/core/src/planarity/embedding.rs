use std::fmt;

use thiserror::Error;

use crate::graph::{component_labels_without, Graph, VertexId};

/// A directed traversal of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Dart {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Dart { tail, head }
    }

    pub fn reversed(self) -> Self {
        Dart { tail: self.head, head: self.tail }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// Faces are named by their least dart.
pub type FaceId = Dart;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("rotation at {0} is not a permutation of its neighbors")]
    InvalidRotation(VertexId),
    #[error("rotation system has the wrong number of vertices")]
    WrongVertexCount,
    #[error("face count violates Euler's formula for a plane embedding")]
    NotGenusZero,
    #[error("{0} is not a dart of this embedding")]
    UnknownFace(Dart),
}

/// A face as the cyclic sequence of darts traversed, starting at its least dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn id(&self) -> FaceId {
        self.darts[0]
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices in walk order (tails of the darts); may repeat at cut vertices.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.darts.iter().map(|d| d.tail)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.darts.iter().any(|d| d.tail == v)
    }
}

/// Rotation system plus a designated outer face.
///
/// Walking a face: after arriving at `v` along `u -> v`, leave along
/// `v -> w` where `w` follows `u` in the rotation at `v`. `outer` is `None`
/// only for edgeless graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneEmbedding {
    pub rotation: Vec<Vec<VertexId>>,
    pub outer: Option<FaceId>,
}

impl PlaneEmbedding {
    /// Embedding with the face of the least dart as outer face.
    pub fn from_rotation(rotation: Vec<Vec<VertexId>>) -> Self {
        let mut emb = PlaneEmbedding { rotation, outer: None };
        emb.outer = emb.least_dart().map(|d| emb.face_id_of(d));
        emb
    }

    fn least_dart(&self) -> Option<Dart> {
        self.rotation
            .iter()
            .enumerate()
            .filter_map(|(v, nbrs)| nbrs.iter().min().map(|&w| Dart::new(VertexId::from_index(v), w)))
            .next()
    }

    pub fn has_dart(&self, d: Dart) -> bool {
        self.rotation.get(d.tail.index()).is_some_and(|r| r.contains(&d.head))
    }

    /// Rotation successor of `u` around `v`.
    pub fn successor(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rotation[v.index()];
        let i = r.iter().position(|&x| x == u).expect("u is a neighbor of v");
        r[(i + 1) % r.len()]
    }

    pub fn predecessor(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rotation[v.index()];
        let i = r.iter().position(|&x| x == u).expect("u is a neighbor of v");
        r[(i + r.len() - 1) % r.len()]
    }

    /// Next dart along the face of `d`.
    pub fn next_dart(&self, d: Dart) -> Dart {
        Dart::new(d.head, self.successor(d.head, d.tail))
    }

    /// The face walk containing `d`, starting at its least dart. Assumes a
    /// valid rotation (each face walk closes).
    pub fn face_of(&self, d: Dart) -> FaceWalk {
        let mut walk = vec![d];
        let mut cur = self.next_dart(d);
        while cur != d {
            walk.push(cur);
            cur = self.next_dart(cur);
        }
        let start = walk.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i).unwrap_or(0);
        walk.rotate_left(start);
        FaceWalk { darts: walk }
    }

    pub fn face_id_of(&self, d: Dart) -> FaceId {
        self.face_of(d).id()
    }

    /// All face walks, ordered by id.
    pub fn face_walks(&self) -> Vec<FaceWalk> {
        let n = self.rotation.len();
        let mut seen: Vec<Vec<bool>> = self.rotation.iter().map(|r| vec![false; r.len()]).collect();
        let mut out = Vec::new();
        for v in 0..n {
            for i in 0..self.rotation[v].len() {
                if seen[v][i] {
                    continue;
                }
                let face = self.face_of(Dart::new(VertexId::from_index(v), self.rotation[v][i]));
                for d in &face.darts {
                    let j = self.rotation[d.tail.index()].iter().position(|&x| x == d.head).expect("dart");
                    seen[d.tail.index()][j] = true;
                }
                out.push(face);
            }
        }
        out.sort_by_key(FaceWalk::id);
        out
    }

    pub fn outer_face(&self) -> Option<FaceWalk> {
        self.outer.map(|d| self.face_of(d))
    }

    pub fn check_rotation(&self, g: &Graph) -> Result<(), EmbeddingError> {
        if self.rotation.len() != g.vertex_count() {
            return Err(EmbeddingError::WrongVertexCount);
        }
        for v in g.vertices() {
            let mut r = self.rotation[v.index()].clone();
            r.sort_unstable();
            if r != g.neighbors(v) {
                return Err(EmbeddingError::InvalidRotation(v));
            }
        }
        Ok(())
    }
}

/// Face walks of a plane embedding of `g`, after checking the rotation and
/// Euler's formula for every component.
pub fn faces(g: &Graph, emb: &PlaneEmbedding) -> Result<Vec<FaceWalk>, EmbeddingError> {
    emb.check_rotation(g)?;
    let walks = emb.face_walks();
    if !euler_holds(g, &walks) {
        return Err(EmbeddingError::NotGenusZero);
    }
    Ok(walks)
}

// V - E + F = 2 per component; an isolated vertex has one (dartless) face.
fn euler_holds(g: &Graph, walks: &[FaceWalk]) -> bool {
    let comp = component_labels_without(g, |_| false);
    let k = comp.iter().max().map_or(0, |&c| c + 1);
    let mut vertices = vec![0i64; k];
    let mut edges = vec![0i64; k];
    let mut face_count = vec![0i64; k];
    for v in g.vertices() {
        vertices[comp[v.index()]] += 1;
    }
    for &(u, _) in g.edges() {
        edges[comp[u.index()]] += 1;
    }
    for w in walks {
        face_count[comp[w.id().tail.index()]] += 1;
    }
    (0..k).all(|c| {
        let f = if edges[c] == 0 { 1 } else { face_count[c] };
        vertices[c] - edges[c] + f == 2
    })
}

/// Rotation is a permutation of each neighborhood, Euler holds per
/// component, and the outer face is a face of the embedding.
pub fn verify_embedding(g: &Graph, emb: &PlaneEmbedding) -> bool {
    if faces(g, emb).is_err() {
        return false;
    }
    match emb.outer {
        Some(d) => emb.has_dart(d),
        None => g.edge_count() == 0,
    }
}

/// Same rotation with a different outer face.
pub fn reroot_outer_face(emb: &PlaneEmbedding, face: FaceId) -> Result<PlaneEmbedding, EmbeddingError> {
    if !emb.has_dart(face) {
        return Err(EmbeddingError::UnknownFace(face));
    }
    Ok(PlaneEmbedding { rotation: emb.rotation.clone(), outer: Some(emb.face_id_of(face)) })
}

/// Rotation system induced on a subgraph: `keep` selects vertices, and the
/// rotation at each kept vertex drops neighbors outside the subgraph and
/// edges rejected by `keep_edge`. Vertex ids are renumbered by `relabel`.
pub fn induced_rotation(
    emb: &PlaneEmbedding,
    keep: impl Fn(VertexId) -> bool,
    keep_edge: impl Fn(VertexId, VertexId) -> bool,
    relabel: impl Fn(VertexId) -> VertexId,
    new_len: usize,
) -> Vec<Vec<VertexId>> {
    let mut rotation = vec![Vec::new(); new_len];
    for (v, r) in emb.rotation.iter().enumerate() {
        let v = VertexId::from_index(v);
        if !keep(v) {
            continue;
        }
        rotation[relabel(v).index()] =
            r.iter().copied().filter(|&w| keep(w) && keep_edge(v, w)).map(&relabel).collect();
    }
    rotation
}
