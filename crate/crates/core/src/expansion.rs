//! Non-crossing 2-face expansions: certificates extracted from plane
//! embeddings, their verification, and the search for 2-face expansions
//! that are not planar.

use thiserror::Error;

use crate::generators::{self, random_planar_partial_cube};
use crate::graph::{is_isometric_subgraph, Graph, Side, VertexId};
use crate::ops::{contract_unchecked, ContractionResult, expand, ExpansionError, ExpansionSpec};
use crate::partial_cube::{recognize, PcRefutation, ThetaPartition};
use crate::planarity::{
    embed_graph, face_containing, is_planar, test_planarity, verify_embedding, verify_face_certificate,
    verify_kuratowski, Dart, FaceCertificate, FaceId, KuratowskiWitness, Planarity, PlaneEmbedding,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionPlanarityError {
    #[error("face {0} contains {1} darts of the cut")]
    FaceWithOddCutEdges(FaceId, usize),
    #[error("no Θ-class with index {0}")]
    UnknownClass(usize),
    #[error("embedding does not belong to the graph")]
    InvalidEmbedding,
    #[error("graph is not planar")]
    NotPlanar(Box<KuratowskiWitness>),
    #[error("not a partial cube: {0}")]
    NotPartialCube(PcRefutation),
    #[error("Θ-partition does not belong to this graph")]
    PartitionMismatch,
    #[error(transparent)]
    Spec(#[from] ExpansionError),
}

/// The edges of a Θ-class in the cyclic order in which the dual cut cycle
/// crosses them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCycleOrder {
    pub class_id: usize,
    /// Edge indices of the host graph.
    pub edges: Vec<usize>,
    /// `faces[i]` is the face shared by `edges[i]` and `edges[i + 1]`.
    pub faces: Vec<FaceId>,
}

/// Walks the dual cycle of a Θ-class: from the side-one-to-side-two dart of
/// an edge, across its face to the other cut dart, then into the face of the
/// reverse of that dart.
pub fn cut_cycle_order(
    h: &Graph,
    emb: &PlaneEmbedding,
    tp: &ThetaPartition,
    class_id: usize,
) -> Result<CutCycleOrder, ExpansionPlanarityError> {
    let class = tp.class(class_id).ok_or(ExpansionPlanarityError::UnknownClass(class_id))?;
    let sides = tp.sides(class_id).ok_or(ExpansionPlanarityError::UnknownClass(class_id))?;
    if !verify_embedding(h, emb) || sides.len() != h.vertex_count() {
        return Err(ExpansionPlanarityError::InvalidEmbedding);
    }
    let forward = |e: usize| {
        let (a, b) = h.edges()[e];
        if sides[a.index()] == Side::One {
            Dart::new(a, b)
        } else {
            Dart::new(b, a)
        }
    };
    let is_cut = |d: Dart| sides[d.tail.index()] != sides[d.head.index()];
    for f in emb.face_walks() {
        let k = f.darts.iter().filter(|&&d| is_cut(d)).count();
        if k != 0 && k != 2 {
            return Err(ExpansionPlanarityError::FaceWithOddCutEdges(f.id(), k));
        }
    }
    let start = class[0];
    let mut edges = vec![start];
    let mut faces = Vec::new();
    let mut dart = forward(start);
    loop {
        let walk = emb.face_of(dart);
        faces.push(walk.id());
        let back = *walk.darts.iter().find(|&&d| d != dart && is_cut(d)).unwrap_or(&dart.reversed());
        let next = back.reversed();
        let e = h.edge_index(next.tail, next.head).expect("dart of h");
        if e == start {
            break;
        }
        if edges.len() >= class.len() {
            return Err(ExpansionPlanarityError::FaceWithOddCutEdges(walk.id(), edges.len()));
        }
        edges.push(e);
        dart = next;
    }
    if edges.len() != class.len() {
        let f = faces[0];
        return Err(ExpansionPlanarityError::FaceWithOddCutEdges(f, edges.len()));
    }
    Ok(CutCycleOrder { class_id, edges, faces })
}

/// A non-crossing 2-face expansion: plane embeddings of both sides with the
/// common part on their outer faces, listed in opposite cyclic orders.
///
/// `emb1` and `emb2` use the vertex ids of `spec.side_graph(Side::One)` and
/// `spec.side_graph(Side::Two)`; the orders list base vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCrossingCertificate {
    pub spec: ExpansionSpec,
    pub emb1: PlaneEmbedding,
    pub emb2: PlaneEmbedding,
    pub order1: Vec<VertexId>,
    pub order2: Vec<VertexId>,
}

fn side_set(spec: &ExpansionSpec, side: Side) -> &[VertexId] {
    match side {
        Side::One => &spec.v1,
        Side::Two => &spec.v2,
    }
}

/// Id of base vertex `v` inside the side graph (sides are sorted, and so are
/// vertex ids of induced subgraphs).
fn side_id(spec: &ExpansionSpec, side: Side, v: VertexId) -> Option<VertexId> {
    side_set(spec, side).binary_search(&v).ok().map(VertexId::from_index)
}

pub fn extract_noncrossing_step(
    h: &Graph,
    tp: &ThetaPartition,
    class_id: usize,
) -> Result<NonCrossingCertificate, ExpansionPlanarityError> {
    extract_with_contraction(h, tp, class_id).map(|(c, _)| c)
}

pub(crate) fn extract_with_contraction(
    h: &Graph,
    tp: &ThetaPartition,
    class_id: usize,
) -> Result<(NonCrossingCertificate, ContractionResult), ExpansionPlanarityError> {
    let pc = recognize(h).map_err(ExpansionPlanarityError::NotPartialCube)?;
    if &pc.partition != tp {
        return Err(ExpansionPlanarityError::PartitionMismatch);
    }
    let sides = tp.sides(class_id).ok_or(ExpansionPlanarityError::UnknownClass(class_id))?;
    let emb = match test_planarity(h) {
        Planarity::Planar(e) => e,
        Planarity::NonPlanar(w) => return Err(ExpansionPlanarityError::NotPlanar(Box::new(w))),
    };
    let order = cut_cycle_order(h, &emb, tp, class_id)?;
    let r = contract_unchecked(h, tp, class_id, sides);
    let spec = r.spec();

    let mut embs = Vec::with_capacity(2);
    let mut orders = Vec::with_capacity(2);
    for side in [Side::One, Side::Two] {
        let local = |x: VertexId| side_id(&spec, side, r.image_of[x.index()]).expect("side vertex");
        let len = side_set(&spec, side).len();
        let mut rotation = vec![Vec::new(); len];
        for x in h.vertices().filter(|x| sides[x.index()] == side) {
            rotation[local(x).index()] = emb.rotation[x.index()]
                .iter()
                .filter(|w| sides[w.index()] == side)
                .map(|&w| local(w))
                .collect();
        }
        let mut side_emb = PlaneEmbedding::from_rotation(rotation);
        // the angle at each matched vertex that held its matching edge
        let angles: Vec<(VertexId, Option<Dart>)> = order
            .edges
            .iter()
            .map(|&e| {
                let (a, b) = h.edges()[e];
                let (x, y) = if sides[a.index()] == side { (a, b) } else { (b, a) };
                let r_x = &emb.rotation[x.index()];
                let at = r_x.iter().position(|&w| w == y).expect("neighbor");
                let p = (1..r_x.len())
                    .map(|k| r_x[(at + r_x.len() - k) % r_x.len()])
                    .find(|w| sides[w.index()] == side);
                (r.image_of[x.index()], p.map(|p| Dart::new(local(p), local(x))))
            })
            .collect();
        let order_side = match angles[0].1 {
            None => {
                side_emb.outer = None;
                angles.iter().map(|a| a.0).collect()
            }
            Some(d) => {
                let walk = side_emb.face_of(d);
                side_emb.outer = Some(walk.id());
                let mut keyed: Vec<(usize, VertexId)> = angles
                    .iter()
                    .map(|&(v, d)| {
                        let d = d.expect("connected side");
                        (walk.darts.iter().position(|&w| w == d).expect("angle on the outer face"), v)
                    })
                    .collect();
                keyed.sort_unstable();
                keyed.into_iter().map(|(_, v)| v).collect()
            }
        };
        embs.push(side_emb);
        orders.push(order_side);
    }
    let emb2 = embs.pop().expect("two sides");
    let emb1 = embs.pop().expect("two sides");
    let order2 = orders.pop().expect("two sides");
    let order1 = orders.pop().expect("two sides");
    Ok((NonCrossingCertificate { spec, emb1, emb2, order1, order2 }, r))
}

/// Whether `order` can be read off the cyclic walk `walk`, picking one
/// occurrence of each vertex.
fn is_cyclic_subsequence(order: &[VertexId], walk: &[VertexId]) -> bool {
    let Some(&first) = order.first() else { return true };
    let n = walk.len();
    (0..n).filter(|&s| walk[s] == first).any(|s| {
        let mut k = 1;
        for i in 1..n {
            if k < order.len() && walk[(s + i) % n] == order[k] {
                k += 1;
            }
        }
        k == order.len()
    })
}

fn is_cyclic_rotation(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|s| a.iter().enumerate().all(|(i, &x)| b[(s + i) % b.len()] == x))
}

pub fn verify_noncrossing(cert: &NonCrossingCertificate) -> bool {
    let spec = &cert.spec;
    if spec.validate().is_err() {
        return false;
    }
    let common = spec.intersection();
    for (side, emb, order) in [(Side::One, &cert.emb1, &cert.order1), (Side::Two, &cert.emb2, &cert.order2)] {
        let g = spec.side_graph(side);
        if !verify_embedding(&g, emb) {
            return false;
        }
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != common {
            return false;
        }
        let local: Vec<VertexId> = order.iter().map(|&v| side_id(spec, side, v).expect("common vertex")).collect();
        match emb.outer_face() {
            None => {
                if g.edge_count() != 0 || g.vertex_count() != 1 {
                    return false;
                }
            }
            Some(walk) => {
                let walk: Vec<VertexId> = walk.vertices().collect();
                if !is_cyclic_subsequence(&local, &walk) {
                    return false;
                }
            }
        }
    }
    if common.len() <= 2 {
        return true;
    }
    let mut reversed = cert.order2.clone();
    reversed.reverse();
    is_cyclic_rotation(&cert.order1, &reversed)
}

/// Whether the expansion can be drawn without crossings; by the equivalence
/// of planarity and non-crossing realizability this is planarity of the
/// expanded graph.
pub fn is_noncrossing_expansion(spec: &ExpansionSpec) -> Result<bool, ExpansionError> {
    Ok(is_planar(&expand(spec)?))
}

/// Common part of the two sides, in side-graph ids.
fn common_in_side(spec: &ExpansionSpec, side: Side) -> Vec<VertexId> {
    spec.intersection().into_iter().map(|v| side_id(spec, side, v).expect("common vertex")).collect()
}

/// Face certificates for both sides, or `None` if some side has no plane
/// embedding with the common part on one face.
pub fn two_face_certificates(
    spec: &ExpansionSpec,
) -> Result<Option<(FaceCertificate, FaceCertificate)>, ExpansionError> {
    spec.validate()?;
    let mut certs = Vec::with_capacity(2);
    for side in [Side::One, Side::Two] {
        let g = spec.side_graph(side);
        match face_containing(&g, &common_in_side(spec, side)) {
            Ok(Some(c)) => certs.push(c),
            Ok(None) | Err(_) => return Ok(None),
        }
    }
    let second = certs.pop().expect("two sides");
    let first = certs.pop().expect("two sides");
    Ok(Some((first, second)))
}

pub fn is_two_face_expansion(spec: &ExpansionSpec) -> Result<bool, ExpansionError> {
    two_face_certificates(spec).map(|c| c.is_some())
}

/// A planar partial cube with a 2-face expansion that is not planar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlawWitness {
    pub spec: ExpansionSpec,
    pub face1: FaceCertificate,
    pub face2: FaceCertificate,
    /// Subdivision inside `expand(&spec)`.
    pub kuratowski: KuratowskiWitness,
}

pub fn verify_flaw_witness(w: &FlawWitness) -> bool {
    let spec = &w.spec;
    if spec.validate().is_err() || recognize(&spec.base).is_err() || embed_graph(&spec.base).is_none() {
        return false;
    }
    for (side, face) in [(Side::One, &w.face1), (Side::Two, &w.face2)] {
        if !verify_face_certificate(&spec.side_graph(side), &common_in_side(spec, side), face) {
            return false;
        }
    }
    expand(spec).is_ok_and(|h| verify_kuratowski(&h, &w.kuratowski))
}

/// Limits for [`find_flaw_witness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlawBudget {
    pub max_base_size: usize,
    /// Number of valid specs examined before giving up; `None` for no limit.
    pub max_candidates: Option<u64>,
    /// Random planar partial cubes added to the named bases.
    pub random_bases: usize,
}

impl Default for FlawBudget {
    fn default() -> Self {
        FlawBudget { max_base_size: 12, max_candidates: None, random_bases: 64 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlawSearchError {
    #[error("no flaw witness within the budget ({0} candidates examined)")]
    NotFound(u64),
}

/// Bases for the flaw search, by increasing size; ties keep generation order.
pub fn flaw_search_bases(budget: &FlawBudget, seed: u64) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    let mut push = |g: Graph| {
        if g.vertex_count() <= budget.max_base_size && !out.iter().any(|h| h.labeled_eq(&g)) {
            out.push(g);
        }
    };
    for n in 1..=budget.max_base_size {
        if let Ok(p) = generators::path(n) {
            push(p);
        }
    }
    for n in (4..=budget.max_base_size).step_by(2) {
        if let Ok(c) = generators::even_cycle(n) {
            push(c);
        }
    }
    for a in 2..=budget.max_base_size {
        for b in a..=budget.max_base_size / a {
            if let Ok(g) = generators::grid(a, b) {
                push(g);
            }
        }
    }
    push(generators::hypercube(3));
    for n in 3..=budget.max_base_size {
        if let Ok(g) = generators::gear(n) {
            push(g);
        }
    }
    for n in 2..budget.max_base_size {
        if let Ok(t) = generators::random_tree(n, seed) {
            push(t);
        }
    }
    for s in 0..budget.random_bases as u64 {
        let steps = 2 + (s as usize % 5);
        if let Ok(g) = random_planar_partial_cube(steps, seed.wrapping_add(s)) {
            push(g);
        }
    }
    out.sort_by_key(|g| g.vertex_count());
    out
}

/// Isometric vertex subsets of `g` as bitmasks, increasing.
fn isometric_subsets(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    (1u32..1 << n)
        .filter(|&mask| {
            let s: Vec<VertexId> = (0..n).filter(|&i| mask >> i & 1 == 1).map(VertexId::from_index).collect();
            is_isometric_subgraph(g, &s).unwrap_or(false)
        })
        .collect()
}

fn members(mask: u32, n: usize) -> Vec<VertexId> {
    (0..n).filter(|&i| mask >> i & 1 == 1).map(VertexId::from_index).collect()
}

/// Searches bases by increasing size and, per base, side pairs `(v1, v2)`
/// with `v1 <= v2` as bitmasks, for the first 2-face expansion whose
/// expansion is not planar.
pub fn find_flaw_witness(budget: &FlawBudget, seed: u64) -> Result<FlawWitness, FlawSearchError> {
    let mut examined = 0u64;
    let exhausted = |k: u64| budget.max_candidates.is_some_and(|m| k >= m);
    for base in flaw_search_bases(budget, seed) {
        let n = base.vertex_count();
        if n > 31 {
            continue;
        }
        let full = (1u32 << n) - 1;
        let edge_masks: Vec<u32> = base.edges().iter().map(|&(u, v)| 1 << u.index() | 1 << v.index()).collect();
        let subsets = isometric_subsets(&base);
        for (i, &a) in subsets.iter().enumerate() {
            for &b in &subsets[i..] {
                if a | b != full || a & b == 0 || !edge_masks.iter().all(|&e| e & a == e || e & b == e) {
                    continue;
                }
                if exhausted(examined) {
                    return Err(FlawSearchError::NotFound(examined));
                }
                examined += 1;
                let spec = ExpansionSpec { base: base.clone(), v1: members(a, n), v2: members(b, n) };
                let h = expand(&spec).expect("covering isometric sides");
                if is_planar(&h) {
                    continue;
                }
                let Ok(Some((face1, face2))) = two_face_certificates(&spec) else { continue };
                let Planarity::NonPlanar(kuratowski) = test_planarity(&h) else { unreachable!("checked above") };
                return Ok(FlawWitness { spec, face1, face2, kuratowski });
            }
        }
    }
    Err(FlawSearchError::NotFound(examined))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{even_cycle, hypercube, path};
    use crate::ops::contract_class;
    use crate::partial_cube::theta_classes;

    fn certificate(h: &Graph, class: usize) -> NonCrossingCertificate {
        let tp = theta_classes(h).unwrap();
        extract_noncrossing_step(h, &tp, class).unwrap()
    }

    #[test]
    fn cut_cycle_small() {
        let c4 = even_cycle(4).unwrap();
        let tp = theta_classes(&c4).unwrap();
        let emb = embed_graph(&c4).unwrap();
        for class in 0..2 {
            let o = cut_cycle_order(&c4, &emb, &tp, class).unwrap();
            assert_eq!(o.edges.len(), 2);
        }
        let k2 = path(2).unwrap();
        let tp = theta_classes(&k2).unwrap();
        let o = cut_cycle_order(&k2, &embed_graph(&k2).unwrap(), &tp, 0).unwrap();
        assert_eq!(o.edges, vec![0]);
        assert_eq!(
            cut_cycle_order(&k2, &embed_graph(&k2).unwrap(), &tp, 1).unwrap_err(),
            ExpansionPlanarityError::UnknownClass(1)
        );
    }

    #[test]
    fn cube_equator() {
        let q3 = hypercube(3);
        let tp = theta_classes(&q3).unwrap();
        let emb = embed_graph(&q3).unwrap();
        let fs = emb.face_walks();
        for class in 0..3 {
            let o = cut_cycle_order(&q3, &emb, &tp, class).unwrap();
            assert_eq!(o.edges.len(), 4);
            let mut sorted = o.edges.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, tp.class(class).unwrap());
            // consecutive edges share a face
            for i in 0..4 {
                let (e, f) = (o.edges[i], o.edges[(i + 1) % 4]);
                let shared = fs.iter().any(|w| {
                    let on = |e: usize| {
                        let (a, b) = q3.edges()[e];
                        w.darts.iter().any(|d| (d.tail, d.head) == (a, b) || (d.tail, d.head) == (b, a))
                    };
                    on(e) && on(f)
                });
                assert!(shared);
            }
        }
    }

    #[test]
    fn broken_embedding_rejected() {
        let c4 = even_cycle(4).unwrap();
        let tp = theta_classes(&c4).unwrap();
        let mut emb = embed_graph(&c4).unwrap();
        emb.rotation[0].reverse();
        emb.rotation[0].truncate(1);
        assert_eq!(cut_cycle_order(&c4, &emb, &tp, 0).unwrap_err(), ExpansionPlanarityError::InvalidEmbedding);
    }

    #[test]
    fn extract_small() {
        let c4 = even_cycle(4).unwrap();
        let cert = certificate(&c4, 0);
        assert_eq!(cert.spec.base.vertex_count(), 2);
        assert_eq!(cert.order1.len(), 2);
        assert!(verify_noncrossing(&cert));

        let k2 = path(2).unwrap();
        let cert = certificate(&k2, 0);
        assert_eq!(cert.order1.len(), 1);
        assert!(verify_noncrossing(&cert));
    }

    #[test]
    fn extract_cube() {
        let q3 = hypercube(3);
        for class in 0..3 {
            let cert = certificate(&q3, class);
            assert_eq!(cert.spec.base.vertex_count(), 4);
            assert_eq!(cert.spec.v1.len(), 4);
            assert_eq!(cert.spec.v2.len(), 4);
            assert_eq!(cert.order1.len(), 4);
            assert!(verify_noncrossing(&cert));
            let mut same = cert.clone();
            same.order2 = same.order1.clone();
            assert!(!verify_noncrossing(&same));
        }
    }

    #[test]
    fn orders_follow_the_cut_cycle() {
        let h = generators::grid(3, 4).unwrap();
        let tp = theta_classes(&h).unwrap();
        let emb = embed_graph(&h).unwrap();
        for class in 0..tp.len() {
            let cert = extract_noncrossing_step(&h, &tp, class).unwrap();
            assert!(verify_noncrossing(&cert));
            let cycle = cut_cycle_order(&h, &emb, &tp, class).unwrap();
            let r = contract_class(&h, &tp, class).unwrap();
            let images: Vec<VertexId> = cycle
                .edges
                .iter()
                .map(|&e| {
                    let (a, b) = h.edges()[e];
                    r.image_of[a.index()].min(r.image_of[b.index()])
                })
                .collect();
            let mut rev = images.clone();
            rev.reverse();
            assert!(is_cyclic_rotation(&cert.order1, &images) || is_cyclic_rotation(&cert.order1, &rev));
        }
    }

    #[test]
    fn rejects_non_planar_and_non_cubes() {
        let q4 = hypercube(4);
        let tp = theta_classes(&q4).unwrap();
        assert!(matches!(extract_noncrossing_step(&q4, &tp, 0), Err(ExpansionPlanarityError::NotPlanar(_))));
        let k23 = generators::complete_bipartite(2, 3);
        let tp = theta_classes(&k23).unwrap();
        assert!(matches!(extract_noncrossing_step(&k23, &tp, 0), Err(ExpansionPlanarityError::NotPartialCube(_))));
    }

    #[test]
    fn expansion_predicates() {
        let k2 = path(2).unwrap();
        let spec = ExpansionSpec::from_names(k2, &["p0", "p1"], &["p0", "p1"]).unwrap();
        assert!(is_noncrossing_expansion(&spec).unwrap());
        assert!(is_two_face_expansion(&spec).unwrap());

        let q3 = hypercube(3);
        let square = q3.lookup_all(&["000", "001", "011", "010"]).unwrap();
        let spec = ExpansionSpec::new(q3.clone(), q3.vertices().collect(), square).unwrap();
        assert!(is_noncrossing_expansion(&spec).unwrap());
        assert!(recognize(&expand(&spec).unwrap()).is_ok());
    }

    #[test]
    fn zero_budget_finds_nothing() {
        let budget = FlawBudget { max_candidates: Some(0), ..FlawBudget::default() };
        assert_eq!(find_flaw_witness(&budget, 0).unwrap_err(), FlawSearchError::NotFound(0));
    }

    #[test]
    fn small_flaw_search() {
        let w = find_flaw_witness(&FlawBudget { max_base_size: 8, ..FlawBudget::default() }, 0).unwrap();
        assert!(verify_flaw_witness(&w));
        assert!(is_two_face_expansion(&w.spec).unwrap());
        assert!(!is_noncrossing_expansion(&w.spec).unwrap());
    }
}
