//! Planarity testing with certificates on both sides: a plane embedding
//! (rotation system checked against Euler's formula) or a Kuratowski
//! subdivision.

mod dmp;
mod embedding;
mod kuratowski;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub use embedding::{
    faces, induced_rotation, reroot_outer_face, verify_embedding, Dart, EmbeddingError, FaceId, FaceWalk,
    PlaneEmbedding,
};
pub use kuratowski::{verify_kuratowski, KuratowskiKind, KuratowskiWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(PlaneEmbedding),
    NonPlanar(KuratowskiWitness),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn embedding(self) -> Option<PlaneEmbedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar(_) => None,
        }
    }
}

pub fn test_planarity(g: &Graph) -> Planarity {
    match embed_graph(g) {
        Some(emb) => Planarity::Planar(emb),
        None => Planarity::NonPlanar(kuratowski::extract(g).expect("graph without embedding is non-planar")),
    }
}

/// Verdict only; skips witness extraction.
pub fn is_planar(g: &Graph) -> bool {
    dmp::embed(&kuratowski::adjacency_of(g)).is_some()
}

pub fn embed_graph(g: &Graph) -> Option<PlaneEmbedding> {
    let rotation = dmp::embed(&kuratowski::adjacency_of(g))?;
    let rotation = rotation.into_iter().map(|r| r.into_iter().map(VertexId::from_index).collect()).collect();
    Some(PlaneEmbedding::from_rotation(rotation))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarityError {
    #[error("input graph is not planar")]
    NotPlanarInput(Box<KuratowskiWitness>),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

/// An embedding together with one face containing a prescribed vertex set.
/// `face` is `None` only for edgeless graphs, whose single face holds
/// every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCertificate {
    pub embedding: PlaneEmbedding,
    pub face: Option<FaceId>,
}

pub fn verify_face_certificate(g: &Graph, s: &[VertexId], cert: &FaceCertificate) -> bool {
    if !verify_embedding(g, &cert.embedding) || s.iter().any(|v| v.index() >= g.vertex_count()) {
        return false;
    }
    match cert.face {
        None => g.edge_count() == 0,
        Some(d) => {
            if !cert.embedding.has_dart(d) {
                return false;
            }
            let walk = cert.embedding.face_of(d);
            s.iter().all(|&v| walk.contains_vertex(v))
        }
    }
}

/// Some plane embedding of `g` with all of `s` on one face, found by adding
/// an apex adjacent to `s` and embedding the result. `Ok(None)` when no
/// such embedding exists.
pub fn face_containing(g: &Graph, s: &[VertexId]) -> Result<Option<FaceCertificate>, PlanarityError> {
    if let Some(&v) = s.iter().find(|v| v.index() >= g.vertex_count()) {
        return Err(PlanarityError::UnknownVertex(v));
    }
    let Some(plain) = embed_graph(g) else {
        let w = kuratowski::extract(g).expect("non-planar");
        return Err(PlanarityError::NotPlanarInput(Box::new(w)));
    };
    if g.edge_count() == 0 {
        // an edgeless graph has a single face holding every vertex
        return Ok(Some(FaceCertificate { embedding: plain, face: None }));
    }
    let Some(&anchor) = s.first() else {
        let face = plain.outer;
        return Ok(Some(FaceCertificate { embedding: plain, face }));
    };
    let n = g.vertex_count();
    let mut adj = kuratowski::adjacency_of(g);
    let mut members: Vec<usize> = s.iter().map(|v| v.index()).collect();
    members.sort_unstable();
    members.dedup();
    for &v in &members {
        adj[v].push(n);
    }
    adj.push(members);
    let Some(rotation) = dmp::embed(&adj) else { return Ok(None) };
    // drop the apex; the face that held it is entered at `anchor` right
    // before the apex position
    let r = &rotation[anchor.index()];
    let at = r.iter().position(|&x| x == n).expect("apex adjacent to anchor");
    let before = r[(at + r.len() - 1) % r.len()];
    let rotation: Vec<Vec<VertexId>> = rotation[..n]
        .iter()
        .map(|r| r.iter().filter(|&&x| x != n).map(|&x| VertexId::from_index(x)).collect())
        .collect();
    let mut embedding = PlaneEmbedding::from_rotation(rotation);
    let face = if before == n {
        // anchor was isolated in g; it sits in the face of any other member
        None
    } else {
        Some(embedding.face_id_of(Dart::new(VertexId::from_index(before), anchor)))
    };
    if face.is_some() {
        embedding.outer = face;
    }
    Ok(Some(FaceCertificate { embedding, face }))
}

/// Whether some plane embedding of `g` has all of `s` on a single face.
pub fn common_face_realizable(g: &Graph, s: &[VertexId]) -> Result<bool, PlanarityError> {
    face_containing(g, s).map(|c| c.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, gear, gear_obstruction, hypercube, path};

    fn certified(g: &Graph) -> bool {
        match test_planarity(g) {
            Planarity::Planar(emb) => {
                assert!(verify_embedding(g, &emb), "embedding rejected");
                true
            }
            Planarity::NonPlanar(w) => {
                assert!(verify_kuratowski(g, &w), "witness rejected: {w:?}");
                false
            }
        }
    }

    #[test]
    fn cube_has_six_faces() {
        let q3 = hypercube(3);
        let emb = test_planarity(&q3).embedding().unwrap();
        let fs = faces(&q3, &emb).unwrap();
        assert_eq!(fs.len(), 6);
        assert!(fs.iter().all(|f| f.len() == 4));
    }

    #[test]
    fn kuratowski_graphs() {
        let k33 = complete_bipartite(3, 3);
        let Planarity::NonPlanar(w) = test_planarity(&k33) else { panic!() };
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert!(w.paths.iter().all(|p| p.len() == 2));
        assert!(verify_kuratowski(&k33, &w));

        let k5 = complete(5);
        let Planarity::NonPlanar(w) = test_planarity(&k5) else { panic!() };
        assert_eq!(w.kind, KuratowskiKind::K5);
        assert!(verify_kuratowski(&k5, &w));

        let q4 = hypercube(4);
        assert!(!certified(&q4));
    }

    #[test]
    fn small_faces() {
        let c4 = cycle(4);
        let emb = embed_graph(&c4).unwrap();
        let fs = faces(&c4, &emb).unwrap();
        assert_eq!(fs.iter().map(FaceWalk::len).collect::<Vec<_>>(), vec![4, 4]);

        let k2 = path(2).unwrap();
        let emb = embed_graph(&k2).unwrap();
        let fs = faces(&k2, &emb).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].len(), 2);
    }

    #[test]
    fn bad_rotations_are_rejected() {
        let k4 = complete(4);
        let emb = embed_graph(&k4).unwrap();
        assert!(verify_embedding(&k4, &emb));
        // swap two neighbors at one vertex: K4 has only one embedding up to mirror,
        // so a single transposition at a degree-3 vertex breaks planarity
        let mut bad = emb.clone();
        bad.rotation[0].swap(0, 1);
        assert!(!verify_embedding(&k4, &bad));
        assert_eq!(faces(&k4, &bad).unwrap_err(), EmbeddingError::NotGenusZero);
        let mut missing = emb.clone();
        missing.rotation[0].pop();
        assert!(matches!(faces(&k4, &missing), Err(EmbeddingError::InvalidRotation(_))));
    }

    #[test]
    fn k33_rotations_never_satisfy_euler() {
        // every rotation system of K3,3: (2!)^6 = 64 choices
        let g = complete_bipartite(3, 3);
        let base: Vec<Vec<VertexId>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
        for mask in 0..64u32 {
            let mut rotation = base.clone();
            for (v, r) in rotation.iter_mut().enumerate() {
                if mask >> v & 1 == 1 {
                    r.swap(1, 2);
                }
            }
            assert!(!verify_embedding(&g, &PlaneEmbedding::from_rotation(rotation)));
        }
    }

    #[test]
    fn witness_tampering_is_detected() {
        let k33 = complete_bipartite(3, 3);
        let Planarity::NonPlanar(w) = test_planarity(&k33) else { panic!() };
        let mut wrong_kind = w.clone();
        wrong_kind.kind = KuratowskiKind::K5;
        assert!(!verify_kuratowski(&k33, &wrong_kind));
        let mut dropped = w.clone();
        dropped.paths.pop();
        assert!(!verify_kuratowski(&k33, &dropped));
        let c4 = cycle(4);
        assert!(!verify_kuratowski(&c4, &w));
    }

    #[test]
    fn gear_obstruction_witness() {
        let g = gear_obstruction(3).unwrap();
        assert!(!certified(&g));
        assert!(certified(&gear(5).unwrap()));
    }

    #[test]
    fn reroot() {
        let c4 = cycle(4);
        let emb = embed_graph(&c4).unwrap();
        let fs = emb.face_walks();
        let other = fs.iter().find(|f| Some(f.id()) != emb.outer).unwrap().id();
        let swapped = reroot_outer_face(&emb, other).unwrap();
        assert!(verify_embedding(&c4, &swapped));
        assert_eq!(swapped.outer, Some(other));
        assert_eq!(swapped.rotation, emb.rotation);
        let same = reroot_outer_face(&emb, emb.outer.unwrap()).unwrap();
        assert_eq!(same, emb);
        let bogus = Dart::new(VertexId::from_index(0), VertexId::from_index(2));
        assert_eq!(reroot_outer_face(&emb, bogus).unwrap_err(), EmbeddingError::UnknownFace(bogus));
    }

    #[test]
    fn common_face_cases() {
        let c4 = cycle(4);
        let opposite = [VertexId::from_index(0), VertexId::from_index(2)];
        assert!(common_face_realizable(&c4, &opposite).unwrap());
        let k4 = complete(4);
        let all: Vec<_> = k4.vertices().collect();
        assert!(!common_face_realizable(&k4, &all).unwrap());
        let q3 = hypercube(3);
        let square = q3.lookup_all(&["000", "001", "011", "010"]).unwrap();
        let cert = face_containing(&q3, &square).unwrap().unwrap();
        assert!(verify_face_certificate(&q3, &square, &cert));
        // antipodal pair plus neighbors cannot share a face of the cube
        let spread = q3.lookup_all(&["000", "011", "101", "110"]).unwrap();
        assert!(!common_face_realizable(&q3, &spread).unwrap());
        assert!(matches!(
            common_face_realizable(&complete(5), &[VertexId::from_index(0)]),
            Err(PlanarityError::NotPlanarInput(_))
        ));
    }
}
