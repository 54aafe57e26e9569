//! Decomposition of planar partial cubes into non-crossing 2-face expansions
//! starting from K₁, replay of such decompositions, and minimal obstructions.
//!
//! Certificates name vertices canonically: the single vertex of K₁ is `r`
//! and the copies of a vertex `x` are `x.1` and `x.2`, so each step's
//! expansion is literally the next step's base.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;
use thiserror::Error;

use crate::expansion::{extract_with_contraction, verify_noncrossing, NonCrossingCertificate};
use crate::graph::{Graph, Side, VertexId};
use crate::ops::{copy_name, expand, one_step_minors, ExpansionError, ExpansionSpec, OpsError};
use crate::partial_cube::{recognize, verify_refutation, HypercubeLabeling, PcRefutation};
use crate::planarity::{is_planar, test_planarity, verify_kuratowski, Dart, KuratowskiWitness, Planarity, PlaneEmbedding};

/// Name of the single vertex of K₁ in certificates.
pub const ROOT: &str = "r";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCertificate {
    /// Expansion steps from K₁ up to the target.
    pub steps: Vec<NonCrossingCertificate>,
    /// Label of each target vertex; bit `i` is set when the vertex lies on
    /// side two of step `i`.
    pub final_labeling: HypercubeLabeling,
    /// Target vertex names, aligned with `final_labeling.labels`.
    pub names: Vec<Arc<str>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    NotPartialCube(PcRefutation),
    NotPlanar(KuratowskiWitness),
}

pub fn verify_decomposition_refutation(h: &Graph, r: &Refutation) -> bool {
    match r {
        Refutation::NotPartialCube(p) => verify_refutation(h, p),
        Refutation::NotPlanar(w) => verify_kuratowski(h, w),
    }
}

/// Which Θ-class to contract at each level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassChoice {
    Lowest,
    Random(u64),
}

pub fn certify_planar_partial_cube(h: &Graph) -> Result<DecompositionCertificate, Refutation> {
    certify_with(h, ClassChoice::Lowest)
}

pub fn certify_with(h: &Graph, choice: ClassChoice) -> Result<DecompositionCertificate, Refutation> {
    let pc = recognize(h).map_err(Refutation::NotPartialCube)?;
    if let Planarity::NonPlanar(w) = test_planarity(h) {
        return Err(Refutation::NotPlanar(w));
    }
    let mut rng = match choice {
        ClassChoice::Lowest => None,
        ClassChoice::Random(seed) => Some(Pcg32::seed_from_u64(seed)),
    };
    // contraction chain, top down
    let mut levels = Vec::new();
    let mut cur = h.clone();
    let mut tp = pc.partition;
    while cur.vertex_count() > 1 {
        let class = rng.as_mut().map_or(0, |r| r.gen_range(0..tp.len()));
        let (cert, r) = extract_with_contraction(&cur, &tp, class).expect("planar partial cubes contract");
        let next = r.quotient.clone();
        tp = recognize(&next).expect("contractions of partial cubes are partial cubes").partition;
        levels.push((cert, r.image_of, r.side_of));
        cur = next;
    }
    let mut names: Vec<Arc<str>> = vec![ROOT.into()];
    let mut bits: Vec<Vec<bool>> = vec![Vec::new()];
    let mut steps = Vec::with_capacity(levels.len());
    for (cert, image_of, side_of) in levels.into_iter().rev() {
        steps.push(relabel(&cert, &names));
        let child_names = image_of.iter().zip(&side_of).map(|(q, &s)| copy_name(&names[q.index()], s)).collect();
        bits = image_of
            .iter()
            .zip(&side_of)
            .map(|(q, &s)| {
                let mut b = bits[q.index()].clone();
                b.push(s == Side::Two);
                b
            })
            .collect();
        names = child_names;
    }
    Ok(DecompositionCertificate {
        final_labeling: HypercubeLabeling { dim: steps.len(), labels: bits },
        names: h.vertices().map(|v| h.name_arc(v).clone()).collect(),
        steps,
    })
}

/// The same certificate over a base whose vertex `v` is renamed `names[v]`.
fn relabel(cert: &NonCrossingCertificate, names: &[Arc<str>]) -> NonCrossingCertificate {
    let old = &cert.spec.base;
    let base = old.renamed(|v| names[v.index()].clone()).expect("distinct names");
    let map: Vec<VertexId> = old.vertices().map(|v| base.find(&names[v.index()]).expect("renamed")).collect();
    let remap = |vs: &[VertexId]| {
        let mut out: Vec<VertexId> = vs.iter().map(|v| map[v.index()]).collect();
        out.sort_unstable();
        out
    };
    let spec = ExpansionSpec { v1: remap(&cert.spec.v1), v2: remap(&cert.spec.v2), base };
    let side_map = |old_side: &[VertexId], new_side: &[VertexId]| -> Vec<VertexId> {
        old_side
            .iter()
            .map(|v| VertexId::from_index(new_side.binary_search(&map[v.index()]).expect("side vertex")))
            .collect()
    };
    let move_embedding = |emb: &PlaneEmbedding, to: &[VertexId]| {
        let mut rotation = vec![Vec::new(); emb.rotation.len()];
        for (i, r) in emb.rotation.iter().enumerate() {
            rotation[to[i].index()] = r.iter().map(|w| to[w.index()]).collect();
        }
        let mut moved = PlaneEmbedding::from_rotation(rotation);
        moved.outer = emb.outer.map(|d| {
            moved.face_id_of(Dart::new(to[d.tail.index()], to[d.head.index()]))
        });
        moved
    };
    let to1 = side_map(&cert.spec.v1, &spec.v1);
    let to2 = side_map(&cert.spec.v2, &spec.v2);
    NonCrossingCertificate {
        emb1: move_embedding(&cert.emb1, &to1),
        emb2: move_embedding(&cert.emb2, &to2),
        order1: cert.order1.iter().map(|v| map[v.index()]).collect(),
        order2: cert.order2.iter().map(|v| map[v.index()]).collect(),
        spec,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepFault {
    #[error("base differs from the graph built so far")]
    BaseMismatch,
    #[error("not a non-crossing 2-face expansion")]
    NotNonCrossing,
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("step {0}: {1}")]
    InvalidStep(usize, StepFault),
    #[error("final labeling does not match the expanded graph")]
    LabelingMismatch,
}

/// Rebuilds the target from K₁, checking every step.
pub fn replay(cert: &DecompositionCertificate) -> Result<Graph, ReplayError> {
    let mut cur = Graph::single_vertex(ROOT);
    for (i, step) in cert.steps.iter().enumerate() {
        if !step.spec.base.labeled_eq(&cur) {
            return Err(ReplayError::InvalidStep(i, StepFault::BaseMismatch));
        }
        if !verify_noncrossing(step) {
            return Err(ReplayError::InvalidStep(i, StepFault::NotNonCrossing));
        }
        cur = expand(&step.spec).map_err(|e| ReplayError::InvalidStep(i, e.into()))?;
    }
    let lab = &cert.final_labeling;
    if lab.dim != cert.steps.len() || lab.labels.len() != cur.vertex_count() || cert.names.len() != lab.labels.len()
    {
        return Err(ReplayError::LabelingMismatch);
    }
    let by_label: HashMap<String, &Arc<str>> = lab
        .labels
        .iter()
        .zip(&cert.names)
        .map(|(bits, name)| (canonical_name(bits), name))
        .collect();
    if by_label.len() != cur.vertex_count() {
        return Err(ReplayError::LabelingMismatch);
    }
    if cur.vertices().any(|v| !by_label.contains_key(cur.name(v))) {
        return Err(ReplayError::LabelingMismatch);
    }
    cur.renamed(|v| by_label[cur.name(v)].clone()).map_err(|_| ReplayError::LabelingMismatch)
}

/// Canonical certificate name of the vertex with the given label.
pub fn canonical_name(bits: &[bool]) -> String {
    let mut s = String::from(ROOT);
    for &b in bits {
        s.push_str(if b { ".2" } else { ".1" });
    }
    s
}

/// Non-planar, while every contraction and restriction of a single Θ-class
/// is planar.
pub fn is_minimal_obstruction(h: &Graph) -> Result<bool, OpsError> {
    let minors = one_step_minors(h)?;
    Ok(!is_planar(h) && minors.iter().all(is_planar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, even_cycle, gear_obstruction, grid, hypercube, random_planar_partial_cube};

    fn round_trip(h: &Graph) -> DecompositionCertificate {
        let cert = certify_planar_partial_cube(h).unwrap();
        assert_eq!(cert.steps.len(), recognize(h).unwrap().partition.len());
        let back = replay(&cert).unwrap();
        assert!(back.labeled_eq(h), "replay differs");
        cert
    }

    #[test]
    fn k1_has_empty_certificate() {
        let k1 = Graph::single_vertex("x");
        let cert = round_trip(&k1);
        assert!(cert.steps.is_empty());
        assert_eq!(replay(&cert).unwrap().name(VertexId::from_index(0)), "x");
    }

    #[test]
    fn cube_round_trip() {
        let cert = round_trip(&hypercube(3));
        assert_eq!(cert.steps.len(), 3);
        assert_eq!(cert.steps[0].spec.base.vertex_count(), 1);
        assert_eq!(cert.steps[2].spec.base.vertex_count(), 4);
    }

    #[test]
    fn assorted_round_trips() {
        round_trip(&even_cycle(10).unwrap());
        round_trip(&grid(3, 4).unwrap());
        for seed in 0..10 {
            let h = random_planar_partial_cube(6, seed).unwrap();
            round_trip(&h);
            let cert = certify_with(&h, ClassChoice::Random(seed)).unwrap();
            assert!(replay(&cert).unwrap().labeled_eq(&h));
        }
    }

    #[test]
    fn refutations() {
        let g = gear_obstruction(3).unwrap();
        let r = certify_planar_partial_cube(&g).unwrap_err();
        assert!(matches!(r, Refutation::NotPlanar(_)));
        assert!(verify_decomposition_refutation(&g, &r));
        let k23 = complete_bipartite(2, 3);
        let r = certify_planar_partial_cube(&k23).unwrap_err();
        assert!(matches!(r, Refutation::NotPartialCube(_)));
        assert!(verify_decomposition_refutation(&k23, &r));
    }

    #[test]
    fn tampering_is_detected() {
        let cert = certify_planar_partial_cube(&hypercube(3)).unwrap();
        let mut bad = cert.clone();
        let last = bad.steps.last_mut().unwrap();
        last.order2 = last.order1.clone();
        assert_eq!(replay(&bad).unwrap_err(), ReplayError::InvalidStep(2, StepFault::NotNonCrossing));
        let mut bad = cert.clone();
        bad.steps.remove(1);
        assert_eq!(replay(&bad).unwrap_err(), ReplayError::InvalidStep(1, StepFault::BaseMismatch));
        let mut bad = cert.clone();
        bad.final_labeling.labels.swap(0, 1);
        assert!(!replay(&bad).unwrap().labeled_eq(&hypercube(3)));
        let mut bad = cert;
        bad.final_labeling.labels[0] = bad.final_labeling.labels[1].clone();
        assert_eq!(replay(&bad).unwrap_err(), ReplayError::LabelingMismatch);
    }

    #[test]
    fn obstructions() {
        assert!(is_minimal_obstruction(&gear_obstruction(3).unwrap()).unwrap());
        assert!(!is_minimal_obstruction(&hypercube(3)).unwrap());
        assert!(!is_minimal_obstruction(&hypercube(5)).unwrap());
        assert!(matches!(is_minimal_obstruction(&complete_bipartite(2, 3)), Err(OpsError::NotPartialCube(_))));
    }
}
