//! JSON certificate files. Vertices are referenced by name throughout.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposer::{replay, DecompositionCertificate, Refutation};
use crate::expansion::{verify_flaw_witness, FlawWitness, NonCrossingCertificate};
use crate::graph::{Graph, GraphError, Side, VertexId};
use crate::ops::{expand, ExpansionSpec};
use crate::partial_cube::{verify_refutation, HypercubeLabeling, PcRefutation};
use crate::planarity::{verify_kuratowski, Dart, FaceCertificate, KuratowskiKind, KuratowskiWitness, PlaneEmbedding};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0}")]
    UnsupportedVersion(u32),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("bad label `{0}`")]
    BadLabel(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format_version: u32,
    #[serde(flatten)]
    pub body: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Decomposition(DecompositionJson),
    Kuratowski(KuratowskiJson),
    PcRefutation(PcRefutationJson),
    FlawWitness(FlawWitnessJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    /// Neighbors of each vertex in cyclic order.
    pub rotation: BTreeMap<String, Vec<String>>,
    /// A dart of the outer face.
    pub outer: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub base: GraphJson,
    pub v1: Vec<String>,
    pub v2: Vec<String>,
    pub emb1: EmbeddingJson,
    pub emb2: EmbeddingJson,
    pub order1: Vec<String>,
    pub order2: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub steps: Vec<StepJson>,
    /// Target vertex name to label bits.
    pub final_labeling: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub branch: Vec<String>,
    pub paths: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiJson {
    pub graph: GraphJson,
    pub witness: WitnessJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum RefutationJson {
    NotConnected { pair: Option<[String; 2]> },
    NotBipartite { odd_cycle: Vec<String> },
    LabelingFailure { dim: usize, labels: BTreeMap<String, String>, u: String, v: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcRefutationJson {
    pub graph: GraphJson,
    pub refutation: RefutationJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub embedding: EmbeddingJson,
    pub face: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlawWitnessJson {
    pub base: GraphJson,
    pub v1: Vec<String>,
    pub v2: Vec<String>,
    pub face1: FaceJson,
    pub face2: FaceJson,
    /// Subdivision inside the expansion, named by copies `x.1`, `x.2`.
    pub witness: WitnessJson,
}

impl CertificateFile {
    pub fn new(body: Certificate) -> Self {
        CertificateFile { format_version: FORMAT_VERSION, body }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CertError> {
        let file: CertificateFile = serde_json::from_str(text)?;
        if file.format_version != FORMAT_VERSION {
            return Err(CertError::UnsupportedVersion(file.format_version));
        }
        Ok(file)
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            Certificate::Decomposition(_) => "decomposition",
            Certificate::Kuratowski(_) => "kuratowski",
            Certificate::PcRefutation(_) => "pc-refutation",
            Certificate::FlawWitness(_) => "flaw-witness",
        }
    }
}

fn names(g: &Graph, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| g.name(v).to_string()).collect()
}

fn ids(g: &Graph, vs: &[String]) -> Result<Vec<VertexId>, CertError> {
    vs.iter().map(|v| g.find(v).ok_or_else(|| CertError::UnknownVertex(v.clone()))).collect()
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn bits_from_string(s: &str) -> Result<Vec<bool>, CertError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CertError::BadLabel(s.to_string())),
        })
        .collect()
}

pub fn graph_to_json(g: &Graph) -> GraphJson {
    GraphJson {
        vertices: g.vertices().map(|v| g.name(v).to_string()).collect(),
        edges: g.edge_names().map(|(u, v)| [u.to_string(), v.to_string()]).collect(),
    }
}

pub fn graph_from_json(j: &GraphJson) -> Result<Graph, CertError> {
    let edges: Vec<(String, String)> = j.edges.iter().map(|[u, v]| (u.clone(), v.clone())).collect();
    Ok(Graph::new(&j.vertices, &edges)?)
}

fn dart_to_json(g: &Graph, d: Dart) -> [String; 2] {
    [g.name(d.tail).to_string(), g.name(d.head).to_string()]
}

fn dart_from_json(g: &Graph, d: &[String; 2]) -> Result<Dart, CertError> {
    let v = ids(g, d)?;
    Ok(Dart::new(v[0], v[1]))
}

pub fn embedding_to_json(g: &Graph, emb: &PlaneEmbedding) -> EmbeddingJson {
    EmbeddingJson {
        rotation: g.vertices().map(|v| (g.name(v).to_string(), names(g, &emb.rotation[v.index()]))).collect(),
        outer: emb.outer.map(|d| dart_to_json(g, d)),
    }
}

pub fn embedding_from_json(g: &Graph, j: &EmbeddingJson) -> Result<PlaneEmbedding, CertError> {
    let mut rotation = vec![Vec::new(); g.vertex_count()];
    for (v, nbrs) in &j.rotation {
        let v = g.find(v).ok_or_else(|| CertError::UnknownVertex(v.clone()))?;
        rotation[v.index()] = ids(g, nbrs)?;
    }
    let outer = j.outer.as_ref().map(|d| dart_from_json(g, d)).transpose()?;
    Ok(PlaneEmbedding { rotation, outer })
}

fn spec_from_json(base: &GraphJson, v1: &[String], v2: &[String]) -> Result<ExpansionSpec, CertError> {
    let base = graph_from_json(base)?;
    let mut a = ids(&base, v1)?;
    let mut b = ids(&base, v2)?;
    a.sort_unstable();
    a.dedup();
    b.sort_unstable();
    b.dedup();
    Ok(ExpansionSpec { base, v1: a, v2: b })
}

pub fn step_to_json(c: &NonCrossingCertificate) -> StepJson {
    let base = &c.spec.base;
    StepJson {
        base: graph_to_json(base),
        v1: names(base, &c.spec.v1),
        v2: names(base, &c.spec.v2),
        emb1: embedding_to_json(&c.spec.side_graph(Side::One), &c.emb1),
        emb2: embedding_to_json(&c.spec.side_graph(Side::Two), &c.emb2),
        order1: names(base, &c.order1),
        order2: names(base, &c.order2),
    }
}

pub fn step_from_json(j: &StepJson) -> Result<NonCrossingCertificate, CertError> {
    let spec = spec_from_json(&j.base, &j.v1, &j.v2)?;
    let emb1 = embedding_from_json(&spec.side_graph(Side::One), &j.emb1)?;
    let emb2 = embedding_from_json(&spec.side_graph(Side::Two), &j.emb2)?;
    let order1 = ids(&spec.base, &j.order1)?;
    let order2 = ids(&spec.base, &j.order2)?;
    Ok(NonCrossingCertificate { spec, emb1, emb2, order1, order2 })
}

pub fn decomposition_to_json(c: &DecompositionCertificate) -> DecompositionJson {
    DecompositionJson {
        steps: c.steps.iter().map(step_to_json).collect(),
        final_labeling: c
            .names
            .iter()
            .zip(&c.final_labeling.labels)
            .map(|(n, bits)| (n.to_string(), bits_to_string(bits)))
            .collect(),
    }
}

pub fn decomposition_from_json(j: &DecompositionJson) -> Result<DecompositionCertificate, CertError> {
    let steps = j.steps.iter().map(step_from_json).collect::<Result<Vec<_>, _>>()?;
    let mut names: Vec<Arc<str>> = Vec::with_capacity(j.final_labeling.len());
    let mut labels = Vec::with_capacity(j.final_labeling.len());
    for (name, bits) in &j.final_labeling {
        names.push(name.as_str().into());
        labels.push(bits_from_string(bits)?);
    }
    let dim = labels.first().map_or(steps.len(), Vec::len);
    Ok(DecompositionCertificate { steps, final_labeling: HypercubeLabeling { dim, labels }, names })
}

pub fn witness_to_json(g: &Graph, w: &KuratowskiWitness) -> WitnessJson {
    WitnessJson {
        kind: match w.kind {
            KuratowskiKind::K5 => "K5",
            KuratowskiKind::K33 => "K33",
        }
        .to_string(),
        branch: names(g, &w.branch),
        paths: w.paths.iter().map(|p| names(g, p)).collect(),
    }
}

pub fn witness_from_json(g: &Graph, j: &WitnessJson) -> Result<KuratowskiWitness, CertError> {
    let kind = match j.kind.as_str() {
        "K5" => KuratowskiKind::K5,
        "K33" => KuratowskiKind::K33,
        other => return Err(CertError::BadLabel(other.to_string())),
    };
    Ok(KuratowskiWitness {
        kind,
        branch: ids(g, &j.branch)?,
        paths: j.paths.iter().map(|p| ids(g, p)).collect::<Result<_, _>>()?,
    })
}

pub fn refutation_to_json(g: &Graph, r: &PcRefutation) -> RefutationJson {
    match r {
        PcRefutation::NotConnected(pair) => {
            RefutationJson::NotConnected { pair: pair.map(|(u, v)| [g.name(u).to_string(), g.name(v).to_string()]) }
        }
        PcRefutation::NotBipartite(c) => RefutationJson::NotBipartite { odd_cycle: names(g, c) },
        PcRefutation::LabelingFailure { labeling, u, v } => RefutationJson::LabelingFailure {
            dim: labeling.dim,
            labels: g
                .vertices()
                .zip(&labeling.labels)
                .map(|(x, bits)| (g.name(x).to_string(), bits_to_string(bits)))
                .collect(),
            u: g.name(*u).to_string(),
            v: g.name(*v).to_string(),
        },
    }
}

pub fn refutation_from_json(g: &Graph, j: &RefutationJson) -> Result<PcRefutation, CertError> {
    Ok(match j {
        RefutationJson::NotConnected { pair } => PcRefutation::NotConnected(
            pair.as_ref()
                .map(|p| ids(g, p).map(|v| (v[0], v[1])))
                .transpose()?,
        ),
        RefutationJson::NotBipartite { odd_cycle } => PcRefutation::NotBipartite(ids(g, odd_cycle)?),
        RefutationJson::LabelingFailure { dim, labels, u, v } => {
            let mut by_vertex = vec![None; g.vertex_count()];
            for (name, bits) in labels {
                let x = g.find(name).ok_or_else(|| CertError::UnknownVertex(name.clone()))?;
                by_vertex[x.index()] = Some(bits_from_string(bits)?);
            }
            let labels = by_vertex
                .into_iter()
                .zip(g.vertices())
                .map(|(b, x)| b.ok_or_else(|| CertError::BadLabel(format!("missing label for `{}`", g.name(x)))))
                .collect::<Result<_, _>>()?;
            let u = g.find(u).ok_or_else(|| CertError::UnknownVertex(u.clone()))?;
            let v = g.find(v).ok_or_else(|| CertError::UnknownVertex(v.clone()))?;
            PcRefutation::LabelingFailure { labeling: HypercubeLabeling { dim: *dim, labels }, u, v }
        }
    })
}

fn face_to_json(g: &Graph, f: &FaceCertificate) -> FaceJson {
    FaceJson { embedding: embedding_to_json(g, &f.embedding), face: f.face.map(|d| dart_to_json(g, d)) }
}

fn face_from_json(g: &Graph, j: &FaceJson) -> Result<FaceCertificate, CertError> {
    Ok(FaceCertificate {
        embedding: embedding_from_json(g, &j.embedding)?,
        face: j.face.as_ref().map(|d| dart_from_json(g, d)).transpose()?,
    })
}

pub fn flaw_to_json(w: &FlawWitness) -> FlawWitnessJson {
    let base = &w.spec.base;
    let h = expand(&w.spec).expect("witness spec is valid");
    FlawWitnessJson {
        base: graph_to_json(base),
        v1: names(base, &w.spec.v1),
        v2: names(base, &w.spec.v2),
        face1: face_to_json(&w.spec.side_graph(Side::One), &w.face1),
        face2: face_to_json(&w.spec.side_graph(Side::Two), &w.face2),
        witness: witness_to_json(&h, &w.kuratowski),
    }
}

pub fn flaw_from_json(j: &FlawWitnessJson) -> Result<FlawWitness, CertError> {
    let spec = spec_from_json(&j.base, &j.v1, &j.v2)?;
    if let Err(e) = spec.validate() {
        return Err(CertError::BadLabel(e.to_string()));
    }
    let h = expand(&spec).map_err(|e| CertError::BadLabel(e.to_string()))?;
    Ok(FlawWitness {
        face1: face_from_json(&spec.side_graph(Side::One), &j.face1)?,
        face2: face_from_json(&spec.side_graph(Side::Two), &j.face2)?,
        kuratowski: witness_from_json(&h, &j.witness)?,
        spec,
    })
}

pub fn refutation_certificate(h: &Graph, r: &Refutation) -> CertificateFile {
    let graph = graph_to_json(h);
    CertificateFile::new(match r {
        Refutation::NotPartialCube(p) => {
            Certificate::PcRefutation(PcRefutationJson { refutation: refutation_to_json(h, p), graph })
        }
        Refutation::NotPlanar(w) => Certificate::Kuratowski(KuratowskiJson { witness: witness_to_json(h, w), graph }),
    })
}

/// Outcome of checking a certificate file with the in-memory verifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    /// The replayed graph, for decompositions.
    Valid(Option<Graph>),
    Invalid(String),
}

pub fn validate(file: &CertificateFile) -> Validation {
    let checked = match &file.body {
        Certificate::Decomposition(j) => {
            decomposition_from_json(j).map(|c| replay(&c).map(Some).map_err(|e| e.to_string()))
        }
        Certificate::Kuratowski(j) => graph_from_json(&j.graph).and_then(|g| {
            let w = witness_from_json(&g, &j.witness)?;
            Ok(if verify_kuratowski(&g, &w) { Ok(None) } else { Err("witness rejected".into()) })
        }),
        Certificate::PcRefutation(j) => graph_from_json(&j.graph).and_then(|g| {
            let r = refutation_from_json(&g, &j.refutation)?;
            Ok(if verify_refutation(&g, &r) { Ok(None) } else { Err("refutation rejected".into()) })
        }),
        Certificate::FlawWitness(j) => flaw_from_json(j)
            .map(|w| if verify_flaw_witness(&w) { Ok(None) } else { Err("flaw witness rejected".into()) }),
    };
    match checked {
        Ok(Ok(g)) => Validation::Valid(g),
        Ok(Err(reason)) => Validation::Invalid(reason),
        Err(e) => Validation::Invalid(e.to_string()),
    }
}
