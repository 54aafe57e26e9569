use std::collections::HashSet;

use crate::graph::{Graph, VertexId};

use super::dmp::{blocks, embed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 inside a host graph.
///
/// For `K33` the first three branch vertices form one side. Every path runs
/// between two branch vertices and lists both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch: Vec<VertexId>,
    pub paths: Vec<Vec<VertexId>>,
}

impl KuratowskiWitness {
    fn required_pairs(&self) -> Vec<(usize, usize)> {
        match self.kind {
            KuratowskiKind::K5 => (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect(),
            KuratowskiKind::K33 => (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect(),
        }
    }

    /// Vertices of the subdivision.
    pub fn vertex_set(&self) -> HashSet<VertexId> {
        self.paths.iter().flatten().copied().collect()
    }
}

pub fn verify_kuratowski(g: &Graph, w: &KuratowskiWitness) -> bool {
    let n = g.vertex_count();
    let want = match w.kind {
        KuratowskiKind::K5 => 5,
        KuratowskiKind::K33 => 6,
    };
    if w.branch.len() != want {
        return false;
    }
    let mut branch_pos = vec![usize::MAX; n];
    for (i, &b) in w.branch.iter().enumerate() {
        if b.index() >= n || branch_pos[b.index()] != usize::MAX {
            return false;
        }
        branch_pos[b.index()] = i;
    }
    let mut pending: HashSet<(usize, usize)> = w.required_pairs().into_iter().collect();
    if w.paths.len() != pending.len() {
        return false;
    }
    let mut used = vec![false; n];
    for path in &w.paths {
        if path.len() < 2 || path.iter().any(|v| v.index() >= n) {
            return false;
        }
        let (a, b) = (branch_pos[path[0].index()], branch_pos[path[path.len() - 1].index()]);
        if a == usize::MAX || b == usize::MAX || !pending.remove(&(a.min(b), a.max(b))) {
            return false;
        }
        if !path.windows(2).all(|e| g.has_edge(e[0], e[1])) {
            return false;
        }
        for v in &path[1..path.len() - 1] {
            if branch_pos[v.index()] != usize::MAX || std::mem::replace(&mut used[v.index()], true) {
                return false;
            }
        }
    }
    pending.is_empty()
}

pub(crate) fn adjacency_of(g: &Graph) -> Vec<Vec<usize>> {
    g.vertices().map(|v| g.neighbors(v).iter().map(|w| w.index()).collect()).collect()
}

fn adjacency_from(n: usize, edges: &[(usize, usize)], active: &[bool]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (&(u, v), _) in edges.iter().zip(active).filter(|(_, &a)| a) {
        adj[u].push(v);
        adj[v].push(u);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    adj
}

/// A Kuratowski subdivision in `g`, or `None` when `g` is planar.
///
/// Restricts to a non-planar block, then deletes every edge whose removal
/// keeps the graph non-planar. What is left is an edge-minimal non-planar
/// graph, which is a subdivision of K5 or K3,3.
pub(crate) fn extract(g: &Graph) -> Option<KuratowskiWitness> {
    let n = g.vertex_count();
    let adj = adjacency_of(g);
    if embed(&adj).is_some() {
        return None;
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for block in blocks(&adj) {
        if embed(&adjacency_from(n, &block, &vec![true; block.len()])).is_none() {
            edges = block;
            break;
        }
    }
    let mut active = vec![true; edges.len()];
    for i in 0..edges.len() {
        active[i] = false;
        if embed(&adjacency_from(n, &edges, &active)).is_some() {
            active[i] = true;
        }
    }
    let adj = adjacency_from(n, &edges, &active);
    Some(classify(&adj).expect("edge-minimal non-planar graphs are Kuratowski subdivisions"))
}

fn classify(adj: &[Vec<usize>]) -> Option<KuratowskiWitness> {
    let branch: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() >= 3).collect();
    let kind = match (branch.len(), adj[branch[0]].len()) {
        (5, 4) => KuratowskiKind::K5,
        (6, 3) => KuratowskiKind::K33,
        _ => return None,
    };
    let is_branch = |v: usize| adj[v].len() >= 3;
    let mut paths = Vec::new();
    for &b in &branch {
        for &first in &adj[b] {
            let mut path = vec![b, first];
            let (mut prev, mut cur) = (b, first);
            while !is_branch(cur) {
                let next = *adj[cur].iter().find(|&&x| x != prev)?;
                path.push(next);
                prev = cur;
                cur = next;
            }
            if b < cur {
                paths.push(path);
            }
        }
    }
    let mut order: Vec<usize> = branch.clone();
    if kind == KuratowskiKind::K33 {
        // two-color the branch vertices through the paths
        let mut side = vec![None; adj.len()];
        side[branch[0]] = Some(false);
        for _ in 0..2 {
            for p in &paths {
                let (a, b) = (p[0], p[p.len() - 1]);
                if let Some(s) = side[a] {
                    side[b] = Some(!s);
                } else if let Some(s) = side[b] {
                    side[a] = Some(!s);
                }
            }
        }
        order.sort_by_key(|&v| (side[v], v));
    }
    let pos = |v: usize| order.iter().position(|&x| x == v).expect("branch vertex");
    let mut paths: Vec<Vec<VertexId>> = paths
        .into_iter()
        .map(|p| {
            let p = if pos(p[0]) < pos(p[p.len() - 1]) { p } else { p.into_iter().rev().collect() };
            p.into_iter().map(VertexId::from_index).collect()
        })
        .collect();
    paths.sort_by_key(|p| (pos(p[0].index()), pos(p[p.len() - 1].index())));
    Some(KuratowskiWitness { kind, branch: order.into_iter().map(VertexId::from_index).collect(), paths })
}
