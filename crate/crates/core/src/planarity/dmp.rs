//! Path-addition embedding (Demoucron, Malgrange and Pertuiset) applied to
//! each biconnected block; block rotations are concatenated at cut vertices.

use std::collections::VecDeque;

/// Rotation system of a plane embedding, or `None` if the graph is not planar.
/// `adj` holds symmetric neighbor lists without loops or repeats.
pub(crate) fn embed(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut rotation = vec![Vec::new(); n];
    for block in blocks(adj) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        let mut local: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        local.sort_unstable();
        local.dedup();
        let k = local.len();
        if block.len() > 3 * k - 6 {
            return None;
        }
        let pos = |x: usize| local.binary_search(&x).expect("block vertex");
        let mut ladj = vec![Vec::new(); k];
        for &(u, v) in &block {
            ladj[pos(u)].push(pos(v));
            ladj[pos(v)].push(pos(u));
        }
        for l in &mut ladj {
            l.sort_unstable();
        }
        let rot = embed_biconnected(&ladj)?;
        for (i, r) in rot.into_iter().enumerate() {
            rotation[local[i]].extend(r.into_iter().map(|j| local[j]));
        }
    }
    Some(rotation)
}

/// Edge sets of the biconnected components (Hopcroft–Tarjan).
pub(crate) fn blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    // explicit DFS frames: (vertex, parent, next neighbor index)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut frames = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = frames.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let w = adj[v][top.2];
                top.2 += 1;
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

struct FaceSet {
    faces: Vec<Vec<usize>>,
    // membership bitsets, one per face
    member: Vec<Vec<u64>>,
    words: usize,
}

impl FaceSet {
    fn new(n: usize) -> Self {
        FaceSet { faces: Vec::new(), member: Vec::new(), words: n.div_ceil(64) }
    }

    fn push(&mut self, face: Vec<usize>) {
        let mut bits = vec![0u64; self.words];
        for &v in &face {
            bits[v / 64] |= 1 << (v % 64);
        }
        self.faces.push(face);
        self.member.push(bits);
    }

    fn replace(&mut self, i: usize, face: Vec<usize>) {
        let mut bits = vec![0u64; self.words];
        for &v in &face {
            bits[v / 64] |= 1 << (v % 64);
        }
        self.faces[i] = face;
        self.member[i] = bits;
    }

    fn contains_all(&self, i: usize, vs: &[usize]) -> bool {
        vs.iter().all(|&v| self.member[i][v / 64] >> (v % 64) & 1 == 1)
    }
}

struct Fragment {
    attachments: Vec<usize>,
    // interior vertices (empty for a single chord)
    interior: Vec<usize>,
}

/// Embedding of a biconnected graph with at least three vertices.
fn embed_biconnected(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let mut in_h = vec![false; n];
    let mut edge_in_h: Vec<Vec<bool>> = adj.iter().map(|l| vec![false; l.len()]).collect();
    let slot = |u: usize, v: usize| adj[u].binary_search(&v).expect("edge");
    let mark = |u: usize, v: usize, edge_in_h: &mut Vec<Vec<bool>>| {
        edge_in_h[u][slot(u, v)] = true;
        edge_in_h[v][slot(v, u)] = true;
    };

    let cycle = initial_cycle(adj);
    let mut faces = FaceSet::new(n);
    for i in 0..cycle.len() {
        in_h[cycle[i]] = true;
        mark(cycle[i], cycle[(i + 1) % cycle.len()], &mut edge_in_h);
    }
    let mut embedded = cycle.len();
    let mut rev = cycle.clone();
    rev.reverse();
    faces.push(cycle);
    faces.push(rev);

    while embedded < m {
        let fragments = fragments(adj, &in_h, &edge_in_h);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.faces.len()).filter(|&i| faces.contains_all(i, &frag.attachments)).collect();
            match admissible.len() {
                0 => return None,
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
        let (fi, face) = choice.expect("some edge is still unembedded");
        let path = fragment_path(adj, &fragments[fi], &in_h);
        for w in path.windows(2) {
            mark(w[0], w[1], &mut edge_in_h);
        }
        for &v in &path {
            in_h[v] = true;
        }
        embedded += path.len() - 1;
        split_face(&mut faces, face, &path);
    }
    Some(rotation_from_faces(n, &faces.faces))
}

// Edge (0, w) closed by a shortest path from w back to 0 avoiding that edge.
fn initial_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let w = adj[0][0];
    let mut parent = vec![usize::MAX; adj.len()];
    parent[w] = w;
    let mut queue = VecDeque::from([w]);
    while let Some(u) = queue.pop_front() {
        if u == 0 {
            break;
        }
        for &x in &adj[u] {
            if parent[x] == usize::MAX && !(u == w && x == 0) {
                parent[x] = u;
                queue.push_back(x);
            }
        }
    }
    let mut cycle = vec![0];
    let mut cur = parent[0];
    while cur != w {
        cycle.push(cur);
        cur = parent[cur];
    }
    cycle.push(w);
    cycle
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], edge_in_h: &[Vec<bool>]) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !in_h[u] {
            continue;
        }
        for (i, &v) in adj[u].iter().enumerate() {
            if u < v && in_h[v] && !edge_in_h[u][i] {
                out.push(Fragment { attachments: vec![u, v], interior: Vec::new() });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut interior = vec![s];
        let mut attachments = Vec::new();
        let mut i = 0;
        while i < interior.len() {
            let u = interior[i];
            i += 1;
            for &w in &adj[u] {
                if in_h[w] {
                    attachments.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    interior.push(w);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment { attachments, interior });
    }
    out
}

// A path between two distinct attachments through the fragment interior.
fn fragment_path(adj: &[Vec<usize>], frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    if frag.interior.is_empty() {
        return frag.attachments.clone();
    }
    let a = frag.attachments[0];
    let n = adj.len();
    let mut inside = vec![false; n];
    for &v in &frag.interior {
        inside[v] = true;
    }
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &x in &adj[a] {
        if inside[x] {
            parent[x] = a;
            queue.push_back(x);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &x in &adj[u] {
            if in_h[x] && x != a {
                let mut path = vec![x, u];
                let mut cur = u;
                while parent[cur] != a {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if inside[x] && parent[x] == usize::MAX {
                parent[x] = u;
                queue.push_back(x);
            }
        }
    }
    unreachable!("fragments of a biconnected graph have two attachments")
}

fn split_face(faces: &mut FaceSet, fi: usize, path: &[usize]) {
    let face = faces.faces[fi].clone();
    let len = face.len();
    let (a, b) = (path[0], path[path.len() - 1]);
    let i = face.iter().position(|&x| x == a).expect("attachment on face");
    let j = face.iter().position(|&x| x == b).expect("attachment on face");
    let interior = &path[1..path.len() - 1];
    // a .. b along the face, then back to a through the path
    let mut first = Vec::new();
    let mut k = i;
    while k != j {
        first.push(face[k]);
        k = (k + 1) % len;
    }
    first.push(b);
    first.extend(interior.iter().rev());
    // b .. a along the face, then forward through the path
    let mut second = Vec::new();
    let mut k = j;
    while k != i {
        second.push(face[k]);
        k = (k + 1) % len;
    }
    second.push(a);
    second.extend(interior.iter());
    faces.replace(fi, first);
    faces.push(second);
}

fn rotation_from_faces(n: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in faces {
        let len = f.len();
        for i in 0..len {
            let (u, v, w) = (f[(i + len - 1) % len], f[i], f[(i + 1) % len]);
            succ[v].push((u, w));
        }
    }
    succ.into_iter()
        .map(|mut pairs| {
            pairs.sort_unstable();
            let mut rot = Vec::with_capacity(pairs.len());
            let Some(&(start, _)) = pairs.first() else { return rot };
            let mut cur = start;
            loop {
                rot.push(cur);
                let k = pairs.binary_search_by_key(&cur, |p| p.0).expect("successor defined");
                cur = pairs[k].1;
                if cur == start {
                    break;
                }
            }
            debug_assert_eq!(rot.len(), pairs.len());
            rot
        })
        .collect()
}
