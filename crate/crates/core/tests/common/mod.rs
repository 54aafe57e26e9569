#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use pcube::generators::*;
use pcube::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;

type Edges = BTreeSet<(usize, usize)>;

fn norm(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn degrees(edges: &Edges) -> std::collections::HashMap<usize, usize> {
    let mut d = std::collections::HashMap::new();
    for &(a, b) in edges {
        *d.entry(a).or_insert(0) += 1;
        *d.entry(b).or_insert(0) += 1;
    }
    d
}

/// Drops vertices of degree at most one and smooths degree-two vertices
/// until neither applies. Containment of a subdivision of a graph with
/// minimum degree three is unchanged.
fn reduce(mut edges: Edges) -> Edges {
    loop {
        let deg = degrees(&edges);
        let Some((&v, &d)) = deg.iter().filter(|(_, &d)| d <= 2).min() else { return edges };
        let incident: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| a == v || b == v).collect();
        for e in &incident {
            edges.remove(e);
        }
        if d == 2 {
            let other = |(a, b): (usize, usize)| if a == v { b } else { a };
            let (x, y) = (other(incident[0]), other(incident[1]));
            edges.insert(norm(x, y));
        }
    }
}

fn is_k5_or_k33(edges: &Edges) -> bool {
    let deg = degrees(edges);
    if deg.len() == 5 && edges.len() == 10 {
        return true;
    }
    if deg.len() != 6 || edges.len() != 9 || deg.values().any(|&d| d != 3) {
        return false;
    }
    // 3-regular on 6 vertices with 9 edges: K3,3 iff bipartite
    let vs: Vec<usize> = deg.keys().copied().collect();
    let mut color = std::collections::HashMap::new();
    color.insert(vs[0], false);
    let mut stack = vec![vs[0]];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == u { b } else if b == u { a } else { continue };
            match color.get(&w) {
                Some(&c) if c == color[&u] => return false,
                Some(_) => {}
                None => {
                    color.insert(w, !color[&u]);
                    stack.push(w);
                }
            }
        }
    }
    true
}

fn search(edges: Edges, failed: &mut HashSet<Edges>) -> bool {
    let edges = reduce(edges);
    if is_k5_or_k33(&edges) {
        return true;
    }
    if edges.len() < 9 || failed.contains(&edges) {
        return false;
    }
    for &e in &edges {
        let mut smaller = edges.clone();
        smaller.remove(&e);
        if search(smaller, failed) {
            return true;
        }
    }
    failed.insert(edges);
    false
}

/// Whether `g` contains a subdivision of K5 or K3,3, by exhaustive edge
/// deletion and smoothing.
pub fn has_kuratowski_subdivision(g: &Graph) -> bool {
    let edges: Edges = g.edges().iter().map(|&(u, v)| norm(u.index(), v.index())).collect();
    search(edges, &mut HashSet::new())
}

pub fn random_connected_graph(rng: &mut Pcg32, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for v in 1..n {
        edges.insert((rng.gen_range(0..v), v));
    }
    let p: f64 = rng.gen_range(0.1..0.9);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    let pairs: Vec<(String, String)> = edges.iter().map(|&(a, b)| (names[a].clone(), names[b].clone())).collect();
    Graph::new(&names, &pairs).unwrap()
}

pub fn rng(seed: u64) -> Pcg32 {
    Pcg32::seed_from_u64(seed)
}

/// Named generator graphs with at most `max_n` vertices.
pub fn named_graphs(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut push = |name: String, g: Graph| {
        if g.vertex_count() <= max_n {
            out.push((name, g));
        }
    };
    for d in 0..=4 {
        push(format!("Q{d}"), hypercube(d));
    }
    for n in 3..=max_n {
        push(format!("C{n}"), cycle(n));
    }
    for n in 1..=max_n {
        push(format!("P{n}"), path(n).unwrap());
        push(format!("K{n}"), complete(n));
        push(format!("T{n}"), random_tree(n, n as u64).unwrap());
    }
    for n in 3..=max_n {
        if let Ok(g) = gear(n) {
            push(format!("gear{n}"), g);
        }
        if let Ok(g) = gear_obstruction(n) {
            push(format!("gear{n}xK2"), g);
        }
    }
    for a in 1..=max_n {
        for b in a..=max_n {
            if a * b <= max_n {
                if let Ok(g) = grid(a, b) {
                    push(format!("grid{a}x{b}"), g);
                }
            }
            if a + b <= max_n {
                push(format!("K{a},{b}"), complete_bipartite(a, b));
            }
        }
    }
    out
}

/// Samples of criterion-one shape: steps cycle through 1..=8.
pub fn planar_pc_samples(count: u64) -> Vec<Graph> {
    (0..count).map(|i| random_planar_partial_cube(1 + (i % 8) as usize, i).unwrap()).collect()
}
