//! Named graph families and seeded random partial cubes.
//!
//! Random generation uses `rand_pcg::Pcg32` (PCG XSH RR 64/32: 64-bit state,
//! 32-bit output) seeded with `SeedableRng::seed_from_u64`, so a seed gives
//! the same graph on every platform.
//!
//! Sampled expansions are not uniform over anything; they only aim at a
//! varied stock of test graphs.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;
use thiserror::Error;

use crate::graph::{cartesian_product, isometry_violation, DistanceMatrix, Graph, Provenance, VertexId};
use crate::ops::{expand, ExpansionSpec};
use crate::planarity::is_planar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("cycle length must be even and at least 4, got {0}")]
    OddCycleRequested(usize),
    #[error("parameter {name} must be at least {min}, got {got}")]
    ParameterTooSmall { name: &'static str, min: usize, got: usize },
    #[error("no admissible expansion found at step {step} after {tries} tries")]
    SamplingExhausted { step: usize, tries: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` takes {expected} parameter(s)")]
    WrongArity { family: String, expected: usize },
}

const RETRIES_PER_STEP: usize = 200;

fn padded(prefix: &str, i: usize, n: usize) -> String {
    let width = n.saturating_sub(1).to_string().len();
    format!("{prefix}{i:0width$}")
}

fn from_index_edges(names: Vec<String>, edges: &[(usize, usize)]) -> Graph {
    let vertices = names.into_iter().map(|n| (Arc::<str>::from(n), Provenance::Original)).collect();
    Graph::from_parts(vertices, edges.to_vec()).expect("generated names are distinct")
}

/// `Q_d` with vertices named by their coordinates; `Q_0` is the single vertex `e`.
pub fn hypercube(d: usize) -> Graph {
    if d == 0 {
        return Graph::single_vertex("e");
    }
    let n = 1usize << d;
    let names = (0..n).map(|x| format!("{x:0d$b}")).collect();
    let mut edges = Vec::new();
    for x in 0..n {
        for bit in 0..d {
            let y = x ^ (1 << bit);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    from_index_edges(names, &edges)
}

pub fn even_cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 4 || n % 2 == 1 {
        return Err(GeneratorError::OddCycleRequested(n));
    }
    Ok(cycle(n))
}

/// Any cycle `C_n`, `n >= 3`; odd cycles are handy as non-examples.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need three vertices");
    let names = (0..n).map(|i| padded("c", i, n)).collect();
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_index_edges(names, &edges)
}

/// Path on `n >= 1` vertices.
pub fn path(n: usize) -> Result<Graph, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::ParameterTooSmall { name: "n", min: 1, got: n });
    }
    let names = (0..n).map(|i| padded("p", i, n)).collect();
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(from_index_edges(names, &edges))
}

/// Gear graph: hub `h` joined to every other vertex of a rim cycle of
/// length `2n`.
pub fn gear(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::ParameterTooSmall { name: "n", min: 3, got: n });
    }
    let rim = 2 * n;
    let mut names = vec!["h".to_string()];
    names.extend((0..rim).map(|i| padded("r", i, rim)));
    let mut edges: Vec<_> = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)).collect();
    edges.extend((0..rim).step_by(2).map(|i| (0, 1 + i)));
    Ok(from_index_edges(names, &edges))
}

/// `gear(n) □ K2`.
pub fn gear_obstruction(n: usize) -> Result<Graph, GeneratorError> {
    Ok(cartesian_product(&gear(n)?, &path(2)?))
}

/// `P_a □ P_b`.
pub fn grid(a: usize, b: usize) -> Result<Graph, GeneratorError> {
    Ok(cartesian_product(&path(a)?, &path(b)?))
}

pub fn complete(n: usize) -> Graph {
    let names = (0..n).map(|i| padded("k", i, n)).collect();
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    from_index_edges(names, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut names: Vec<String> = (0..a).map(|i| padded("a", i, a)).collect();
    names.extend((0..b).map(|i| padded("b", i, b)));
    let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    from_index_edges(names, &edges)
}

/// Random labeled tree on `n >= 1` vertices (random attachment order).
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::ParameterTooSmall { name: "n", min: 1, got: n });
    }
    let mut rng = Pcg32::seed_from_u64(seed);
    let names = (0..n).map(|i| padded("t", i, n)).collect();
    let edges: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Ok(from_index_edges(names, &edges))
}

/// Random partial cube built from `K1` by `steps` expansions.
pub fn random_partial_cube(steps: usize, seed: u64) -> Result<Graph, GeneratorError> {
    grow(steps, seed, false)
}

/// Like [`random_partial_cube`], but every expansion keeps the graph planar.
pub fn random_planar_partial_cube(steps: usize, seed: u64) -> Result<Graph, GeneratorError> {
    grow(steps, seed, true)
}

// Vertex names record the side taken at each step: `v` then one digit per
// expansion (0 for side one, 1 for side two).
fn grow(steps: usize, seed: u64, planar: bool) -> Result<Graph, GeneratorError> {
    let mut rng = Pcg32::seed_from_u64(seed);
    let mut g = Graph::single_vertex("v");
    for step in 0..steps {
        let mut next = None;
        for _ in 0..RETRIES_PER_STEP {
            let Some(spec) = sample_spec(&g, &mut rng) else { continue };
            let h = expand(&spec).expect("sampled specs are valid");
            if !planar || is_planar(&h) {
                next = Some(h);
                break;
            }
        }
        let h = next.ok_or(GeneratorError::SamplingExhausted { step, tries: RETRIES_PER_STEP })?;
        g = h
            .renamed(|v| {
                let name = h.name(v);
                let (stem, side) = name.rsplit_once('.').expect("copy name");
                Arc::from(format!("{stem}{}", if side == "1" { '0' } else { '1' }))
            })
            .expect("side digits keep names distinct");
    }
    Ok(strip_provenance(&g))
}

fn strip_provenance(g: &Graph) -> Graph {
    let vertices = g.vertices().map(|v| (g.name_arc(v).clone(), Provenance::Original)).collect();
    Graph::from_parts(vertices, g.edges().iter().map(|&(u, v)| (u.index(), v.index())).collect())
        .expect("same names")
}

/// Grows a connected `v1`, drops a random part of it from `v2`, repairs the
/// edge cover, and closes either side under shortest paths if it is not
/// isometric. Returns `None` when the attempt fails.
fn sample_spec(g: &Graph, rng: &mut Pcg32) -> Option<ExpansionSpec> {
    let n = g.vertex_count();
    let target = rng.gen_range(1..=n);
    let start = VertexId::from_index(rng.gen_range(0..n));
    let mut in1 = vec![false; n];
    in1[start.index()] = true;
    let mut frontier: Vec<VertexId> = g.neighbors(start).to_vec();
    let mut size = 1;
    while size < target && !frontier.is_empty() {
        let k = rng.gen_range(0..frontier.len());
        let v = frontier.swap_remove(k);
        if in1[v.index()] {
            continue;
        }
        in1[v.index()] = true;
        size += 1;
        frontier.extend(g.neighbors(v).iter().filter(|w| !in1[w.index()]));
    }
    let d = crate::graph::all_pairs_distances(g);
    if isometry_violation(g, &members(&in1)).ok()?.is_some() {
        in1 = convex_hull(g, &d, in1);
    }
    // vertices of v1 that may be left out of v2
    let mut in2: Vec<bool> = in1.iter().map(|&b| !b).collect();
    let mut inside: Vec<VertexId> = members(&in1);
    inside.shuffle(rng);
    let keep = rng.gen_range(1..=inside.len());
    for &v in &inside[..keep] {
        in2[v.index()] = true;
    }
    // an edge leaving v1 needs both ends in v2
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in g.edges() {
            if !(in1[u.index()] && in1[v.index()]) && !(in2[u.index()] && in2[v.index()]) {
                in2[u.index()] = true;
                in2[v.index()] = true;
                changed = true;
            }
        }
    }
    if isometry_violation(g, &members(&in2)).ok()?.is_some() {
        in2 = convex_hull(g, &d, in2);
    }
    ExpansionSpec::new(g.clone(), members(&in1), members(&in2)).ok()
}

fn members(mask: &[bool]) -> Vec<VertexId> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| VertexId::from_index(i)).collect()
}

// Smallest superset closed under taking shortest-path intervals.
fn convex_hull(g: &Graph, d: &DistanceMatrix, mut mask: Vec<bool>) -> Vec<bool> {
    loop {
        let set = members(&mask);
        let mut grew = false;
        for &a in &set {
            for &b in &set {
                if a >= b {
                    continue;
                }
                let Some(dab) = d.get(a, b) else { continue };
                for x in g.vertices() {
                    if !mask[x.index()] && d.get(a, x).zip(d.get(x, b)).is_some_and(|(p, q)| p + q == dab) {
                        mask[x.index()] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return mask;
        }
    }
}

/// A family name with its integer parameters, as accepted by `generate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Hypercube(usize),
    EvenCycle(usize),
    Cycle(usize),
    Path(usize),
    Gear(usize),
    GearObstruction(usize),
    Grid(usize, usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    RandomTree { n: usize, seed: u64 },
    RandomPartialCube { steps: usize, seed: u64 },
    RandomPlanarPartialCube { steps: usize, seed: u64 },
}

impl GeneratorSpec {
    pub fn parse(family: &str, params: &[u64]) -> Result<Self, GeneratorError> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(GeneratorError::WrongArity { family: family.to_string(), expected: k })
            }
        };
        let p = |i: usize| params[i] as usize;
        Ok(match family {
            "hypercube" => arity(1).map(|_| GeneratorSpec::Hypercube(p(0)))?,
            "even-cycle" => arity(1).map(|_| GeneratorSpec::EvenCycle(p(0)))?,
            "cycle" => arity(1).map(|_| GeneratorSpec::Cycle(p(0)))?,
            "path" => arity(1).map(|_| GeneratorSpec::Path(p(0)))?,
            "gear" => arity(1).map(|_| GeneratorSpec::Gear(p(0)))?,
            "gear-obstruction" => arity(1).map(|_| GeneratorSpec::GearObstruction(p(0)))?,
            "grid" => arity(2).map(|_| GeneratorSpec::Grid(p(0), p(1)))?,
            "complete" => arity(1).map(|_| GeneratorSpec::Complete(p(0)))?,
            "complete-bipartite" => arity(2).map(|_| GeneratorSpec::CompleteBipartite(p(0), p(1)))?,
            "random-tree" => arity(2).map(|_| GeneratorSpec::RandomTree { n: p(0), seed: params[1] })?,
            "random-pc" => arity(2).map(|_| GeneratorSpec::RandomPartialCube { steps: p(0), seed: params[1] })?,
            "random-planar-pc" => {
                arity(2).map(|_| GeneratorSpec::RandomPlanarPartialCube { steps: p(0), seed: params[1] })?
            }
            other => return Err(GeneratorError::UnknownFamily(other.to_string())),
        })
    }

    pub fn build(&self) -> Result<Graph, GeneratorError> {
        match *self {
            GeneratorSpec::Hypercube(d) => Ok(hypercube(d)),
            GeneratorSpec::EvenCycle(n) => even_cycle(n),
            GeneratorSpec::Cycle(n) => {
                if n < 3 {
                    Err(GeneratorError::ParameterTooSmall { name: "n", min: 3, got: n })
                } else {
                    Ok(cycle(n))
                }
            }
            GeneratorSpec::Path(n) => path(n),
            GeneratorSpec::Gear(n) => gear(n),
            GeneratorSpec::GearObstruction(n) => gear_obstruction(n),
            GeneratorSpec::Grid(a, b) => grid(a, b),
            GeneratorSpec::Complete(n) => Ok(complete(n)),
            GeneratorSpec::CompleteBipartite(a, b) => Ok(complete_bipartite(a, b)),
            GeneratorSpec::RandomTree { n, seed } => random_tree(n, seed),
            GeneratorSpec::RandomPartialCube { steps, seed } => random_partial_cube(steps, seed),
            GeneratorSpec::RandomPlanarPartialCube { steps, seed } => random_planar_partial_cube(steps, seed),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Hypercube(d) => write!(f, "hypercube-{d}"),
            GeneratorSpec::EvenCycle(n) => write!(f, "even-cycle-{n}"),
            GeneratorSpec::Cycle(n) => write!(f, "cycle-{n}"),
            GeneratorSpec::Path(n) => write!(f, "path-{n}"),
            GeneratorSpec::Gear(n) => write!(f, "gear-{n}"),
            GeneratorSpec::GearObstruction(n) => write!(f, "gear-obstruction-{n}"),
            GeneratorSpec::Grid(a, b) => write!(f, "grid-{a}x{b}"),
            GeneratorSpec::Complete(n) => write!(f, "complete-{n}"),
            GeneratorSpec::CompleteBipartite(a, b) => write!(f, "complete-bipartite-{a}-{b}"),
            GeneratorSpec::RandomTree { n, seed } => write!(f, "random-tree-{n}-s{seed}"),
            GeneratorSpec::RandomPartialCube { steps, seed } => write!(f, "random-pc-{steps}-s{seed}"),
            GeneratorSpec::RandomPlanarPartialCube { steps, seed } => write!(f, "random-planar-pc-{steps}-s{seed}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = GeneratorError;

    /// `family:p1,p2`, e.g. `gear-obstruction:3` or `random-pc:5,42`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let params: Vec<u64> = rest
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.trim().parse().map_err(|_| GeneratorError::UnknownFamily(s.to_string())))
            .collect::<Result<_, _>>()?;
        GeneratorSpec::parse(family, &params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_cube::{recognize, theta_classes};

    #[test]
    fn hypercube_sizes() {
        let q0 = hypercube(0);
        assert_eq!((q0.vertex_count(), q0.edge_count()), (1, 0));
        let q3 = hypercube(3);
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        let q4 = hypercube(4);
        assert_eq!((q4.vertex_count(), q4.edge_count()), (16, 32));
        assert!(!is_planar(&q4));
    }

    #[test]
    fn cycles_and_paths() {
        let c4 = even_cycle(4).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert_eq!(theta_classes(&c4).unwrap().len(), 2);
        let p2 = path(2).unwrap();
        assert_eq!((p2.vertex_count(), p2.edge_count()), (2, 1));
        assert_eq!(even_cycle(5).unwrap_err(), GeneratorError::OddCycleRequested(5));
        assert!(path(0).is_err());
    }

    #[test]
    fn gear_counts() {
        let g3 = gear(3).unwrap();
        assert_eq!((g3.vertex_count(), g3.edge_count()), (7, 9));
        let g4 = gear(4).unwrap();
        assert_eq!((g4.vertex_count(), g4.edge_count()), (9, 12));
        assert!(matches!(gear(2), Err(GeneratorError::ParameterTooSmall { .. })));
        let ob = gear_obstruction(3).unwrap();
        assert_eq!((ob.vertex_count(), ob.edge_count()), (14, 25));
        for n in 3..=6 {
            let ob = gear_obstruction(n).unwrap();
            assert_eq!((ob.vertex_count(), ob.edge_count()), (2 * (2 * n + 1), 8 * n + 1));
        }
    }

    #[test]
    fn random_partial_cubes_have_step_many_classes() {
        assert_eq!(random_partial_cube(0, 1).unwrap().vertex_count(), 1);
        let k2 = random_partial_cube(1, 1).unwrap();
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));
        for seed in 0..30 {
            for steps in 0..7 {
                let g = random_partial_cube(steps, seed).unwrap();
                let pc = recognize(&g).expect("partial cube");
                assert_eq!(pc.partition.len(), steps, "seed {seed} steps {steps}");
            }
        }
    }

    #[test]
    fn random_planar_partial_cubes_are_planar() {
        for seed in 0..30 {
            let g = random_planar_partial_cube(6, seed).unwrap();
            assert!(is_planar(&g));
            assert_eq!(recognize(&g).unwrap().partition.len(), 6);
        }
    }

    #[test]
    fn two_step_planar_samples() {
        // only P3 and C4 have two Θ-classes
        for seed in 0..40 {
            let g = random_planar_partial_cube(2, seed).unwrap();
            let shape = (g.vertex_count(), g.edge_count());
            assert!(shape == (3, 2) || shape == (4, 4), "{shape:?}");
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_partial_cube(6, 99).unwrap();
        let b = random_partial_cube(6, 99).unwrap();
        assert!(a.labeled_eq(&b));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("gear-obstruction:3".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::GearObstruction(3));
        assert_eq!(
            "random-pc:5,42".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::RandomPartialCube { steps: 5, seed: 42 }
        );
        assert!("nope:1".parse::<GeneratorSpec>().is_err());
        assert!("grid:3".parse::<GeneratorSpec>().is_err());
    }
}
