//! Planar partial cubes: Θ-classes, expansions and contractions, certified
//! planarity, and decomposition into non-crossing 2-face expansions.

pub mod graph;
pub mod partial_cube;
pub mod ops;
pub mod expansion;
pub mod decomposer;
pub mod planarity;
pub mod generators;
pub mod cli;
