#![allow(dead_code)]

use tmfg::synth::{generate, Family, MatrixSpec};
use tmfg::{Edge, FilterResult, WeightOracle};

pub const FAMILIES: [&str; 6] = [
    "uniform",
    "beta(3,0.5)",
    "beta(0.5,3)",
    "pareto(1)",
    "pareto(2)",
    "factor(20,200)",
];

pub fn family(i: usize) -> Family {
    Family::parse(FAMILIES[i % FAMILIES.len()]).unwrap()
}

pub fn matrix(family_index: usize, p: usize, seed: u64) -> WeightOracle {
    generate(&MatrixSpec::new(family(family_index), p, seed)).unwrap()
}

pub fn uniform(p: usize, seed: u64) -> WeightOracle {
    matrix(0, p, seed)
}

pub fn edges_of(r: &FilterResult) -> Vec<Edge> {
    r.edges.iter().map(|e| Edge::new(e.i, e.j)).collect()
}

/// Sum of weights over an edge list, accumulated in the order given.
pub fn weight_of(edges: impl IntoIterator<Item = Edge>, w: &WeightOracle) -> f64 {
    edges.into_iter().map(|e| w.weight(e.low(), e.high())).sum()
}
