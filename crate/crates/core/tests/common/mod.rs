#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratiocut::{InputGraph, NodeSubset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with integer weights in `1..=max_w`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_w: i64) -> InputGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v, rng.random_range(1..=max_w)));
            }
        }
    }
    InputGraph::from_edges(n, edges).unwrap()
}

/// A random graph with at least one edge, random size, density and weights,
/// and node weights either 1 or drawn from `1..=4`.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> InputGraph {
    loop {
        let n = rng.random_range(2..=max_n);
        let p = [0.2, 0.5, 0.8][rng.random_range(0..3)];
        let max_w = if rng.random_bool(0.5) { 1 } else { 8 };
        let mut g = random_graph(rng, n, p, max_w);
        if g.m() == 0 {
            continue;
        }
        if rng.random_bool(0.3) {
            let q = (0..n).map(|_| rng.random_range(1..=4)).collect();
            g.set_node_weights(q).unwrap();
        }
        return g;
    }
}

/// A nonempty proper random subset.
pub fn random_seed(rng: &mut ChaCha8Rng, n: usize) -> NodeSubset {
    loop {
        let s = NodeSubset::from_members(n, (0..n).filter(|_| rng.random_bool(0.4)));
        if !s.is_empty() && s.len() < n {
            return s;
        }
    }
}
