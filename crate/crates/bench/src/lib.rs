//! Deterministic inputs for the criterion benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratiocut::{InputGraph, NodeSubset};

/// Erdős–Rényi-style graph with `m` distinct unit edges on `n` nodes.
pub fn random_graph(n: usize, m: usize, seed: u64) -> InputGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::with_capacity(m);
    while seen.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            seen.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = seen.into_iter().map(|(u, v)| (u, v, 1)).collect();
    edges.sort_unstable();
    InputGraph::from_edges(n, edges).expect("generated graph is valid")
}

/// Random graph with a planted dense block on the first `k` nodes.
pub fn planted(n: usize, m: usize, k: usize, p: f64, seed: u64) -> InputGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let base = random_graph(n, m, seed);
    let mut edges: Vec<(usize, usize, i64)> = base.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
    for u in 0..k {
        for v in u + 1..k {
            if rng.random_bool(p) {
                edges.push((u, v, 1));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup_by_key(|e| (e.0, e.1));
    InputGraph::from_edges(n, edges).expect("generated graph is valid")
}

/// Seed set of the even-indexed nodes.
pub fn half_seed(n: usize) -> NodeSubset {
    NodeSubset::from_members(n, (0..n).step_by(2))
}
