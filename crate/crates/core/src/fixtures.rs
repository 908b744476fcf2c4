//! Small named graphs used by tests, examples and benchmarks.

use crate::graph::InputGraph;
use crate::subset::NodeSubset;

fn build(n: usize, edges: &[(usize, usize)]) -> InputGraph {
    InputGraph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1))).expect("fixture is valid")
}

pub fn single_edge() -> InputGraph {
    build(2, &[(0, 1)])
}

/// Path a–b–c.
pub fn p3() -> InputGraph {
    build(3, &[(0, 1), (1, 2)])
}

pub fn k3() -> InputGraph {
    build(3, &[(0, 1), (0, 2), (1, 2)])
}

/// K4 on nodes 0..4 plus a pendant node 4 hanging off node 3.
pub fn k4_pendant() -> InputGraph {
    build(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
}

/// Star with centre 0 and leaves 1, 2, 3, node weights equal to degrees and
/// seed `{3}`.
pub fn star_with_seed() -> (InputGraph, NodeSubset) {
    let mut g = build(4, &[(0, 1), (0, 2), (0, 3)]);
    g.use_degree_weights().expect("star has no isolated nodes");
    (g, NodeSubset::from_members(4, [3]))
}

/// Triangle with degree weights and seed `{2}`.
pub fn triangle_with_seed() -> (InputGraph, NodeSubset) {
    let mut g = k3();
    g.use_degree_weights().expect("triangle has no isolated nodes");
    (g, NodeSubset::from_members(3, [2]))
}

pub fn complete(n: usize) -> InputGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    build(n, &edges)
}

/// Disjoint union of `K_{a,b}` and `copies` cliques on `k` nodes each.
///
/// The biclique comes first (its `a` side, then its `b` side), followed by
/// the cliques. With `(30, 2000, 20, 60)` this is the 3230-node, 95400-edge
/// close-cliques instance: the biclique has density 60000/2030 and every
/// clique 59/2, so greedy peeling tends to settle on the cliques.
pub fn biclique_and_cliques(a: usize, b: usize, copies: usize, k: usize) -> InputGraph {
    let mut edges = Vec::with_capacity(a * b + copies * k * (k - 1) / 2);
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    let mut base = a + b;
    for _ in 0..copies {
        for u in 0..k {
            for v in u + 1..k {
                edges.push((base + u, base + v));
            }
        }
        base += k;
    }
    build(base, &edges)
}

pub fn close_cliques() -> InputGraph {
    biclique_and_cliques(30, 2000, 20, 60)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn close_cliques_shape() {
        let g = close_cliques();
        assert_eq!((g.n(), g.m()), (3230, 95400));
        let biclique = NodeSubset::from_members(g.n(), 0..2030);
        assert_eq!(g.density(&biclique).unwrap(), ratio(60000, 2030));
    }
}
