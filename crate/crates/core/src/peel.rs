//! Greedy peeling baselines for the densest subgraph problem.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::InputGraph;
use crate::rational::{ratio, to_decimal, to_exact, Rational};
use crate::subset::NodeSubset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelTrace {
    /// Best suffix found over all passes.
    pub best_set: NodeSubset,
    pub best_density: Rational,
    /// Pass (from 1) that produced the best set.
    pub best_pass: usize,
    /// Removal order of that pass; the best set is everything after the
    /// first `best_index` removals.
    pub order: Vec<usize>,
    pub best_index: usize,
    /// Loads after the last pass.
    pub loads: Vec<i128>,
    /// Best density seen within each pass.
    pub pass_density: Vec<Rational>,
}

impl PeelTrace {
    /// Best density over the first `k` passes, for `k = 1..=passes`.
    pub fn running_best(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.pass_density.len());
        for &d in &self.pass_density {
            out.push(out.last().map_or(d, |&b: &Rational| b.max(d)));
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut out: W, places: u32) -> io::Result<()> {
        writeln!(out, "iteration,pass_density,best_density,best_density_exact")?;
        for (i, (p, b)) in self.pass_density.iter().zip(self.running_best()).enumerate() {
            writeln!(
                out,
                "{},{},{},{}",
                i + 1,
                to_decimal(p, places),
                to_decimal(&b, places),
                to_exact(&b)
            )?;
        }
        Ok(())
    }
}

/// Heap entry ordered so the smallest `num/den` (then smallest id) pops first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Key {
    num: i128,
    den: i128,
    id: usize,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        (other.num * self.den)
            .cmp(&(self.num * other.den))
            .then_with(|| other.id.cmp(&self.id))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Charikar's peeling: repeatedly drop the node minimizing `d_i / q_i` in
/// the remaining graph and keep the densest suffix. A 2-approximation.
pub fn charikar_greedy(g: &InputGraph) -> Result<PeelTrace> {
    greedy_pp(g, 1)
}

/// Greedy++: `passes` rounds of peeling by `(ℓ_i + d_i) / q_i`, where the
/// load `ℓ_i` accumulates the degree each node had when it was peeled.
/// Ties go to the smallest node id. One pass is Charikar's algorithm.
pub fn greedy_pp(g: &InputGraph, passes: usize) -> Result<PeelTrace> {
    if passes == 0 {
        return Err(Error::Validation("Greedy++ needs at least one pass".into()));
    }
    if g.m() == 0 {
        return Err(Error::Degenerate("graph has no edges; every density is 0".into()));
    }
    let n = g.n();
    let q: Vec<i128> = g.node_weights().iter().map(|&x| x as i128).collect();
    let total_q: i128 = q.iter().sum();
    let total_w = g.total_weight() as i128;

    let mut loads = vec![0i128; n];
    let mut deg = vec![0i128; n];
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::with_capacity(n);

    let mut best: Option<(Rational, usize, Vec<usize>, usize)> = None;
    let mut pass_density = Vec::with_capacity(passes);

    for pass in 1..=passes {
        for (i, d) in deg.iter_mut().enumerate() {
            *d = g.degree(i) as i128;
        }
        alive.fill(true);
        order.clear();
        heap.clear();
        heap.extend((0..n).map(|i| Key {
            num: loads[i] + deg[i],
            den: q[i],
            id: i,
        }));

        let (mut w, mut qs) = (total_w, total_q);
        let mut pass_best = (ratio(w, qs), 0usize);
        while let Some(key) = heap.pop() {
            let v = key.id;
            if !alive[v] || key.num != loads[v] + deg[v] {
                continue;
            }
            alive[v] = false;
            order.push(v);
            w -= deg[v];
            qs -= q[v];
            loads[v] += deg[v];
            for (u, wt) in g.neighbors(v) {
                if alive[u] {
                    deg[u] -= wt as i128;
                    heap.push(Key {
                        num: loads[u] + deg[u],
                        den: q[u],
                        id: u,
                    });
                }
            }
            if qs > 0 {
                let d = ratio(w, qs);
                if d > pass_best.0 {
                    pass_best = (d, order.len());
                }
            }
        }
        pass_density.push(pass_best.0);
        if best.as_ref().is_none_or(|b| pass_best.0 > b.0) {
            best = Some((pass_best.0, pass_best.1, order.clone(), pass));
        }
    }

    let (best_density, best_index, best_order, best_pass) = best.expect("at least one pass ran");
    let best_set = NodeSubset::from_members(n, best_order[best_index..].iter().copied());
    Ok(PeelTrace {
        best_set,
        best_density,
        best_pass,
        order: best_order,
        best_index,
        loads,
        pass_density,
    })
}
