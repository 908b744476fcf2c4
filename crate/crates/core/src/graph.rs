//! Undirected weighted graphs with node weights.
//!
//! Graphs are loaded from SNAP-style edge lists and preprocessed the usual
//! way for densest-subgraph work: self-loops are dropped, direction is
//! ignored and parallel edges collapse into one edge (weight 1 for
//! unweighted input, the summed weight otherwise). Node ids are remapped
//! densely in order of first occurrence; ids seen only on self-loops are
//! dropped. The original ids stay
//! available through [`InputGraph::original_id`].

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::subset::NodeSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// Lower endpoint, `u < v`.
    pub u: usize,
    pub v: usize,
    pub w: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputGraph {
    edges: Vec<Edge>,
    node_weight: Vec<i64>,
    degree: Vec<i64>,
    out_degree: Vec<i64>,
    adj_start: Vec<usize>,
    adj_node: Vec<usize>,
    adj_weight: Vec<i64>,
    ids: Vec<u64>,
    total_weight: i64,
}

impl InputGraph {
    /// Builds a graph over nodes `0..n` with unit node weights.
    ///
    /// Rejects self-loops, repeated pairs and non-positive weights.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut list = Vec::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::Validation(format!(
                    "edge ({a},{b}) references a node outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::Validation(format!("self-loop at node {a}")));
            }
            if w <= 0 {
                return Err(Error::Validation(format!(
                    "edge ({a},{b}) has non-positive weight {w}"
                )));
            }
            list.push(Edge {
                u: a.min(b),
                v: a.max(b),
                w,
            });
        }
        list.sort_unstable_by_key(|e| (e.u, e.v));
        if let Some(pair) = list.windows(2).find(|p| (p[0].u, p[0].v) == (p[1].u, p[1].v)) {
            return Err(Error::Validation(format!(
                "repeated edge ({},{})",
                pair[0].u, pair[0].v
            )));
        }
        Self::assemble(n, list, (0..n as u64).collect())
    }

    fn assemble(n: usize, edges: Vec<Edge>, ids: Vec<u64>) -> Result<Self> {
        let mut degree = vec![0i64; n];
        let mut out_degree = vec![0i64; n];
        let mut counts = vec![0usize; n + 1];
        let mut total: i64 = 0;
        for e in &edges {
            let overflow = || Error::Overflow("summing edge weights");
            degree[e.u] = degree[e.u].checked_add(e.w).ok_or_else(overflow)?;
            degree[e.v] = degree[e.v].checked_add(e.w).ok_or_else(overflow)?;
            out_degree[e.u] += e.w;
            total = total.checked_add(e.w).ok_or_else(overflow)?;
            counts[e.u + 1] += 1;
            counts[e.v + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let adj_start = counts.clone();
        let mut fill = counts;
        let mut adj_node = vec![0usize; 2 * edges.len()];
        let mut adj_weight = vec![0i64; 2 * edges.len()];
        for e in &edges {
            adj_node[fill[e.u]] = e.v;
            adj_weight[fill[e.u]] = e.w;
            fill[e.u] += 1;
            adj_node[fill[e.v]] = e.u;
            adj_weight[fill[e.v]] = e.w;
            fill[e.v] += 1;
        }
        Ok(InputGraph {
            edges,
            node_weight: vec![1; n],
            degree,
            out_degree,
            adj_start,
            adj_node,
            adj_weight,
            ids,
            total_weight: total,
        })
    }

    pub fn n(&self) -> usize {
        self.node_weight.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> i64 {
        self.total_weight
    }

    /// Weighted degree `d_i`.
    pub fn degree(&self, i: usize) -> i64 {
        self.degree[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degree
    }

    /// Weighted out-degree `d_i^+` when every edge is oriented from its
    /// lower to its higher endpoint.
    pub fn out_degree(&self, i: usize) -> i64 {
        self.out_degree[i]
    }

    pub fn node_weight(&self, i: usize) -> i64 {
        self.node_weight[i]
    }

    pub fn node_weights(&self) -> &[i64] {
        &self.node_weight
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let r = self.adj_start[i]..self.adj_start[i + 1];
        self.adj_node[r.clone()]
            .iter()
            .copied()
            .zip(self.adj_weight[r].iter().copied())
    }

    pub fn original_id(&self, i: usize) -> u64 {
        self.ids[i]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.ids
    }

    /// Map from original id to dense id.
    pub fn id_index(&self) -> HashMap<u64, usize> {
        self.ids.iter().enumerate().map(|(i, &id)| (id, i)).collect()
    }

    pub fn set_node_weights(&mut self, q: Vec<i64>) -> Result<()> {
        if q.len() != self.n() {
            return Err(Error::Validation(format!(
                "expected {} node weights, got {}",
                self.n(),
                q.len()
            )));
        }
        if let Some(i) = q.iter().position(|&x| x <= 0) {
            return Err(Error::Validation(format!(
                "node {} has non-positive weight {}",
                self.ids[i], q[i]
            )));
        }
        self.node_weight = q;
        Ok(())
    }

    /// Sets `q_i = d_i`, the node weighting used for Cheeger*.
    pub fn use_degree_weights(&mut self) -> Result<()> {
        self.set_node_weights(self.degree.clone())
    }

    /// Reads "id q" lines and overrides the weights of the listed nodes.
    pub fn load_node_weights<R: BufRead>(&mut self, reader: R) -> Result<()> {
        let index = self.id_index();
        let mut q = self.node_weight.clone();
        for (lineno, line) in reader.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line.map_err(|e| Error::parse(lineno, e.to_string()))?;
            let mut tok = line.split_whitespace();
            let Some(first) = tok.next() else { continue };
            if is_comment(first) {
                continue;
            }
            let id: u64 = first
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad node id {first:?}")))?;
            let raw = tok
                .next()
                .ok_or_else(|| Error::parse(lineno, "missing node weight"))?;
            let w = parse_weight(raw, lineno)?;
            let &i = index
                .get(&id)
                .ok_or_else(|| Error::Validation(format!("node weight for unknown node {id}")))?;
            q[i] = w;
        }
        self.set_node_weights(q)
    }

    /// `q(S)`.
    pub fn weight_of(&self, s: &NodeSubset) -> i64 {
        s.iter().map(|i| self.node_weight[i]).sum()
    }

    /// `d(S)`.
    pub fn volume(&self, s: &NodeSubset) -> i64 {
        s.iter().map(|i| self.degree[i]).sum()
    }

    /// `C(S,S)`: total weight of edges with both endpoints in `S`.
    pub fn internal_weight(&self, s: &NodeSubset) -> i64 {
        self.edges
            .iter()
            .filter(|e| s.contains(e.u) && s.contains(e.v))
            .map(|e| e.w)
            .sum()
    }

    /// `C(S, V \ S)`.
    pub fn boundary_weight(&self, s: &NodeSubset) -> i64 {
        self.edges
            .iter()
            .filter(|e| s.contains(e.u) != s.contains(e.v))
            .map(|e| e.w)
            .sum()
    }

    /// Exact density `C(S,S) / q(S)`.
    pub fn density(&self, s: &NodeSubset) -> Result<Rational> {
        if s.is_empty() {
            return Err(Error::UndefinedRatio);
        }
        Ok(ratio(
            self.internal_weight(s) as i128,
            self.weight_of(s) as i128,
        ))
    }

    /// Exact conductance* value `C(S, V \ S) / q(S)` for `S ⊆ V0`.
    pub fn conductance_star_value(&self, s: &NodeSubset, v0: &NodeSubset) -> Result<Rational> {
        if !s.is_subset(v0) {
            return Err(Error::Domain("candidate set is not contained in V0".into()));
        }
        if s.is_empty() {
            return Err(Error::UndefinedRatio);
        }
        Ok(ratio(
            self.boundary_weight(s) as i128,
            self.weight_of(s) as i128,
        ))
    }

    /// Connected component label per node, labels dense from 0 in order of
    /// the smallest node of each component.
    pub fn components(&self) -> Vec<usize> {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in 0..n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            stack.push(root);
            while let Some(u) = stack.pop() {
                for (v, _) in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().iter().all(|&c| c == 0)
    }

    /// Subgraph induced by `s`, keeping original ids and node weights.
    pub fn induced(&self, s: &NodeSubset) -> InputGraph {
        let mut map = vec![usize::MAX; self.n()];
        let mut ids = Vec::with_capacity(s.len());
        let mut q = Vec::with_capacity(s.len());
        for (new, old) in s.iter().enumerate() {
            map[old] = new;
            ids.push(self.ids[old]);
            q.push(self.node_weight[old]);
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| s.contains(e.u) && s.contains(e.v))
            .map(|e| Edge {
                u: map[e.u],
                v: map[e.v],
                w: e.w,
            })
            .collect();
        let mut g = Self::assemble(s.len(), edges, ids).expect("subgraph of a valid graph");
        g.node_weight = q;
        g
    }
}

fn is_comment(token: &str) -> bool {
    token.starts_with('#') || token.starts_with('%')
}

fn parse_weight(raw: &str, lineno: usize) -> Result<i64> {
    match raw.parse::<i64>() {
        Ok(w) if w > 0 => Ok(w),
        Ok(w) => Err(Error::Validation(format!(
            "line {lineno}: weight must be positive, got {w}"
        ))),
        Err(_) if raw.parse::<f64>().is_ok() => Err(Error::Validation(format!(
            "line {lineno}: weight {raw} is not an integer; pre-scale fractional weights"
        ))),
        Err(_) => Err(Error::parse(lineno, format!("bad weight {raw:?}"))),
    }
}

/// Loads a whitespace-separated edge list.
///
/// Each line holds `u v` (or `u v w` when `weighted`). Lines starting with
/// `#` or `%` are comments. Without `weighted`, extra columns are ignored and
/// parallel edges collapse to their multiplicity; with it, their weights are
/// summed.
pub fn load_edge_list<R: BufRead>(reader: R, weighted: bool) -> Result<InputGraph> {
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut ids: Vec<u64> = Vec::new();
    let mut raw: Vec<(usize, usize, i64)> = Vec::new();
    let mut intern = |id: u64| -> usize {
        *index.entry(id).or_insert_with(|| {
            ids.push(id);
            ids.len() - 1
        })
    };

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::parse(lineno, e.to_string()))?;
        let mut tok = line.split_whitespace();
        let Some(a) = tok.next() else { continue };
        if is_comment(a) {
            continue;
        }
        let b = tok
            .next()
            .ok_or_else(|| Error::parse(lineno, "expected two node ids"))?;
        let a: u64 = a
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad node id {a:?}")))?;
        let b: u64 = b
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad node id {b:?}")))?;
        let w = if weighted {
            let raw_w = tok
                .next()
                .ok_or_else(|| Error::parse(lineno, "expected an edge weight"))?;
            parse_weight(raw_w, lineno)?
        } else {
            1
        };
        if a == b {
            continue;
        }
        let (a, b) = (intern(a), intern(b));
        raw.push((a.min(b), a.max(b), w));
    }
    if ids.is_empty() {
        return Err(Error::Validation("graph has no nodes".into()));
    }

    raw.sort_unstable_by_key(|&(u, v, _)| (u, v));
    let mut edges: Vec<Edge> = Vec::with_capacity(raw.len());
    for (u, v, w) in raw {
        match edges.last_mut() {
            Some(last) if last.u == u && last.v == v && !weighted => {}
            Some(last) if last.u == u && last.v == v => {
                last.w = last
                    .w
                    .checked_add(w)
                    .ok_or(Error::Overflow("collapsing parallel edges"))?;
            }
            _ => edges.push(Edge { u, v, w }),
        }
    }
    InputGraph::assemble(ids.len(), edges, ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn load(text: &str, weighted: bool) -> Result<InputGraph> {
        load_edge_list(text.as_bytes(), weighted)
    }

    #[test]
    fn multiplicity_collapse() {
        let g = load("0 1\n1 0\n1 2\n0 1\n", false).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(
            g.edges(),
            &[Edge { u: 0, v: 1, w: 1 }, Edge { u: 1, v: 2, w: 1 }]
        );
    }

    #[test]
    fn self_loops_dropped_and_ids_remapped() {
        let g = load("5 5\n9 9\n5 6\n", false).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, w: 1 }]);
        assert_eq!(g.original_ids(), &[5, 6]);
    }

    #[test]
    fn weighted_parallel_edges_sum() {
        let g = load("# c\n1 2 3\n2 1 4\n", true).unwrap();
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, w: 7 }]);
    }

    #[test]
    fn load_errors() {
        assert!(matches!(load("1\n", false), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("0 1\nx 2\n", false), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load("0 1 0\n", true), Err(Error::Validation(_))));
        assert!(matches!(load("0 1 -3\n", true), Err(Error::Validation(_))));
        assert!(matches!(load("0 1 1.5\n", true), Err(Error::Validation(_))));
        assert!(matches!(load("0 1\n", true), Err(Error::Parse { .. })));
        assert!(matches!(load("# nothing\n\n", false), Err(Error::Validation(_))));
    }

    #[test]
    fn deterministic_reload() {
        let text = "10 3\n3 7\n7 10\n10 2\n";
        assert_eq!(load(text, false).unwrap(), load(text, false).unwrap());
    }

    #[test]
    fn density_examples() {
        let k3 = InputGraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(k3.density(&NodeSubset::full(3)).unwrap(), int(1));
        let p3 = InputGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(p3.density(&NodeSubset::full(3)).unwrap(), ratio(2, 3));
        assert_eq!(p3.density(&NodeSubset::empty(3)), Err(Error::UndefinedRatio));
    }

    #[test]
    fn p3_density_maximum_by_enumeration() {
        let p3 = InputGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let best = (1u64..8)
            .map(|m| p3.density(&NodeSubset::from_mask(3, m)).unwrap())
            .max()
            .unwrap();
        assert_eq!(best, ratio(2, 3));
    }

    fn star() -> (InputGraph, NodeSubset) {
        // c=0, x=1, y=2, z=3
        let mut g = InputGraph::from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        g.use_degree_weights().unwrap();
        let v0 = NodeSubset::from_members(4, [0, 1, 2]);
        (g, v0)
    }

    #[test]
    fn conductance_star_examples() {
        let (g, v0) = star();
        let s = NodeSubset::from_members(4, [0, 1, 2]);
        assert_eq!(g.conductance_star_value(&s, &v0).unwrap(), ratio(1, 5));
        let x = NodeSubset::from_members(4, [1]);
        assert_eq!(g.conductance_star_value(&x, &v0).unwrap(), int(1));
        let best = (1u64..8)
            .map(|m| {
                g.conductance_star_value(&NodeSubset::from_mask(4, m), &v0)
                    .unwrap()
            })
            .min()
            .unwrap();
        assert_eq!(best, ratio(1, 5));
        let outside = NodeSubset::from_members(4, [3]);
        assert!(matches!(
            g.conductance_star_value(&outside, &v0),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            g.conductance_star_value(&NodeSubset::empty(4), &v0),
            Err(Error::UndefinedRatio)
        );
        let all = NodeSubset::full(4);
        assert_eq!(g.conductance_star_value(&all, &all).unwrap(), int(0));
    }

    #[test]
    fn node_weight_file() {
        let mut g = load("7 8\n8 9\n", false).unwrap();
        g.load_node_weights("# w\n8 5\n".as_bytes()).unwrap();
        assert_eq!(g.node_weights(), &[1, 5, 1]);
        assert!(g.load_node_weights("42 1\n".as_bytes()).is_err());
        assert!(g.load_node_weights("7 0\n".as_bytes()).is_err());
    }

    #[test]
    fn components_and_induced() {
        let g = load("0 1\n1 2\n5 6\n", false).unwrap();
        assert_eq!(g.components(), vec![0, 0, 0, 1, 1]);
        assert!(!g.is_connected());
        let sub = g.induced(&NodeSubset::from_members(5, [3, 4]));
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.original_ids(), &[5, 6]);
        assert!(sub.is_connected());
    }
}
