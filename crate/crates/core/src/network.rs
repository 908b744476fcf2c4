//! Parametric s,t-networks for ratio λ-problems.
//!
//! A [`ParametricNetwork`] has λ-independent internal arcs and, per node, a
//! source arc and a sink arc whose capacities are `max(0, a + b·λ)`. It is
//! turned into an integer network at a rational `λ = P/Q` by scaling every
//! capacity by `Q` (or a multiple of it), which leaves the minimum cuts
//! unchanged.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::InputGraph;
use crate::rational::Rational;
use crate::subset::NodeSubset;

/// Largest total capacity an instantiated network may carry. Keeping the
/// sum well below `i128::MAX` means no flow or excess can overflow.
pub const CAPACITY_BUDGET: i128 = i128::MAX / 4;

/// `max(0, constant + slope·λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LinearCap {
    pub constant: i64,
    pub slope: i64,
}

impl LinearCap {
    pub const ZERO: LinearCap = LinearCap {
        constant: 0,
        slope: 0,
    };

    pub fn new(constant: i64, slope: i64) -> Self {
        LinearCap { constant, slope }
    }

    pub fn constant(c: i64) -> Self {
        LinearCap::new(c, 0)
    }

    pub fn negated(self) -> Self {
        LinearCap::new(-self.constant, -self.slope)
    }

    /// Capacity at `λ = p/q`, multiplied by `q`.
    pub fn scaled(self, p: i128, q: i128) -> Option<i128> {
        let v = (self.constant as i128)
            .checked_mul(q)?
            .checked_add((self.slope as i128).checked_mul(p)?)?;
        Some(v.max(0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub cap: i64,
}

/// How terminal capacities move as λ grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    /// Source capacities fall and sink capacities rise with λ (densest subgraph).
    SourceNonincreasing,
    /// Source capacities rise and sink capacities fall with λ (conductance*).
    SourceNondecreasing,
    /// No terminal capacity depends on λ.
    Constant,
}

/// Whether the ratio problem behind a network is maximized or minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricNetwork {
    n: usize,
    arcs: Vec<Arc>,
    source: Vec<LinearCap>,
    sink: Vec<LinearCap>,
    monotonicity: Monotonicity,
    graph_nodes: Vec<usize>,
    graph_n: usize,
}

impl ParametricNetwork {
    /// Builds a network over non-terminal nodes `0..source.len()`.
    ///
    /// Fails when an internal capacity is negative or the terminal slopes do
    /// not all move in one consistent direction.
    pub fn new(arcs: Vec<Arc>, source: Vec<LinearCap>, sink: Vec<LinearCap>) -> Result<Self> {
        let n = source.len();
        Self::with_node_map(arcs, source, sink, (0..n).collect(), n)
    }

    fn with_node_map(
        arcs: Vec<Arc>,
        source: Vec<LinearCap>,
        sink: Vec<LinearCap>,
        graph_nodes: Vec<usize>,
        graph_n: usize,
    ) -> Result<Self> {
        let n = source.len();
        if sink.len() != n {
            return Err(Error::Validation(
                "source and sink capacity lists differ in length".into(),
            ));
        }
        for a in &arcs {
            if a.tail >= n || a.head >= n || a.tail == a.head {
                return Err(Error::Validation(format!(
                    "arc ({},{}) is not between two distinct nodes of 0..{n}",
                    a.tail, a.head
                )));
            }
            if a.cap < 0 {
                return Err(Error::Validation(format!(
                    "arc ({},{}) has negative capacity",
                    a.tail, a.head
                )));
            }
        }
        let rising = source.iter().any(|c| c.slope > 0) || sink.iter().any(|c| c.slope < 0);
        let falling = source.iter().any(|c| c.slope < 0) || sink.iter().any(|c| c.slope > 0);
        let monotonicity = match (rising, falling) {
            (false, false) => Monotonicity::Constant,
            (true, false) => Monotonicity::SourceNondecreasing,
            (false, true) => Monotonicity::SourceNonincreasing,
            (true, true) => {
                return Err(Error::Validation(
                    "terminal capacities are not monotone in a single direction".into(),
                ))
            }
        };
        Ok(ParametricNetwork {
            n,
            arcs,
            source,
            sink,
            monotonicity,
            graph_nodes,
            graph_n,
        })
    }

    /// Number of non-terminal nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Arc count including the `2n` terminal arcs.
    pub fn arc_count(&self) -> usize {
        self.arcs.len() + 2 * self.n
    }

    pub fn source_caps(&self) -> &[LinearCap] {
        &self.source
    }

    pub fn sink_caps(&self) -> &[LinearCap] {
        &self.sink
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn sense(&self) -> Sense {
        match self.monotonicity {
            Monotonicity::SourceNondecreasing => Sense::Minimize,
            _ => Sense::Maximize,
        }
    }

    /// Graph node represented by network node `i`.
    pub fn graph_node(&self, i: usize) -> usize {
        self.graph_nodes[i]
    }

    /// Lifts a set of network nodes to a set of graph nodes.
    pub fn to_graph_set(&self, s: &NodeSubset) -> NodeSubset {
        NodeSubset::from_members(self.graph_n, s.iter().map(|i| self.graph_nodes[i]))
    }

    /// Restricts a set of graph nodes to the nodes present in the network.
    pub fn from_graph_set(&self, s: &NodeSubset) -> NodeSubset {
        NodeSubset::from_members(
            self.n,
            (0..self.n).filter(|&i| s.contains(self.graph_nodes[i])),
        )
    }

    /// Affine contribution `a + b·λ` of node `i` to the s-excess of any set
    /// containing it: source capacity minus sink capacity, valid for λ ≥ 0.
    fn net_form(&self, i: usize) -> (i128, i128) {
        let (s, t) = (self.source[i], self.sink[i]);
        if t == s.negated() {
            (s.constant as i128, s.slope as i128)
        } else {
            (
                s.constant as i128 - t.constant as i128,
                s.slope as i128 - t.slope as i128,
            )
        }
    }

    /// The s-excess of `s` as the line `intercept + slope·λ`: net terminal
    /// contributions of its members minus internal arcs leaving it.
    pub fn excess_line(&self, s: &NodeSubset) -> (i128, i128) {
        let (mut a, mut b) = (0i128, 0i128);
        for i in s.iter() {
            let (ai, bi) = self.net_form(i);
            a += ai;
            b += bi;
        }
        for arc in &self.arcs {
            if s.contains(arc.tail) && !s.contains(arc.head) {
                a -= arc.cap as i128;
            }
        }
        (a, b)
    }

    /// `(budget, benefit)` of a set, read off its s-excess line.
    ///
    /// For the densest-subgraph network this is `(q(S), C(S,S))`, for the
    /// conductance* network `(q(S), C(S, V∖S))`.
    pub fn budget_benefit(&self, s: &NodeSubset) -> (i128, i128) {
        let (a, b) = self.excess_line(s);
        match self.sense() {
            Sense::Maximize => (-b, a),
            Sense::Minimize => (b, -a),
        }
    }

    /// Instantiates at `λ`, scaling by its reduced denominator.
    pub fn instantiate(&self, lambda: Rational) -> Result<InstantiatedNetwork> {
        self.instantiate_scaled(lambda, *lambda.denom())
    }

    /// Instantiates at `λ` with every capacity multiplied by `scale`, which
    /// must be a positive multiple of λ's denominator.
    pub fn instantiate_scaled(&self, lambda: Rational, scale: i128) -> Result<InstantiatedNetwork> {
        let q = *lambda.denom();
        if scale <= 0 || scale % q != 0 {
            return Err(Error::Contract(format!(
                "scale {scale} is not a positive multiple of λ's denominator {q}"
            )));
        }
        let p = lambda
            .numer()
            .checked_mul(scale / q)
            .ok_or(Error::Overflow("scaling λ"))?;
        let overflow = || Error::Overflow("instantiating capacities");
        let mut total: i128 = 0;
        let mut add = |c: i128| -> Result<i128> {
            total = total
                .checked_add(c)
                .filter(|&t| t <= CAPACITY_BUDGET)
                .ok_or_else(overflow)?;
            Ok(c)
        };
        let mut source = Vec::with_capacity(self.n);
        let mut sink = Vec::with_capacity(self.n);
        for i in 0..self.n {
            source.push(add(self.source[i].scaled(p, scale).ok_or_else(overflow)?)?);
            sink.push(add(self.sink[i].scaled(p, scale).ok_or_else(overflow)?)?);
        }
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for a in &self.arcs {
            let cap = (a.cap as i128).checked_mul(scale).ok_or_else(overflow)?;
            arcs.push((a.tail, a.head, add(cap)?));
        }
        Ok(InstantiatedNetwork {
            n: self.n,
            arcs,
            source,
            sink,
            lambda,
            scale,
        })
    }
}

/// Integer capacities of a [`ParametricNetwork`] at a fixed λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstantiatedNetwork {
    n: usize,
    arcs: Vec<(usize, usize, i128)>,
    source: Vec<i128>,
    sink: Vec<i128>,
    lambda: Rational,
    scale: i128,
}

impl InstantiatedNetwork {
    /// A plain network with explicit capacities, at scale 1 and λ = 0.
    pub fn from_parts(
        n: usize,
        arcs: Vec<(usize, usize, i128)>,
        source: Vec<i128>,
        sink: Vec<i128>,
    ) -> Result<Self> {
        if source.len() != n || sink.len() != n {
            return Err(Error::Validation("terminal capacity lists must have n entries".into()));
        }
        let mut total: i128 = 0;
        let caps = arcs.iter().map(|a| a.2).chain(source.iter().copied()).chain(sink.iter().copied());
        for c in caps {
            if c < 0 {
                return Err(Error::Validation("negative capacity".into()));
            }
            total = total
                .checked_add(c)
                .filter(|&t| t <= CAPACITY_BUDGET)
                .ok_or(Error::Overflow("summing capacities"))?;
        }
        if let Some(a) = arcs.iter().find(|a| a.0 >= n || a.1 >= n || a.0 == a.1) {
            return Err(Error::Validation(format!("bad arc ({},{})", a.0, a.1)));
        }
        Ok(InstantiatedNetwork {
            n,
            arcs,
            source,
            sink,
            lambda: Rational::from_integer(0),
            scale: 1,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize, i128)] {
        &self.arcs
    }

    pub fn source_caps(&self) -> &[i128] {
        &self.source
    }

    pub fn sink_caps(&self) -> &[i128] {
        &self.sink
    }

    pub fn lambda(&self) -> Rational {
        self.lambda
    }

    pub fn scale(&self) -> i128 {
        self.scale
    }

    /// Capacity of the cut `({s} ∪ S, rest ∪ {t})`, recomputed from scratch.
    pub fn cut_capacity(&self, s: &NodeSubset) -> i128 {
        let mut c: i128 = 0;
        for i in 0..self.n {
            if s.contains(i) {
                c += self.sink[i];
            } else {
                c += self.source[i];
            }
        }
        for &(u, v, cap) in &self.arcs {
            if s.contains(u) && !s.contains(v) {
                c += cap;
            }
        }
        c
    }

    /// DIMACS max-flow format. Nodes are `1..=n`, source `n+1`, sink `n+2`;
    /// zero-capacity terminal arcs are written too.
    pub fn write_dimacs<W: Write>(&self, mut out: W) -> io::Result<()> {
        let (s, t) = (self.n + 1, self.n + 2);
        writeln!(out, "c lambda {} scale {}", self.lambda, self.scale)?;
        writeln!(out, "p max {} {}", self.n + 2, self.arcs.len() + 2 * self.n)?;
        writeln!(out, "n {s} s")?;
        writeln!(out, "n {t} t")?;
        for i in 0..self.n {
            writeln!(out, "a {s} {} {}", i + 1, self.source[i])?;
        }
        for &(u, v, cap) in &self.arcs {
            writeln!(out, "a {} {} {cap}", u + 1, v + 1)?;
        }
        for i in 0..self.n {
            writeln!(out, "a {} {t} {}", i + 1, self.sink[i])?;
        }
        Ok(())
    }
}

/// Network whose min-cut source set maximizes `C(S,S) − λ·q(S)`.
///
/// Edges are oriented from lower to higher endpoint; node `i` gets source
/// capacity `max(0, d_i⁺ − λq_i)` and sink capacity `max(0, λq_i − d_i⁺)`.
pub fn build_dsp_network(g: &InputGraph) -> ParametricNetwork {
    let arcs = g
        .edges()
        .iter()
        .map(|e| Arc {
            tail: e.u,
            head: e.v,
            cap: e.w,
        })
        .collect();
    let source: Vec<LinearCap> = (0..g.n())
        .map(|i| LinearCap::new(g.out_degree(i), -g.node_weight(i)))
        .collect();
    let sink = source.iter().map(|c| c.negated()).collect();
    ParametricNetwork::with_node_map(arcs, source, sink, (0..g.n()).collect(), g.n())
        .expect("densest-subgraph network is well formed")
}

/// Network whose min-cut source set minimizes `C(S, V∖S) − λ·q(S)` over
/// `S ⊆ V∖seed`. Seed nodes are merged into the sink.
pub fn build_conductance_network(g: &InputGraph, seed: &NodeSubset) -> Result<ParametricNetwork> {
    if seed.universe() != g.n() {
        return Err(Error::Domain("seed set is over a different node range".into()));
    }
    if seed.is_empty() {
        return Err(Error::Domain("seed set is empty".into()));
    }
    if seed.len() == g.n() {
        return Err(Error::Domain("seed set covers every node".into()));
    }
    let mut local = vec![usize::MAX; g.n()];
    let mut graph_nodes = Vec::with_capacity(g.n() - seed.len());
    for v in 0..g.n() {
        if !seed.contains(v) {
            local[v] = graph_nodes.len();
            graph_nodes.push(v);
        }
    }
    let mut to_seed = vec![0i64; graph_nodes.len()];
    let mut arcs = Vec::new();
    for e in g.edges() {
        match (seed.contains(e.u), seed.contains(e.v)) {
            (false, false) => {
                let (a, b) = (local[e.u], local[e.v]);
                arcs.push(Arc { tail: a, head: b, cap: e.w });
                arcs.push(Arc { tail: b, head: a, cap: e.w });
            }
            (false, true) => to_seed[local[e.u]] += e.w,
            (true, false) => to_seed[local[e.v]] += e.w,
            (true, true) => {}
        }
    }
    let source = graph_nodes
        .iter()
        .map(|&v| LinearCap::new(0, g.node_weight(v)))
        .collect();
    let sink = to_seed.into_iter().map(LinearCap::constant).collect();
    ParametricNetwork::with_node_map(arcs, source, sink, graph_nodes, g.n())
}

/// A constraint arc `x_tail − x_head ≤ z` with penalty `cap`; `None` forbids
/// violating it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcessArc {
    pub tail: usize,
    pub head: usize,
    pub cap: Option<i64>,
}

/// Network for the binary s-excess problem
/// `max Σ w_i x_i − Σ u_ij z_ij  s.t. x_i − x_j ≤ z_ij`.
///
/// Positive weights feed source arcs, negative weights sink arcs. An
/// unbounded arc gets a capacity larger than the sum of all |w_i|, which no
/// minimum cut can afford.
pub fn build_s_excess_network(weights: &[i64], arcs: &[ExcessArc]) -> Result<ParametricNetwork> {
    let big = weights
        .iter()
        .try_fold(1i64, |acc, w| acc.checked_add(w.checked_abs()?))
        .ok_or(Error::Overflow("bounding s-excess weights"))?;
    let arcs = arcs
        .iter()
        .map(|a| match a.cap {
            Some(c) if c < 0 => Err(Error::Validation(format!(
                "constraint arc ({},{}) has negative capacity",
                a.tail, a.head
            ))),
            cap => Ok(Arc {
                tail: a.tail,
                head: a.head,
                cap: cap.unwrap_or(big),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    let source: Vec<LinearCap> = weights.iter().map(|&w| LinearCap::constant(w)).collect();
    let sink = source.iter().map(|c| c.negated()).collect();
    ParametricNetwork::new(arcs, source, sink)
}
