//! Incremental parametric cut (IPC) for the densest subgraph problem and
//! conductance*.
//!
//! Starting from an incumbent set `S₀` with ratio `λ₀`, each step solves the
//! λ-problem at the incumbent's ratio. A set that beats the incumbent on the
//! λ-problem also has a strictly better ratio, so it becomes the next
//! incumbent; when none exists the incumbent is optimal. All λ-problems are
//! solved on one network whose λ moves monotonically, so every solve after the
//! first is a warm restart.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::InputGraph;
use crate::network::{build_conductance_network, build_dsp_network, ParametricNetwork, Sense};
use crate::parametric::{LambdaDirection, ParametricSolver};
use crate::rational::{int, ratio, to_decimal, to_exact, Rational};
use crate::solver::{solve_mincut_with, Extremal, Sweep};
use crate::subset::NodeSubset;

/// Largest candidate count [`brute_force_best_ratio`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Ratio of the incumbent, at which the λ-problem was solved.
    pub lambda: Rational,
    /// Optimal value of the λ-problem, exact.
    pub improve: Rational,
    /// Size of the incumbent.
    pub set_size: usize,
    /// The incumbent, over graph nodes.
    pub set: NodeSubset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioResult {
    pub sense: Sense,
    /// Over graph nodes.
    pub optimal_set: NodeSubset,
    pub ratio: Rational,
    pub trace: Vec<TraceStep>,
    pub certified: bool,
    pub wall_time: Duration,
    pub cut_solve_count: usize,
}

impl RatioResult {
    /// Number of λ values (breakpoints) visited.
    pub fn explored(&self) -> usize {
        self.trace.len()
    }

    pub fn write_trace_csv<W: Write>(&self, mut out: W, places: u32) -> io::Result<()> {
        writeln!(out, "k,lambda_exact,lambda_decimal,improve,set_size")?;
        for (k, s) in self.trace.iter().enumerate() {
            writeln!(
                out,
                "{k},{},{},{},{}",
                to_exact(&s.lambda),
                to_decimal(&s.lambda, places),
                to_exact(&s.improve),
                s.set_size
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct IpcOptions {
    /// Initial incumbent over graph nodes; defaults to `V` (DSP) or `V₀`.
    pub start: Option<NodeSubset>,
}

/// Answer to one λ-problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaAnswer {
    /// Optimal value multiplied by `scale`.
    pub improve: i128,
    pub scale: i128,
    /// Largest optimal set, over graph nodes.
    pub argset: NodeSubset,
}

impl LambdaAnswer {
    pub fn value(&self) -> Rational {
        ratio(self.improve, self.scale)
    }
}

fn lambda_value(net: &ParametricNetwork, set: &NodeSubset, lambda: Rational) -> Rational {
    let (a, b) = net.excess_line(set);
    let excess = int(a) + int(b) * lambda;
    match net.sense() {
        Sense::Maximize => excess,
        Sense::Minimize => -excess,
    }
}

/// Solves `max_S C(S,S) − λq(S)` on a densest-subgraph network, or
/// `min_{S⊆V₀} C(S,V∖S) − λq(S)` on a conductance* network, from scratch.
pub fn solve_lambda_problem(net: &ParametricNetwork, lambda: Rational) -> Result<LambdaAnswer> {
    if lambda < int(0) {
        return Err(Error::Domain(format!("λ = {lambda} is negative")));
    }
    let inst = net.instantiate(lambda)?;
    let (cut, _) = solve_mincut_with(&inst, Extremal::Maximal, Sweep::SourceIncreasing)?;
    let value = lambda_value(net, &cut.source_set, lambda);
    let scaled = value * int(cut.scale);
    debug_assert!(scaled.is_integer());
    Ok(LambdaAnswer {
        improve: scaled.to_integer(),
        scale: cut.scale,
        argset: net.to_graph_set(&cut.source_set),
    })
}

/// Densest subgraph: maximizes `C(S,S)/q(S)` starting from `S₀ = V`.
pub fn ipc_maximize(g: &InputGraph) -> Result<RatioResult> {
    ipc_maximize_with(g, &IpcOptions::default())
}

pub fn ipc_maximize_with(g: &InputGraph, opts: &IpcOptions) -> Result<RatioResult> {
    let started = Instant::now();
    if g.m() == 0 {
        return Err(Error::Degenerate("graph has no edges; every density is 0".into()));
    }
    let start = match &opts.start {
        Some(s) if s.universe() != g.n() => {
            return Err(Error::Domain("start set is over a different node range".into()))
        }
        Some(s) => s.clone(),
        None => NodeSubset::full(g.n()),
    };
    let lambda = g.density(&start)?;
    let net = build_dsp_network(g);
    run(&net, start, lambda, LambdaDirection::Increasing, started, |s| g.density(s))
}

/// Conductance*: minimizes `C(S, V∖S)/q(S)` over nonempty `S ⊆ V∖seed`,
/// starting from `S₀ = V∖seed`.
pub fn ipc_minimize(g: &InputGraph, seed: &NodeSubset) -> Result<RatioResult> {
    ipc_minimize_with(g, seed, &IpcOptions::default())
}

pub fn ipc_minimize_with(g: &InputGraph, seed: &NodeSubset, opts: &IpcOptions) -> Result<RatioResult> {
    let started = Instant::now();
    let net = build_conductance_network(g, seed)?;
    let v0 = seed.complement();
    let start = opts.start.clone().unwrap_or_else(|| v0.clone());
    if start.universe() != g.n() || !start.is_subset(&v0) {
        return Err(Error::Domain("start set must lie inside V∖seed".into()));
    }
    if start.is_empty() {
        return Err(Error::UndefinedRatio);
    }
    if g.weight_of(&start) == 0 {
        return Err(Error::Degenerate("candidate set has zero node weight".into()));
    }
    let lambda = g.conductance_star_value(&start, &v0)?;
    run(&net, start, lambda, LambdaDirection::Decreasing, started, |s| {
        g.conductance_star_value(s, &v0)
    })
}

fn run(
    net: &ParametricNetwork,
    mut incumbent: NodeSubset,
    mut lambda: Rational,
    direction: LambdaDirection,
    started: Instant,
    ratio_of: impl Fn(&NodeSubset) -> Result<Rational>,
) -> Result<RatioResult> {
    let sense = net.sense();
    let mut solver = ParametricSolver::new(net, direction, Extremal::Maximal);
    let mut trace = Vec::new();
    loop {
        let cut = solver.solve(lambda)?;
        let improve = lambda_value(net, &cut.source_set, lambda);
        trace.push(TraceStep {
            lambda,
            improve,
            set_size: incumbent.len(),
            set: incumbent.clone(),
        });
        let better = match sense {
            Sense::Maximize => improve > int(0),
            Sense::Minimize => improve < int(0),
        };
        let argset = net.to_graph_set(&cut.source_set);
        if !better {
            // The incumbent scores 0, so the largest optimal set contains it
            // and has the same ratio.
            if !argset.is_empty() && ratio_of(&argset)? == lambda {
                incumbent = argset;
            }
            return Ok(RatioResult {
                sense,
                optimal_set: incumbent,
                ratio: lambda,
                trace,
                certified: true,
                wall_time: started.elapsed(),
                cut_solve_count: solver.cut_solves(),
            });
        }
        incumbent = argset;
        lambda = ratio_of(&incumbent)?;
    }
}

/// Re-checks optimality of `s` with one cold λ-problem at its ratio.
///
/// `seed` selects conductance* (and must be given for `Sense::Minimize`).
pub fn verify_certificate(
    g: &InputGraph,
    s: &NodeSubset,
    sense: Sense,
    seed: Option<&NodeSubset>,
) -> Result<bool> {
    match (sense, seed) {
        (Sense::Maximize, None) => {
            let lambda = g.density(s)?;
            let ans = solve_lambda_problem(&build_dsp_network(g), lambda)?;
            Ok(ans.improve <= 0)
        }
        (Sense::Minimize, Some(seed)) => {
            let lambda = g.conductance_star_value(s, &seed.complement())?;
            let ans = solve_lambda_problem(&build_conductance_network(g, seed)?, lambda)?;
            Ok(ans.improve >= 0)
        }
        (Sense::Maximize, Some(_)) => Err(Error::Domain("densest subgraph takes no seed set".into())),
        (Sense::Minimize, None) => Err(Error::Domain("conductance* needs a seed set".into())),
    }
}

/// Exhaustive search over all nonempty candidate sets.
///
/// Ties go to the larger set, then to the lexicographically smallest sorted
/// member list. Candidates are all nodes for `Sense::Maximize` and
/// `V∖seed` for `Sense::Minimize`; at most [`BRUTE_FORCE_LIMIT`] of them.
pub fn brute_force_best_ratio(
    g: &InputGraph,
    sense: Sense,
    seed: Option<&NodeSubset>,
) -> Result<RatioResult> {
    let started = Instant::now();
    let candidates: Vec<usize> = match (sense, seed) {
        (Sense::Maximize, None) => {
            if g.m() == 0 {
                return Err(Error::Degenerate("graph has no edges; every density is 0".into()));
            }
            (0..g.n()).collect()
        }
        (Sense::Minimize, Some(seed)) => (0..g.n()).filter(|&v| !seed.contains(v)).collect(),
        (Sense::Maximize, Some(_)) => {
            return Err(Error::Domain("densest subgraph takes no seed set".into()))
        }
        (Sense::Minimize, None) => return Err(Error::Domain("conductance* needs a seed set".into())),
    };
    let k = candidates.len();
    if k > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            limit: BRUTE_FORCE_LIMIT,
            got: k,
        });
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in candidates.iter().enumerate() {
        pos[v] = i;
    }
    // Edge endpoints as candidate bits; a non-candidate endpoint gets no bit.
    let edges: Vec<(u32, u32, i128)> = g
        .edges()
        .iter()
        .map(|e| {
            let bit = |v: usize| if pos[v] == usize::MAX { 0 } else { 1u32 << pos[v] };
            (bit(e.u), bit(e.v), e.w as i128)
        })
        .collect();
    let q: Vec<i128> = candidates.iter().map(|&v| g.node_weight(v) as i128).collect();

    let mut best: Option<(Rational, u32)> = None;
    for mask in 1u32..(1u32 << k) {
        let budget: i128 = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| q[i]).sum();
        if budget == 0 {
            continue;
        }
        let benefit: i128 = edges
            .iter()
            .filter(|&&(a, b, _)| match sense {
                Sense::Maximize => a & mask != 0 && b & mask != 0,
                Sense::Minimize => (a & mask != 0) != (b & mask != 0),
            })
            .map(|e| e.2)
            .sum();
        let r = ratio(benefit, budget);
        let replace = match best {
            None => true,
            Some((cur, cur_mask)) => {
                let better = match sense {
                    Sense::Maximize => r > cur,
                    Sense::Minimize => r < cur,
                };
                better || (r == cur && tie_prefers(mask, cur_mask))
            }
        };
        if replace {
            best = Some((r, mask));
        }
    }
    let (r, mask) = best.ok_or(Error::Degenerate("no candidate set has positive weight".into()))?;
    let set = NodeSubset::from_members(
        g.n(),
        (0..k).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i]),
    );
    Ok(RatioResult {
        sense,
        optimal_set: set,
        ratio: r,
        trace: Vec::new(),
        certified: true,
        wall_time: started.elapsed(),
        cut_solve_count: 0,
    })
}

/// Larger set first, then the smaller sorted member list.
fn tie_prefers(a: u32, b: u32) -> bool {
    let (ca, cb) = (a.count_ones(), b.count_ones());
    if ca != cb {
        return ca > cb;
    }
    // Lexicographic order of sorted member lists: at the lowest differing
    // bit, the list containing that member is smaller.
    let diff = a ^ b;
    a & diff & diff.wrapping_neg() != 0
}
