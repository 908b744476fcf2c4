//! Minimum cuts over many values of λ.
//!
//! Every source set `S` has an s-excess that is affine in λ, so the optimal
//! s-excess is the upper envelope of finitely many lines. Its kinks are the
//! breakpoints where the optimal source set changes, and the slope of each
//! piece is (up to sign) the budget `q(S)` of the set optimal on it.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::InputGraph;
use crate::network::{Monotonicity, ParametricNetwork, Sense};
use crate::rational::{checked_lcm, int, precision, ratio, to_decimal, to_exact, Rational};
use crate::solver::{solve_mincut_with, CutSolution, Extremal, SolverState, Sweep};
use crate::subset::NodeSubset;

/// Whether λ grows or shrinks over a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaDirection {
    Increasing,
    Decreasing,
}

/// Solves one parametric network at a monotone sequence of λ values,
/// reusing the preflow between solves.
///
/// All instantiations share a common scale, the lcm of the denominators seen
/// so far. When that would overflow the solver starts over cold at the new
/// λ's own denominator.
#[derive(Debug)]
pub struct ParametricSolver<'a> {
    net: &'a ParametricNetwork,
    direction: LambdaDirection,
    extremal: Extremal,
    state: Option<SolverState>,
    last: Option<Rational>,
    cold_solves: usize,
    warm_solves: usize,
}

impl<'a> ParametricSolver<'a> {
    pub fn new(net: &'a ParametricNetwork, direction: LambdaDirection, extremal: Extremal) -> Self {
        ParametricSolver {
            net,
            direction,
            extremal,
            state: None,
            last: None,
            cold_solves: 0,
            warm_solves: 0,
        }
    }

    fn sweep(&self) -> Sweep {
        let source_rises = matches!(
            (self.net.monotonicity(), self.direction),
            (Monotonicity::SourceNondecreasing, LambdaDirection::Increasing)
                | (Monotonicity::SourceNonincreasing, LambdaDirection::Decreasing)
                | (Monotonicity::Constant, _)
        );
        if source_rises {
            Sweep::SourceIncreasing
        } else {
            Sweep::SourceDecreasing
        }
    }

    pub fn cut_solves(&self) -> usize {
        self.cold_solves + self.warm_solves
    }

    pub fn cold_solves(&self) -> usize {
        self.cold_solves
    }

    pub fn state(&self) -> Option<&SolverState> {
        self.state.as_ref()
    }

    pub fn solve(&mut self, lambda: Rational) -> Result<CutSolution> {
        if lambda < int(0) {
            return Err(Error::Domain(format!("λ = {lambda} is negative")));
        }
        if let Some(last) = self.last {
            let backwards = match self.direction {
                LambdaDirection::Increasing => lambda < last,
                LambdaDirection::Decreasing => lambda > last,
            };
            if backwards {
                return Err(Error::Contract(format!(
                    "λ = {lambda} moves against the sweep after {last}"
                )));
            }
        }
        self.last = Some(lambda);
        if let Some(state) = self.state.as_mut() {
            if let Some(scale) = checked_lcm(state.scale(), *lambda.denom()) {
                match self.net.instantiate_scaled(lambda, scale) {
                    Ok(inst) => match state.continue_solve_with(&inst, self.extremal) {
                        Ok(cut) => {
                            self.warm_solves += 1;
                            return Ok(cut);
                        }
                        Err(Error::Overflow(_)) => {}
                        Err(e) => return Err(e),
                    },
                    Err(Error::Overflow(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        let inst = self.net.instantiate(lambda)?;
        let (cut, state) = solve_mincut_with(&inst, self.extremal, self.sweep())?;
        self.state = Some(state);
        self.cold_solves += 1;
        Ok(cut)
    }
}

/// Minimum cuts at each λ of a strictly ascending list, warm-started.
pub fn simple_parametric(net: &ParametricNetwork, lambdas: &[Rational]) -> Result<Vec<CutSolution>> {
    simple_parametric_with(net, lambdas, Extremal::Maximal)
}

pub fn simple_parametric_with(
    net: &ParametricNetwork,
    lambdas: &[Rational],
    extremal: Extremal,
) -> Result<Vec<CutSolution>> {
    if lambdas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Contract("λ list is not strictly ascending".into()));
    }
    let mut solver = ParametricSolver::new(net, LambdaDirection::Increasing, extremal);
    lambdas.iter().map(|&l| solver.solve(l)).collect()
}

/// A point where the optimal source set changes.
///
/// `source_set` is the larger of the two sets optimal on either side, over
/// graph nodes: the one just left of λ when sets shrink with λ, the one just
/// right of it when they grow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakpoint {
    pub lambda: Rational,
    pub source_set: NodeSubset,
    pub budget: i128,
    pub benefit: i128,
    pub set_size: usize,
}

impl Breakpoint {
    /// `benefit / budget`, undefined for a zero budget.
    pub fn ratio(&self) -> Option<Rational> {
        (self.budget != 0).then(|| ratio(self.benefit, self.budget))
    }
}

/// An optimal set not attached to a breakpoint: the smallest set in the
/// computed range, which closes the envelope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopePoint {
    pub source_set: NodeSubset,
    pub budget: i128,
    pub benefit: i128,
    pub set_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub sense: Sense,
    pub lo: Rational,
    pub hi: Rational,
    /// Sorted by strictly increasing λ.
    pub breakpoints: Vec<Breakpoint>,
    pub tail: EnvelopePoint,
    /// Breakpoints whose interval fell below the precision and were not
    /// confirmed by a solve.
    pub merged: usize,
    pub cut_solves: usize,
}

impl Envelope {
    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// `(budget, benefit)` of every optimal set in budget order from the
    /// largest set down to the tail.
    pub fn points(&self) -> Vec<(i128, i128)> {
        let mut pts: Vec<(i128, i128)> = self.breakpoints.iter().map(|b| (b.budget, b.benefit)).collect();
        match self.sense {
            Sense::Maximize => {}
            Sense::Minimize => pts.reverse(),
        }
        pts.push((self.tail.budget, self.tail.benefit));
        pts
    }

    /// CSV with one row per breakpoint and a final row for the tail point,
    /// whose λ columns are empty.
    pub fn write_csv<W: Write>(&self, mut out: W, places: u32) -> io::Result<()> {
        writeln!(out, "lambda,budget,benefit,set_size,lambda_exact")?;
        for b in &self.breakpoints {
            writeln!(
                out,
                "{},{},{},{},{}",
                to_decimal(&b.lambda, places),
                b.budget,
                b.benefit,
                b.set_size,
                to_exact(&b.lambda)
            )?;
        }
        let t = &self.tail;
        writeln!(out, ",{},{},{},", t.budget, t.benefit, t.set_size)
    }
}

/// `[density(V), max_i d_i / (2 q_i)]`; every set's density lies below the
/// upper end, and V's density is a lower bound on the optimum.
pub fn default_dsp_interval(g: &InputGraph) -> Result<(Rational, Rational)> {
    let lo = g.density(&NodeSubset::full(g.n()))?;
    let hi = (0..g.n())
        .map(|i| ratio(g.degree(i) as i128, 2 * g.node_weight(i) as i128))
        .max()
        .unwrap_or(lo);
    Ok((lo, hi))
}

pub fn default_conductance_interval() -> (Rational, Rational) {
    (int(0), int(1))
}

/// All breakpoints in `[lo, hi]`, at the default precision of 10⁻⁴.
pub fn fully_parametric(net: &ParametricNetwork, lo: Rational, hi: Rational) -> Result<Envelope> {
    fully_parametric_with(net, lo, hi, precision(4))
}

struct Side {
    set: NodeSubset,
    line: (i128, i128),
}

/// Breakpoints by recursive line intersection.
///
/// Each interval carries the set optimal just right of its left end and the
/// set optimal just left of its right end. If their lines coincide there is
/// no breakpoint inside. Otherwise the lines cross at some λ*, and a cold
/// solve there either confirms λ* as the only breakpoint (the optimum equals
/// the lines' common value) or yields a better set that splits the interval.
/// Intervals narrower than `precision` are not split further; their
/// crossing is recorded unconfirmed. A breakpoint sitting exactly on `lo`,
/// `hi` or a solved λ* shows up as differing extremal cuts there.
pub fn fully_parametric_with(
    net: &ParametricNetwork,
    lo: Rational,
    hi: Rational,
    precision: Rational,
) -> Result<Envelope> {
    if lo < int(0) {
        return Err(Error::Domain("λ interval must start at a nonnegative value".into()));
    }
    if lo > hi {
        return Err(Error::Domain(format!("empty λ interval [{lo}, {hi}]")));
    }
    let grows = net.monotonicity() == Monotonicity::SourceNondecreasing;
    let (just_left, just_right) = if grows {
        (Extremal::Minimal, Extremal::Maximal)
    } else {
        (Extremal::Maximal, Extremal::Minimal)
    };

    let mut solves = 0usize;
    let mut solve_both = |lambda: Rational| -> Result<(Side, Side)> {
        solves += 1;
        let inst = net.instantiate(lambda)?;
        let (_, state) = solve_mincut_with(&inst, Extremal::Maximal, Sweep::SourceIncreasing)?;
        let side = |e: Extremal| {
            let set = state.cut(e).source_set;
            Side {
                line: net.excess_line(&set),
                set,
            }
        };
        Ok((side(just_left), side(just_right)))
    };

    let mut found: Vec<(Rational, NodeSubset)> = Vec::new();
    let mut merged = 0usize;
    let larger = |left: &Side, right: &Side| {
        if grows {
            right.set.clone()
        } else {
            left.set.clone()
        }
    };

    let (lo_left, lo_right) = solve_both(lo)?;
    let (hi_left, hi_right) = solve_both(hi)?;
    let tail_set = if grows { lo_left.set.clone() } else { hi_right.set.clone() };
    if lo_left.line != lo_right.line {
        found.push((lo, larger(&lo_left, &lo_right)));
    }
    if lo < hi && hi_left.line != hi_right.line {
        found.push((hi, larger(&hi_left, &hi_right)));
    }

    let mut stack: Vec<(Rational, Side, Rational, Side)> = Vec::new();
    if lo < hi {
        stack.push((lo, lo_right, hi, hi_left));
    }
    while let Some((a, left, b, right)) = stack.pop() {
        if left.line == right.line {
            continue;
        }
        let (a1, b1) = left.line;
        let (a2, b2) = right.line;
        if b1 == b2 {
            return Err(Error::Contract(format!(
                "parallel optimal lines on [{a}, {b}]; the network is not parametric in λ"
            )));
        }
        let star = ratio(a1 - a2, b2 - b1);
        if star <= a || star >= b {
            if star == b {
                // Crossing at the right end: recorded by the parent split.
                continue;
            }
            return Err(Error::Contract(format!(
                "line crossing {star} falls outside [{a}, {b}]"
            )));
        }
        if b - a < precision {
            merged += 1;
            found.push((star, larger(&left, &right)));
            continue;
        }
        let value = int(a1) + int(b1) * star;
        let (mid_left, mid_right) = solve_both(star)?;
        let best = int(mid_left.line.0) + int(mid_left.line.1) * star;
        if best == value {
            found.push((star, larger(&left, &right)));
            continue;
        }
        if mid_left.line != mid_right.line {
            found.push((star, larger(&mid_left, &mid_right)));
        }
        stack.push((star, mid_right, b, right));
        stack.push((a, left, star, mid_left));
    }

    found.sort_by_key(|x| x.0);
    found.dedup_by(|x, y| x.0 == y.0);
    let breakpoints = found
        .into_iter()
        .map(|(lambda, set)| {
            let (budget, benefit) = net.budget_benefit(&set);
            Breakpoint {
                lambda,
                set_size: set.len(),
                source_set: net.to_graph_set(&set),
                budget,
                benefit,
            }
        })
        .collect();
    let (budget, benefit) = net.budget_benefit(&tail_set);
    Ok(Envelope {
        sense: net.sense(),
        lo,
        hi,
        breakpoints,
        tail: EnvelopePoint {
            set_size: tail_set.len(),
            source_set: net.to_graph_set(&tail_set),
            budget,
            benefit,
        },
        merged,
        cut_solves: solves,
    })
}

/// The breakpoint whose set has the best ratio; ties go to the smallest λ.
/// Its λ equals that ratio when the interval covers the optimum.
pub fn leftmost_breakpoint(env: &Envelope) -> Result<&Breakpoint> {
    let mut best: Option<(&Breakpoint, Rational)> = None;
    for b in &env.breakpoints {
        let Some(r) = b.ratio() else { continue };
        let better = match best {
            None => true,
            Some((_, cur)) => match env.sense {
                Sense::Maximize => r > cur,
                Sense::Minimize => r < cur,
            },
        };
        if better {
            best = Some((b, r));
        }
    }
    best.map(|(b, _)| b).ok_or(Error::EmptyEnvelope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::network::{build_conductance_network, build_dsp_network};

    #[test]
    fn k4_pendant_sweep() {
        let net = build_dsp_network(&fixtures::k4_pendant());
        let cuts =
            simple_parametric(&net, &[ratio(1, 2), ratio(6, 5), ratio(8, 5)]).unwrap();
        let sizes: Vec<usize> = cuts.iter().map(|c| c.source_set.len()).collect();
        assert_eq!(sizes, vec![5, 4, 0]);
        assert_eq!(cuts[1].source_set.to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_lambda_matches_cold() {
        let net = build_dsp_network(&fixtures::k4_pendant());
        let warm = simple_parametric(&net, &[ratio(6, 5)]).unwrap();
        let inst = net.instantiate(ratio(6, 5)).unwrap();
        let (cold, _) = crate::solver::solve_mincut(&inst).unwrap();
        assert_eq!(warm[0], cold);
    }

    #[test]
    fn lambda_zero_keeps_every_node_with_edges() {
        let g = InputGraph::from_edges(4, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let cuts = simple_parametric(&build_dsp_network(&g), &[int(0)]).unwrap();
        assert!([0, 1, 2].iter().all(|&v| cuts[0].source_set.contains(v)));
    }

    #[test]
    fn non_ascending_is_rejected() {
        let net = build_dsp_network(&fixtures::k3());
        assert!(matches!(
            simple_parametric(&net, &[int(1), int(1)]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn k4_pendant_envelope() {
        let net = build_dsp_network(&fixtures::k4_pendant());
        let env = fully_parametric(&net, int(0), int(3)).unwrap();
        let lambdas: Vec<Rational> = env.breakpoints.iter().map(|b| b.lambda).collect();
        assert_eq!(lambdas, vec![int(1), ratio(3, 2)]);
        assert_eq!(env.points(), vec![(5, 7), (4, 6), (0, 0)]);
        let best = leftmost_breakpoint(&env).unwrap();
        assert_eq!(best.lambda, ratio(3, 2));
        assert_eq!(best.source_set.to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn k3_envelope() {
        let net = build_dsp_network(&fixtures::k3());
        let env = fully_parametric(&net, int(0), int(2)).unwrap();
        assert_eq!(env.len(), 1);
        assert_eq!(env.breakpoints[0].lambda, int(1));
        assert_eq!(leftmost_breakpoint(&env).unwrap().set_size, 3);
    }

    #[test]
    fn star_conductance_envelope() {
        let (g, seed) = fixtures::star_with_seed();
        let net = build_conductance_network(&g, &seed).unwrap();
        let env = fully_parametric(&net, int(0), int(1)).unwrap();
        let best = leftmost_breakpoint(&env).unwrap();
        assert_eq!(best.lambda, ratio(1, 5));
        assert_eq!(best.set_size, 3);
        assert!(env.tail.source_set.is_empty());
    }

    #[test]
    fn envelope_csv() {
        let net = build_dsp_network(&fixtures::k4_pendant());
        let env = fully_parametric(&net, int(0), int(3)).unwrap();
        let mut buf = Vec::new();
        env.write_csv(&mut buf, 4).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "lambda,budget,benefit,set_size,lambda_exact\n1.0000,5,7,5,1\n1.5000,4,6,4,3/2\n,0,0,0,\n"
        );
    }

    #[test]
    fn empty_envelope_error() {
        let net = build_dsp_network(&fixtures::k3());
        let env = fully_parametric(&net, int(2), int(3)).unwrap();
        assert!(env.is_empty());
        assert_eq!(leftmost_breakpoint(&env), Err(Error::EmptyEnvelope));
        assert!(fully_parametric(&net, int(3), int(2)).is_err());
    }

    #[test]
    fn point_interval() {
        let net = build_dsp_network(&fixtures::k3());
        let env = fully_parametric(&net, int(1), int(1)).unwrap();
        assert_eq!(env.len(), 1);
        assert_eq!(env.breakpoints[0].set_size, 3);
        assert_eq!(env.tail.set_size, 0);
    }
}
