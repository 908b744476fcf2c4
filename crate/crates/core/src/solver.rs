//! Minimum s,t-cuts by highest-label push-relabel, with warm restarts.
//!
//! Only the first phase of push-relabel runs: once no active node can reach
//! the sink the preflow already determines every minimum cut, and the flow
//! value into the sink is the max-flow value. A [`SolverState`] keeps the
//! preflow and labels so the next cut in a monotone sweep starts from them.
//!
//! The solver always works in an orientation where source capacities only
//! grow and sink capacities only shrink between solves. Sweeps in the other
//! direction run on the reversed network, where the two terminals swap roles
//! and every internal arc is flipped.

use crate::error::{Error, Result};
use crate::network::{InstantiatedNetwork, CAPACITY_BUDGET};
use crate::rational::Rational;
use crate::subset::NodeSubset;

const NONE: usize = usize::MAX;

/// Which of the (possibly many) minimum cuts to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Extremal {
    /// The inclusion-wise largest source set.
    #[default]
    Maximal,
    /// The inclusion-wise smallest source set.
    Minimal,
}

impl Extremal {
    fn flipped(self) -> Self {
        match self {
            Extremal::Maximal => Extremal::Minimal,
            Extremal::Minimal => Extremal::Maximal,
        }
    }
}

/// Direction in which source capacities move over the sweep a state serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sweep {
    /// Source capacities grow and sink capacities shrink.
    #[default]
    SourceIncreasing,
    /// Source capacities shrink and sink capacities grow.
    SourceDecreasing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSolution {
    /// Non-terminal nodes on the source side.
    pub source_set: NodeSubset,
    /// Cut capacity at the network's scale.
    pub cut_value: i128,
    pub scale: i128,
    pub lambda: Rational,
    pub extremal: Extremal,
}

/// Operation counters accumulated over the life of a state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub solves: u64,
    pub pushes: u64,
    pub relabels: u64,
    pub global_relabels: u64,
    pub gaps: u64,
}

/// Preflow, labels and residual network retained between solves.
#[derive(Debug, Clone)]
pub struct SolverState {
    n: usize,
    reversed: bool,
    extremal: Extremal,
    scale: i128,
    lambda: Rational,
    total_capacity: i128,

    // Internal residual arcs in working orientation, grouped by tail.
    first: Vec<usize>,
    head: Vec<usize>,
    res: Vec<i128>,
    rev: Vec<usize>,
    // Capacity of each input arc at the current scale.
    arc_cap: Vec<i128>,

    src: Vec<i128>,
    snk: Vec<i128>,
    sink_flow: Vec<i128>,
    excess: Vec<i128>,
    flow_value: i128,

    label: Vec<usize>,
    current: Vec<usize>,
    active_head: Vec<usize>,
    active_next: Vec<usize>,
    bucket_head: Vec<usize>,
    bucket_next: Vec<usize>,
    bucket_prev: Vec<usize>,
    max_active: usize,
    max_label: usize,
    relabel_work: usize,
    queue: Vec<usize>,

    stats: SolveStats,
}

/// Solves for the maximal-source-set minimum cut in the default orientation.
pub fn solve_mincut(net: &InstantiatedNetwork) -> Result<(CutSolution, SolverState)> {
    solve_mincut_with(net, Extremal::Maximal, Sweep::SourceIncreasing)
}

/// Solves from scratch, preparing the state for later `continue_solve`
/// calls that move capacities in the `sweep` direction.
pub fn solve_mincut_with(
    net: &InstantiatedNetwork,
    extremal: Extremal,
    sweep: Sweep,
) -> Result<(CutSolution, SolverState)> {
    let mut state = SolverState::new(net, extremal, sweep)?;
    state.run();
    let cut = state.cut(extremal);
    Ok((cut, state))
}

impl SolverState {
    fn new(net: &InstantiatedNetwork, extremal: Extremal, sweep: Sweep) -> Result<Self> {
        let n = net.n();
        let reversed = sweep == Sweep::SourceDecreasing;
        let arcs = net.arcs();

        let mut degree = vec![0usize; n + 1];
        for &(u, v, _) in arcs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut first = vec![0usize; n + 1];
        for i in 0..n {
            first[i + 1] = first[i] + degree[i];
        }
        let mut fill = first.clone();
        let slots = first[n];
        let mut head = vec![0usize; slots];
        let mut res = vec![0i128; slots];
        let mut rev = vec![0usize; slots];
        let mut arc_cap = Vec::with_capacity(arcs.len());
        for &(u, v, cap) in arcs {
            let (a, b) = if reversed { (v, u) } else { (u, v) };
            let fa = fill[a];
            let fb = fill[b];
            fill[a] += 1;
            fill[b] += 1;
            head[fa] = b;
            res[fa] = cap;
            rev[fa] = fb;
            head[fb] = a;
            res[fb] = 0;
            rev[fb] = fa;
            arc_cap.push(cap);
        }

        let (src, snk) = if reversed {
            (net.sink_caps().to_vec(), net.source_caps().to_vec())
        } else {
            (net.source_caps().to_vec(), net.sink_caps().to_vec())
        };
        let total_capacity = arc_cap
            .iter()
            .chain(src.iter())
            .chain(snk.iter())
            .try_fold(0i128, |acc, &c| acc.checked_add(c).filter(|&t| t <= CAPACITY_BUDGET))
            .ok_or(Error::Overflow("summing capacities"))?;

        let excess = src.clone();
        let inf = n + 1;
        Ok(SolverState {
            n,
            reversed,
            extremal,
            scale: net.scale(),
            lambda: net.lambda(),
            total_capacity,
            first,
            head,
            res,
            rev,
            arc_cap,
            src,
            snk,
            sink_flow: vec![0; n],
            excess,
            flow_value: 0,
            label: vec![0; n],
            current: vec![0; n],
            active_head: vec![NONE; inf + 1],
            active_next: vec![NONE; n],
            bucket_head: vec![NONE; inf + 1],
            bucket_next: vec![NONE; n],
            bucket_prev: vec![NONE; n],
            max_active: 0,
            max_label: 0,
            relabel_work: 0,
            queue: Vec::with_capacity(n),
            stats: SolveStats::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> i128 {
        self.scale
    }

    pub fn lambda(&self) -> Rational {
        self.lambda
    }

    pub fn sweep(&self) -> Sweep {
        if self.reversed {
            Sweep::SourceDecreasing
        } else {
            Sweep::SourceIncreasing
        }
    }

    pub fn extremal(&self) -> Extremal {
        self.extremal
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    /// Value of the current maximum preflow, which equals the minimum cut.
    pub fn maxflow_value(&self) -> i128 {
        self.flow_value
    }

    /// Distance labels in the working orientation; `n + 1` marks nodes cut
    /// off from the working sink.
    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    /// Re-solves after the terminal capacities changed to those of `net`.
    ///
    /// `net` must share this state's internal arcs, at this scale or at a
    /// multiple of it, and its terminal capacities must have moved in the
    /// sweep direction fixed when the state was created.
    pub fn continue_solve(&mut self, net: &InstantiatedNetwork) -> Result<CutSolution> {
        let extremal = self.extremal;
        self.continue_solve_with(net, extremal)
    }

    pub fn continue_solve_with(
        &mut self,
        net: &InstantiatedNetwork,
        extremal: Extremal,
    ) -> Result<CutSolution> {
        if net.n() != self.n || net.arcs().len() != self.arc_cap.len() {
            return Err(Error::Contract("network shape differs from the solved one".into()));
        }
        if net.scale() % self.scale != 0 {
            return Err(Error::Contract(format!(
                "scale {} is not a multiple of the retained scale {}",
                net.scale(),
                self.scale
            )));
        }
        let factor = net.scale() / self.scale;
        let (new_src, new_snk) = if self.reversed {
            (net.sink_caps(), net.source_caps())
        } else {
            (net.source_caps(), net.sink_caps())
        };
        for (k, &(_, _, cap)) in net.arcs().iter().enumerate() {
            if Some(cap) != self.arc_cap[k].checked_mul(factor) {
                return Err(Error::Contract(format!("internal arc {k} changed capacity")));
            }
        }
        for i in 0..self.n {
            let s = self.src[i].checked_mul(factor);
            let t = self.snk[i].checked_mul(factor);
            if s.is_none_or(|s| new_src[i] < s) || t.is_none_or(|t| new_snk[i] > t) {
                return Err(Error::Contract(format!(
                    "terminal capacities of node {i} moved against the sweep direction"
                )));
            }
        }
        self.rescale(factor)?;
        let total = self.arc_cap.iter().chain(new_src).chain(new_snk).sum::<i128>();
        if total > CAPACITY_BUDGET {
            return Err(Error::Overflow("summing capacities"));
        }
        self.total_capacity = total;

        for i in 0..self.n {
            self.excess[i] += new_src[i] - self.src[i];
            self.src[i] = new_src[i];
            self.snk[i] = new_snk[i];
            if self.sink_flow[i] > self.snk[i] {
                let back = self.sink_flow[i] - self.snk[i];
                self.sink_flow[i] = self.snk[i];
                self.excess[i] += back;
                self.flow_value -= back;
            }
        }
        self.lambda = net.lambda();
        self.run();
        Ok(self.cut(extremal))
    }

    /// Multiplies every capacity, flow and excess by `factor`.
    pub fn rescale(&mut self, factor: i128) -> Result<()> {
        if factor < 1 {
            return Err(Error::Contract(format!("rescale factor {factor} is not positive")));
        }
        if factor == 1 {
            return Ok(());
        }
        self.total_capacity
            .checked_mul(factor)
            .filter(|&t| t <= CAPACITY_BUDGET)
            .ok_or(Error::Overflow("rescaling the retained flow"))?;
        let all = self
            .res
            .iter_mut()
            .chain(self.arc_cap.iter_mut())
            .chain(self.src.iter_mut())
            .chain(self.snk.iter_mut())
            .chain(self.sink_flow.iter_mut())
            .chain(self.excess.iter_mut());
        for v in all {
            *v *= factor;
        }
        self.flow_value *= factor;
        self.total_capacity *= factor;
        self.scale *= factor;
        Ok(())
    }

    /// The minimum cut determined by the current preflow.
    pub fn cut(&self, extremal: Extremal) -> CutSolution {
        let working = if self.reversed {
            extremal.flipped()
        } else {
            extremal
        };
        let ws = match working {
            Extremal::Maximal => self.cannot_reach_sink(),
            Extremal::Minimal => self.excess_closure(),
        };
        let source_set = if self.reversed { ws.complement() } else { ws };
        CutSolution {
            source_set,
            cut_value: self.flow_value,
            scale: self.scale,
            lambda: self.lambda,
            extremal,
        }
    }

    /// Labels are exact after `run`, so unreachable nodes carry `n + 1`.
    fn cannot_reach_sink(&self) -> NodeSubset {
        let inf = self.n + 1;
        NodeSubset::from_members(self.n, (0..self.n).filter(|&i| self.label[i] >= inf))
    }

    /// Nodes reachable in the residual network from a node with excess.
    fn excess_closure(&self) -> NodeSubset {
        let mut seen = NodeSubset::empty(self.n);
        let mut stack: Vec<usize> = (0..self.n).filter(|&i| self.excess[i] > 0).collect();
        for &i in &stack {
            seen.insert(i);
        }
        while let Some(u) = stack.pop() {
            for a in self.first[u]..self.first[u + 1] {
                let w = self.head[a];
                if self.res[a] > 0 && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn run(&mut self) {
        self.stats.solves += 1;
        self.global_relabel();
        while self.max_active > 0 {
            let k = self.max_active;
            let u = self.active_head[k];
            if u == NONE {
                self.max_active -= 1;
                continue;
            }
            self.active_head[k] = self.active_next[u];
            self.discharge(u);
            if self.relabel_work > 6 * self.n + self.head.len() {
                self.global_relabel();
            }
        }
        self.global_relabel();
    }

    fn discharge(&mut self, u: usize) {
        let inf = self.n + 1;
        while self.excess[u] > 0 {
            let lu = self.label[u];
            if lu == 1 && self.sink_flow[u] < self.snk[u] {
                let delta = self.excess[u].min(self.snk[u] - self.sink_flow[u]);
                self.sink_flow[u] += delta;
                self.flow_value += delta;
                self.excess[u] -= delta;
                self.stats.pushes += 1;
                continue;
            }
            let end = self.first[u + 1];
            let mut a = self.current[u];
            while a < end && self.excess[u] > 0 {
                let w = self.head[a];
                if self.res[a] > 0 && self.label[w] + 1 == lu {
                    let delta = self.excess[u].min(self.res[a]);
                    self.res[a] -= delta;
                    self.res[self.rev[a]] += delta;
                    self.excess[u] -= delta;
                    if self.excess[w] == 0 {
                        self.push_active(w);
                    }
                    self.excess[w] += delta;
                    self.stats.pushes += 1;
                    if self.excess[u] == 0 {
                        break;
                    }
                }
                a += 1;
            }
            self.current[u] = a;
            if self.excess[u] > 0 {
                self.relabel(u);
                if self.label[u] >= inf {
                    return;
                }
            }
        }
    }

    fn relabel(&mut self, u: usize) {
        let inf = self.n + 1;
        self.stats.relabels += 1;
        let old = self.label[u];
        let mut best = inf;
        if self.sink_flow[u] < self.snk[u] {
            best = 1;
        }
        for a in self.first[u]..self.first[u + 1] {
            if self.res[a] > 0 {
                best = best.min(self.label[self.head[a]] + 1);
            }
        }
        self.relabel_work += 12 + self.first[u + 1] - self.first[u];
        self.bucket_remove(u);
        if self.bucket_head[old] == NONE {
            self.stats.gaps += 1;
            self.label[u] = inf;
            for k in old + 1..=self.max_label {
                let mut v = self.bucket_head[k];
                while v != NONE {
                    self.label[v] = inf;
                    v = self.bucket_next[v];
                }
                self.bucket_head[k] = NONE;
                self.active_head[k] = NONE;
            }
            self.max_label = old - 1;
            self.max_active = self.max_active.min(self.max_label);
            return;
        }
        self.label[u] = best.min(inf);
        self.current[u] = self.first[u];
        if best < inf {
            self.bucket_insert(u);
            self.max_label = self.max_label.max(best);
        }
    }

    /// Exact distances to the sink by backward breadth-first search. Labels
    /// only ever grow here because the old ones were valid lower bounds.
    fn global_relabel(&mut self) {
        let inf = self.n + 1;
        self.stats.global_relabels += 1;
        self.relabel_work = 0;
        for k in 0..=inf {
            self.bucket_head[k] = NONE;
            self.active_head[k] = NONE;
        }
        let old = std::mem::replace(&mut self.label, vec![inf; self.n]);
        self.queue.clear();
        for i in 0..self.n {
            if self.sink_flow[i] < self.snk[i] && old[i] < inf {
                self.label[i] = 1;
                self.queue.push(i);
            }
        }
        let mut qi = 0;
        while qi < self.queue.len() {
            let w = self.queue[qi];
            qi += 1;
            let d = self.label[w] + 1;
            for a in self.first[w]..self.first[w + 1] {
                let u = self.head[a];
                if self.label[u] == inf && old[u] < inf && self.res[self.rev[a]] > 0 {
                    self.label[u] = d;
                    self.queue.push(u);
                }
            }
        }
        self.max_active = 0;
        self.max_label = 0;
        for idx in 0..self.queue.len() {
            let u = self.queue[idx];
            debug_assert!(self.label[u] >= old[u]);
            self.current[u] = self.first[u];
            self.bucket_insert(u);
            self.max_label = self.max_label.max(self.label[u]);
            if self.excess[u] > 0 {
                self.push_active(u);
            }
        }
    }

    fn push_active(&mut self, u: usize) {
        let l = self.label[u];
        if l > self.n {
            return;
        }
        self.active_next[u] = self.active_head[l];
        self.active_head[l] = u;
        self.max_active = self.max_active.max(l);
    }

    fn bucket_insert(&mut self, u: usize) {
        let l = self.label[u];
        let h = self.bucket_head[l];
        self.bucket_next[u] = h;
        self.bucket_prev[u] = NONE;
        if h != NONE {
            self.bucket_prev[h] = u;
        }
        self.bucket_head[l] = u;
    }

    fn bucket_remove(&mut self, u: usize) {
        let (p, nx) = (self.bucket_prev[u], self.bucket_next[u]);
        if p == NONE {
            self.bucket_head[self.label[u]] = nx;
        } else {
            self.bucket_next[p] = nx;
        }
        if nx != NONE {
            self.bucket_prev[nx] = p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::InputGraph;
    use crate::network::build_dsp_network;
    use crate::rational::{int, ratio};

    fn chain() -> InstantiatedNetwork {
        // s→a 2, a→b 1, b→t 3
        InstantiatedNetwork::from_parts(2, vec![(0, 1, 1)], vec![2, 0], vec![0, 3]).unwrap()
    }

    #[test]
    fn two_node_chain() {
        let net = chain();
        let (cut, state) = solve_mincut(&net).unwrap();
        assert_eq!(cut.cut_value, 1);
        assert_eq!(cut.source_set.to_vec(), vec![0]);
        assert_eq!(state.maxflow_value(), 1);
        assert_eq!(net.cut_capacity(&cut.source_set), 1);
    }

    #[test]
    fn no_source_capacity() {
        // Nodes 0 and 1 have no path to t; node 2 does.
        let net =
            InstantiatedNetwork::from_parts(3, vec![(0, 1, 4), (2, 1, 1)], vec![0; 3], vec![0, 0, 2])
                .unwrap();
        let (max, state) = solve_mincut(&net).unwrap();
        assert_eq!(max.cut_value, 0);
        assert_eq!(max.source_set.to_vec(), vec![0, 1]);
        assert!(state.cut(Extremal::Minimal).source_set.is_empty());
        assert_eq!(state.maxflow_value(), 0);
    }

    #[test]
    fn zero_network() {
        let net = InstantiatedNetwork::from_parts(0, vec![], vec![], vec![]).unwrap();
        let (cut, state) = solve_mincut(&net).unwrap();
        assert_eq!((cut.cut_value, state.maxflow_value()), (0, 0));
    }

    fn k3() -> InputGraph {
        InputGraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn k3_at_one_has_tied_extremes() {
        let net = build_dsp_network(&k3()).instantiate(int(1)).unwrap();
        let (max, state) = solve_mincut(&net).unwrap();
        assert_eq!(max.source_set.len(), 3);
        assert!(state.cut(Extremal::Minimal).source_set.is_empty());
        assert_eq!(net.cut_capacity(&NodeSubset::empty(3)), max.cut_value);
    }

    fn k4_pendant() -> InputGraph {
        InputGraph::from_edges(
            5,
            [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1), (3, 4, 1)],
        )
        .unwrap()
    }

    #[test]
    fn k4_pendant_warm_sweep() {
        let pnet = build_dsp_network(&k4_pendant());
        let lambdas = [ratio(1, 2), ratio(6, 5), ratio(8, 5)];
        let expected = [vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3], vec![]];
        let first = pnet.instantiate(lambdas[0]).unwrap();
        let (cut, mut state) =
            solve_mincut_with(&first, Extremal::Maximal, Sweep::SourceDecreasing).unwrap();
        assert_eq!(cut.source_set.to_vec(), expected[0]);
        let mut scale = first.scale();
        for (lambda, want) in lambdas.iter().zip(&expected).skip(1) {
            scale = crate::rational::checked_lcm(scale, *lambda.denom()).unwrap();
            let net = pnet.instantiate_scaled(*lambda, scale).unwrap();
            let warm = state.continue_solve(&net).unwrap();
            let (cold, _) =
                solve_mincut_with(&net, Extremal::Maximal, Sweep::SourceDecreasing).unwrap();
            assert_eq!(&warm.source_set.to_vec(), want);
            assert_eq!(warm, cold);
        }
    }

    #[test]
    fn identical_update_is_idempotent() {
        let net = build_dsp_network(&k4_pendant()).instantiate(ratio(6, 5)).unwrap();
        let (cut, mut state) = solve_mincut(&net).unwrap();
        assert_eq!(state.continue_solve(&net).unwrap(), cut);
    }

    #[test]
    fn wrong_direction_is_a_contract_error() {
        let pnet = build_dsp_network(&k4_pendant());
        let (_, mut state) = solve_mincut(&pnet.instantiate(int(1)).unwrap()).unwrap();
        let later = pnet.instantiate(int(2)).unwrap();
        assert!(matches!(state.continue_solve(&later), Err(Error::Contract(_))));
    }

    #[test]
    fn rescaling_preserves_the_cut() {
        let net = chain();
        let (_, mut state) = solve_mincut(&net).unwrap();
        state.rescale(7).unwrap();
        assert_eq!(state.maxflow_value(), 7);
        assert_eq!(state.cut(Extremal::Maximal).source_set.to_vec(), vec![0]);
    }
}
